#pragma once
/**
 * @file metric.hpp
 * @brief Scalar products, adjoints, orthogonal complements and the
 * Levi-Civita product of a metric Lie algebra.
 */
#include "fflat/algebra.hpp"
#include "fflat/linalg.hpp"
#include "fflat/residual.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace fflat {

/// Raised for symmetric-but-degenerate or non-symmetric Gram matrices.
class MetricError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ScalarProduct {
public:
    ScalarProduct() = default;
    explicit ScalarProduct(RatMatrix gram) : gram_(std::move(gram)) {
        if (!gram_.square()) throw MetricError("malformed scalar product: Gram matrix is not square");
        if (!gram_.is_symmetric()) throw MetricError("malformed scalar product: matrix is not symmetric");
        auto inv = inverse(gram_);
        if (!inv) throw MetricError("degenerate scalar product: Gram matrix is singular");
        inv_ = std::move(*inv);
        sig_ = congruent_signature(gram_);
    }

    static ScalarProduct euclidean(std::size_t n) { return ScalarProduct(RatMatrix::identity(n)); }

    [[nodiscard]] std::size_t dim() const { return gram_.rows(); }
    [[nodiscard]] const RatMatrix& gram() const { return gram_; }
    [[nodiscard]] const RatMatrix& gram_inverse() const { return inv_; }
    [[nodiscard]] Signature signature() const { return sig_; }

    /// Number of directions of the minority sign.
    [[nodiscard]] std::size_t index() const { return std::min(sig_.n_plus, sig_.n_minus); }
    [[nodiscard]] bool lorentzian() const { return index() == 1; }
    [[nodiscard]] bool index2() const { return index() == 2; }
    [[nodiscard]] bool positive_definite() const { return sig_.n_minus == 0; }

    [[nodiscard]] Rat operator()(const RatVector& x, const RatVector& y) const {
        require_same(x.size(), dim(), "scalar product lhs");
        require_same(y.size(), dim(), "scalar product rhs");
        return dot(x, gram_ * y);
    }

    /// The vector s with <s, y> = phi(y), given phi as its row of values on the basis.
    [[nodiscard]] RatVector raise(const RatVector& covector) const { return inv_ * covector; }
    /// Row of values y -> <x, y> on the basis.
    [[nodiscard]] RatVector lower(const RatVector& x) const { return gram_ * x; }

    friend bool operator==(const ScalarProduct& a, const ScalarProduct& b) { return a.gram_ == b.gram_; }

private:
    RatMatrix gram_;
    RatMatrix inv_;
    Signature sig_;
};

/// M* with <M x, y> = <x, M* y>, i.e. G^{-1} M^T G.
inline RatMatrix adjoint(const RatMatrix& m, const ScalarProduct& metric) {
    if (m.rows() != metric.dim() || m.cols() != metric.dim())
        throw DimensionError("adjoint: operator size does not match the metric");
    return metric.gram_inverse() * (m.transpose() * metric.gram());
}

/**
 * Levi-Civita product from the Koszul formula
 *   2<x*y, z> = <[x,y],z> - <[y,z],x> + <[z,x],y>,
 * one linear solve against the Gram matrix per basis pair.
 */
inline AlgebraTable levi_civita(const AlgebraTable& bracket, const ScalarProduct& metric) {
    require_same(bracket.dim(), metric.dim(), "levi_civita");
    if (bracket.kind() != ProductKind::lie_bracket)
        throw std::invalid_argument("levi_civita expects a lie-bracket table");
    const std::size_t n = bracket.dim();
    const RatMatrix& g = metric.gram();
    // pairing[i][j][k] = <[e_i,e_j], e_k>
    std::vector<Rat> pairing(n * n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            auto low = g * bracket.product(i, j);
            for (std::size_t k = 0; k < n; ++k) pairing[(i * n + j) * n + k] = low[k];
        }
    auto p = [&](std::size_t i, std::size_t j, std::size_t k) -> const Rat& { return pairing[(i * n + j) * n + k]; };
    const Rat half(1, 2);
    return table_from(
        n, ProductKind::generic,
        [&](std::size_t i, std::size_t j) {
            RatVector rhs(n);
            for (std::size_t k = 0; k < n; ++k) rhs[k] = half * (p(i, j, k) - p(j, k, i) + p(k, i, j));
            auto sol = solve_linear(g, rhs);
            if (!sol) throw MetricError("levi_civita: degenerate scalar product");
            return *sol;
        },
        bracket.names());
}

/// Torsion x*y - y*x - [x,y] and compatibility <x*y,z> + <y,x*z>.
inline ResidualReport check_metric_axioms(const AlgebraTable& levi, const AlgebraTable& bracket,
                                          const ScalarProduct& metric) {
    require_same(levi.dim(), bracket.dim(), "check_metric_axioms");
    require_same(levi.dim(), metric.dim(), "check_metric_axioms");
    const std::size_t n = levi.dim();
    Residual torsion("torsion", {n, n}, n);
    torsion.fill([&](auto idx) {
        return levi.product(idx[0], idx[1]) - levi.product(idx[1], idx[0]) - bracket.product(idx[0], idx[1]);
    });
    Residual compat("metric-compatibility", {n, n, n}, 1);
    compat.fill([&](auto idx) {
        auto ey = unit_vector(n, idx[1]), ez = unit_vector(n, idx[2]);
        return RatVector{metric(levi.product(idx[0], idx[1]), ez) + metric(ey, levi.product(idx[0], idx[2]))};
    });
    ResidualReport rep;
    rep.add(std::move(torsion));
    rep.add(std::move(compat));
    return rep;
}

inline bool is_flat(const AlgebraTable& bracket, const ScalarProduct& metric) {
    return check_identity(levi_civita(bracket, metric), Identity::left_symmetry).all_zero();
}

/// A Lie algebra with a scalar product and its derived Levi-Civita table.
struct MetricLieAlgebra {
    AlgebraTable bracket;
    ScalarProduct metric;
    AlgebraTable levi;

    MetricLieAlgebra(AlgebraTable bracket_, ScalarProduct metric_)
        : bracket(std::move(bracket_)), metric(std::move(metric_)), levi(levi_civita(bracket, metric)) {}

    [[nodiscard]] bool flat() const { return check_identity(levi, Identity::left_symmetry).all_zero(); }
};

struct OrthComplement {
    std::vector<RatVector> basis;
    bool totally_isotropic = false;  ///< S is contained in its own complement
};

inline OrthComplement orth_complement(const std::vector<RatVector>& s, const ScalarProduct& metric) {
    const std::size_t n = metric.dim();
    std::vector<RatVector> rows;
    for (const auto& v : s) {
        require_same(v.size(), n, "orth_complement");
        rows.push_back(metric.lower(v));
    }
    OrthComplement out;
    out.basis = rows.empty() ? standard_basis(n) : null_space(RatMatrix::from_rows(rows, n));
    out.totally_isotropic = std::all_of(s.begin(), s.end(), [&](const RatVector& x) {
        return std::all_of(s.begin(), s.end(), [&](const RatVector& y) { return metric(x, y).is_zero(); });
    });
    return out;
}

} // namespace fflat
