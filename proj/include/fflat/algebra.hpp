#pragma once
/**
 * @file algebra.hpp
 * @brief Multiplication tables, axiom residuals, operator matrices and
 *        nilpotency tests.
 */
#include "fflat/linalg.hpp"
#include "fflat/residual.hpp"

#include <string>
#include <vector>

namespace fflat {

enum class ProductKind { lie_bracket, associative, left_symmetric, generic };

inline const char* to_string(ProductKind k) {
    switch (k) {
    case ProductKind::lie_bracket: return "lie-bracket";
    case ProductKind::associative: return "associative";
    case ProductKind::left_symmetric: return "left-symmetric";
    case ProductKind::generic: return "generic";
    }
    return "generic";
}

enum class Identity { antisymmetry, jacobi, commutativity, associativity, left_symmetry };

inline const char* to_string(Identity w) {
    switch (w) {
    case Identity::antisymmetry: return "antisymmetry";
    case Identity::jacobi: return "jacobi";
    case Identity::commutativity: return "commutativity";
    case Identity::associativity: return "associativity";
    case Identity::left_symmetry: return "left-symmetry";
    }
    return "?";
}

/// Skips the axiom check of the validating constructor (for broken fixtures).
enum class Validation { checked, unchecked };

/// Thrown when a table violates the axioms of its declared kind.
class AxiomError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline std::vector<std::string> default_basis_names(std::size_t n) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("e" + std::to_string(i + 1));
    return names;
}

class AlgebraTable;
ResidualReport check_identity(const AlgebraTable& alg, Identity which);

/// A bilinear product on Q^n given by its structure constants.
class AlgebraTable {
public:
    AlgebraTable() = default;
    AlgebraTable(ProductKind kind, RatTensor3 tensor, std::vector<std::string> names = {},
                 Validation validation = Validation::checked)
        : kind_(kind), tensor_(std::move(tensor)), names_(std::move(names)) {
        if (names_.empty()) names_ = default_basis_names(tensor_.dim());
        require_same(names_.size(), tensor_.dim(), "basis names");
        if (validation == Validation::checked) validate();
    }

    static AlgebraTable zero(std::size_t n, ProductKind kind, std::vector<std::string> names = {}) {
        return AlgebraTable(kind, RatTensor3(n), std::move(names));
    }

    [[nodiscard]] std::size_t dim() const { return tensor_.dim(); }
    [[nodiscard]] ProductKind kind() const { return kind_; }
    [[nodiscard]] const RatTensor3& tensor() const { return tensor_; }
    [[nodiscard]] const std::vector<std::string>& names() const { return names_; }

    /// e_i . e_j
    [[nodiscard]] RatVector product(std::size_t i, std::size_t j) const { return tensor_.product(i, j); }

    [[nodiscard]] RatVector multiply(const RatVector& x, const RatVector& y) const {
        const std::size_t n = dim();
        require_same(x.size(), n, "multiply lhs");
        require_same(y.size(), n, "multiply rhs");
        RatVector out(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (x[i].is_zero()) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (y[j].is_zero()) continue;
                const Rat c = x[i] * y[j];
                for (std::size_t k = 0; k < n; ++k)
                    if (!tensor_.at(i, j, k).is_zero()) out[k] += c * tensor_.at(i, j, k);
            }
        }
        return out;
    }
    [[nodiscard]] RatVector operator()(const RatVector& x, const RatVector& y) const { return multiply(x, y); }

    [[nodiscard]] bool is_zero() const { return tensor_.is_zero(); }

    /// Same structure constants with a different kind tag (re-validated).
    [[nodiscard]] AlgebraTable as(ProductKind kind, Validation v = Validation::checked) const {
        return AlgebraTable(kind, tensor_, names_, v);
    }

    friend bool operator==(const AlgebraTable& a, const AlgebraTable& b) {
        return a.tensor_ == b.tensor_;
    }

private:
    void validate() const {
        auto fail = [&](Identity w) {
            auto rep = check_identity(*this, w);
            if (!rep.all_zero())
                throw AxiomError(std::string("table declared ") + to_string(kind_) + " fails " + to_string(w));
        };
        switch (kind_) {
        case ProductKind::lie_bracket:
            fail(Identity::antisymmetry);
            fail(Identity::jacobi);
            break;
        case ProductKind::associative: fail(Identity::associativity); break;
        case ProductKind::left_symmetric: fail(Identity::left_symmetry); break;
        case ProductKind::generic: break;
        }
    }

    ProductKind kind_ = ProductKind::generic;
    RatTensor3 tensor_;
    std::vector<std::string> names_;
};

inline RatVector multiply(const AlgebraTable& alg, const RatVector& x, const RatVector& y) {
    return alg.multiply(x, y);
}

/// Builds a table from a function giving e_i . e_j.
template <class Fn>
AlgebraTable table_from(std::size_t n, ProductKind kind, Fn&& fn, std::vector<std::string> names = {},
                        Validation v = Validation::checked) {
    RatTensor3 t(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) t.set_product(i, j, fn(i, j));
    return AlgebraTable(kind, std::move(t), std::move(names), v);
}

inline ResidualReport check_identity(const AlgebraTable& alg, Identity which) {
    const std::size_t n = alg.dim();
    auto e = [n](std::size_t i) { return unit_vector(n, i); };
    auto mul = [&](const RatVector& x, const RatVector& y) { return alg.multiply(x, y); };
    switch (which) {
    case Identity::antisymmetry: {
        Residual r("antisymmetry", {n, n}, n);
        r.fill([&](auto idx) { return alg.product(idx[0], idx[1]) + alg.product(idx[1], idx[0]); });
        return ResidualReport({r});
    }
    case Identity::commutativity: {
        Residual r("commutativity", {n, n}, n);
        r.fill([&](auto idx) { return alg.product(idx[0], idx[1]) - alg.product(idx[1], idx[0]); });
        return ResidualReport({r});
    }
    case Identity::jacobi: {
        Residual r("jacobi", {n, n, n}, n);
        r.fill([&](auto idx) {
            auto x = e(idx[0]), y = e(idx[1]), z = e(idx[2]);
            return mul(x, mul(y, z)) + mul(y, mul(z, x)) + mul(z, mul(x, y));
        });
        return ResidualReport({r});
    }
    case Identity::associativity: {
        Residual r("associativity", {n, n, n}, n);
        r.fill([&](auto idx) {
            auto x = e(idx[0]), y = e(idx[1]), z = e(idx[2]);
            return mul(mul(x, y), z) - mul(x, mul(y, z));
        });
        return ResidualReport({r});
    }
    case Identity::left_symmetry: {
        // (xy)z - x(yz) - (yx)z + y(xz)
        Residual r("left-symmetry", {n, n, n}, n);
        r.fill([&](auto idx) {
            auto x = e(idx[0]), y = e(idx[1]), z = e(idx[2]);
            return mul(mul(x, y), z) - mul(x, mul(y, z)) - mul(mul(y, x), z) + mul(y, mul(x, z));
        });
        return ResidualReport({r});
    }
    }
    return {};
}

/// The commutator bracket [x,y] = xy - yx of any product, as a Lie table.
inline AlgebraTable commutator_of(const AlgebraTable& alg, Validation v = Validation::checked) {
    return table_from(
        alg.dim(), ProductKind::lie_bracket,
        [&](std::size_t i, std::size_t j) { return alg.product(i, j) - alg.product(j, i); }, alg.names(), v);
}

enum class Side { left, right };

/// Left (y -> x.y) or right (y -> y.x) multiplication by a fixed element.
struct OperatorSpec {
    Side side;
    RatVector element;
    const AlgebraTable& source;
};

inline RatMatrix operator_matrix(const OperatorSpec& spec) {
    const std::size_t n = spec.source.dim();
    require_same(spec.element.size(), n, "operator element");
    RatMatrix m(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        auto ej = unit_vector(n, j);
        auto col = spec.side == Side::left ? spec.source.multiply(spec.element, ej)
                                           : spec.source.multiply(ej, spec.element);
        for (std::size_t i = 0; i < n; ++i) m(i, j) = col[i];
    }
    return m;
}

inline RatMatrix left_mult(const AlgebraTable& alg, const RatVector& x) {
    return operator_matrix({Side::left, x, alg});
}
inline RatMatrix right_mult(const AlgebraTable& alg, const RatVector& x) {
    return operator_matrix({Side::right, x, alg});
}

/// Span of all products u.v with u in lhs, v in rhs (as a basis).
inline std::vector<RatVector> product_span(const AlgebraTable& alg, const std::vector<RatVector>& lhs,
                                           const std::vector<RatVector>& rhs) {
    std::vector<RatVector> prods;
    for (const auto& u : lhs)
        for (const auto& v : rhs) {
            auto p = alg.multiply(u, v);
            if (!is_zero(p)) prods.push_back(std::move(p));
        }
    return span_basis(prods, alg.dim());
}

inline std::vector<RatVector> standard_basis(std::size_t n) {
    std::vector<RatVector> b;
    for (std::size_t i = 0; i < n; ++i) b.push_back(unit_vector(n, i));
    return b;
}

inline bool is_nilpotent_lie(const AlgebraTable& bracket) {
    if (bracket.kind() != ProductKind::lie_bracket)
        throw std::invalid_argument("is_nilpotent_lie expects a lie-bracket table");
    const auto g = standard_basis(bracket.dim());
    auto term = g;
    for (std::size_t step = 0; step <= bracket.dim(); ++step) {
        if (term.empty()) return true;
        term = product_span(bracket, g, term);
    }
    return term.empty();
}

/// True iff the product is nilpotent as an algebra: A^k = 0 for some k <= n+1.
inline bool is_nilpotent_algebra(const AlgebraTable& circ) {
    const auto g = standard_basis(circ.dim());
    auto power = g;
    for (std::size_t step = 0; step <= circ.dim(); ++step) {
        if (power.empty()) return true;
        power = product_span(circ, g, power);
    }
    return power.empty();
}

/**
 * Bi-nilpotency of (bracket, circ). The authoritative test is that the
 * commutative associative product is a nilpotent algebra; nilpotency of r_x on
 * the basis and on all pairwise basis sums is checked as well.
 */
inline bool is_bi_nilpotent(const AlgebraTable& bracket, const AlgebraTable& circ) {
    require_same(bracket.dim(), circ.dim(), "is_bi_nilpotent");
    if (bracket.kind() != ProductKind::lie_bracket)
        throw std::invalid_argument("is_bi_nilpotent expects a lie-bracket table");
    if (!is_nilpotent_lie(bracket)) return false;
    if (!is_nilpotent_algebra(circ)) return false;
    const std::size_t n = circ.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            auto x = unit_vector(n, i);
            if (j != i) x[j] = 1;
            if (!is_nilpotent(right_mult(circ, x))) return false;
        }
    return true;
}

struct CenterAndKernel {
    std::vector<RatVector> center;  ///< Z = {x : ad_x = 0}
    std::vector<RatVector> kernel;  ///< N = {x : L_x = 0} for the Levi-Civita product
};

/// Kernel of the stacked matrices [M_1; M_2; ...].
inline std::vector<RatVector> common_kernel(const std::vector<RatMatrix>& ms, std::size_t n) {
    std::size_t rows = 0;
    for (const auto& m : ms) rows += m.rows();
    RatMatrix stacked(rows, n);
    std::size_t r = 0;
    for (const auto& m : ms) {
        require_same(m.cols(), n, "common_kernel");
        for (std::size_t i = 0; i < m.rows(); ++i, ++r)
            for (std::size_t j = 0; j < n; ++j) stacked(r, j) = m(i, j);
    }
    return null_space(stacked);
}

inline CenterAndKernel center_and_kernel(const AlgebraTable& bracket, const AlgebraTable& levi) {
    require_same(bracket.dim(), levi.dim(), "center_and_kernel");
    const std::size_t n = bracket.dim();
    std::vector<RatMatrix> ads, rights;
    for (std::size_t j = 0; j < n; ++j) {
        ads.push_back(left_mult(bracket, unit_vector(n, j)));     // z -> [e_j, z]
        rights.push_back(right_mult(levi, unit_vector(n, j)));    // x -> x * e_j
    }
    return {common_kernel(ads, n), common_kernel(rights, n)};
}

/// Residual of D(xy) - D(x)y - xD(y) over basis pairs.
inline ResidualReport is_derivation(const RatMatrix& d, const AlgebraTable& alg) {
    const std::size_t n = alg.dim();
    if (d.rows() != n || d.cols() != n) throw DimensionError("derivation matrix must be dim x dim");
    Residual r("derivation", {n, n}, n);
    r.fill([&](auto idx) {
        auto x = unit_vector(n, idx[0]), y = unit_vector(n, idx[1]);
        return d * alg.multiply(x, y) - alg.multiply(d * x, y) - alg.multiply(x, d * y);
    });
    return ResidualReport({r});
}

/// Structure constants after the change of basis e'_j = sum_i P(i,j) e_i.
inline AlgebraTable change_basis(const AlgebraTable& alg, const RatMatrix& p, Validation v = Validation::checked) {
    auto pinv = inverse(p);
    if (!pinv) throw std::invalid_argument("change_basis: singular matrix");
    const std::size_t n = alg.dim();
    return table_from(
        n, alg.kind(),
        [&](std::size_t i, std::size_t j) { return *pinv * alg.multiply(p.col(i), p.col(j)); },
        alg.names(), v);
}

} // namespace fflat
