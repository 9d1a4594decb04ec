#pragma once
/**
 * @file fstruct.hpp
 * @brief F-structures on metric Lie algebras: the Frobenius defect, the
 * Hertling-Manin tensor, the Leibnizator, the A-tilde tensor and the
 * classification flags built from them.
 */
#include "fflat/algebra.hpp"
#include "fflat/metric.hpp"
#include "fflat/residual.hpp"

#include <optional>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace fflat {

/// Lie bracket, commutative associative product, scalar product, optional unit.
class FAlgebra {
public:
    FAlgebra() = default;
    FAlgebra(AlgebraTable bracket, AlgebraTable circ, ScalarProduct metric,
             std::optional<RatVector> unit = std::nullopt, Validation validation = Validation::checked)
        : bracket_(std::move(bracket)), circ_(std::move(circ)), metric_(std::move(metric)), unit_(std::move(unit)) {
        require_same(bracket_.dim(), circ_.dim(), "FAlgebra bracket/circ");
        require_same(bracket_.dim(), metric_.dim(), "FAlgebra bracket/metric");
        if (bracket_.kind() != ProductKind::lie_bracket)
            throw std::invalid_argument("FAlgebra bracket must be a lie-bracket table");
        levi_ = levi_civita(bracket_, metric_);
        if (validation == Validation::checked) validate();
    }

    [[nodiscard]] std::size_t dim() const { return bracket_.dim(); }
    [[nodiscard]] const AlgebraTable& bracket() const { return bracket_; }
    [[nodiscard]] const AlgebraTable& circ() const { return circ_; }
    [[nodiscard]] const ScalarProduct& metric() const { return metric_; }
    [[nodiscard]] const AlgebraTable& levi() const { return levi_; }
    [[nodiscard]] const std::optional<RatVector>& unit() const { return unit_; }
    [[nodiscard]] const std::vector<std::string>& names() const { return bracket_.names(); }

private:
    void validate() const {
        if (!check_identity(circ_, Identity::commutativity).all_zero())
            throw AxiomError("FAlgebra product is not commutative");
        if (!check_identity(circ_, Identity::associativity).all_zero())
            throw AxiomError("FAlgebra product is not associative");
        if (unit_) {
            require_same(unit_->size(), dim(), "FAlgebra unit");
            for (std::size_t j = 0; j < dim(); ++j)
                if (circ_.multiply(*unit_, unit_vector(dim(), j)) != unit_vector(dim(), j))
                    throw AxiomError("declared unit does not act as the identity");
        }
    }

    AlgebraTable bracket_;
    AlgebraTable circ_;
    ScalarProduct metric_;
    AlgebraTable levi_;
    std::optional<RatVector> unit_;
};

/// <x o y, z> - <x, y o z> over basis triples.
inline ResidualReport frobenius_defect(const AlgebraTable& circ, const ScalarProduct& metric) {
    require_same(circ.dim(), metric.dim(), "frobenius_defect");
    const std::size_t n = circ.dim();
    Residual r("frobenius", {n, n, n}, 1);
    r.fill([&](auto idx) {
        return RatVector{metric(circ.product(idx[0], idx[1]), unit_vector(n, idx[2])) -
                         metric(unit_vector(n, idx[0]), circ.product(idx[1], idx[2]))};
    });
    return ResidualReport({r});
}

/**
 * HM(x,y,z,w) = [x o y, z o w] - [x o y, z] o w - [x o y, w] o z
 *             - x o [y, z o w] + x o ([y, z] o w) + x o ([y, w] o z)
 *             - y o [x, z o w] + y o ([x, z] o w) + y o ([x, w] o z)
 * The grouping makes HM a combination of Leibnizators for any commutative o.
 */
inline RatVector hertling_manin(const AlgebraTable& bracket, const AlgebraTable& circ, const RatVector& x,
                                const RatVector& y, const RatVector& z, const RatVector& w) {
    auto b = [&](const RatVector& p, const RatVector& q) { return bracket.multiply(p, q); };
    auto c = [&](const RatVector& p, const RatVector& q) { return circ.multiply(p, q); };
    const auto xy = c(x, y), zw = c(z, w);
    RatVector out = b(xy, zw);
    out -= c(b(xy, z), w);
    out -= c(b(xy, w), z);
    out -= c(x, b(y, zw));
    out += c(x, c(b(y, z), w));
    out += c(x, c(b(y, w), z));
    out -= c(y, b(x, zw));
    out += c(y, c(b(x, z), w));
    out += c(y, c(b(x, w), z));
    return out;
}

/// L(x,y,z) = [x, y o z] - [x,y] o z - [x,z] o y
inline RatVector leibnizator(const AlgebraTable& bracket, const AlgebraTable& circ, const RatVector& x,
                             const RatVector& y, const RatVector& z) {
    return bracket.multiply(x, circ.multiply(y, z)) - circ.multiply(bracket.multiply(x, y), z) -
           circ.multiply(bracket.multiply(x, z), y);
}

inline Residual hm_tensor(const AlgebraTable& bracket, const AlgebraTable& circ) {
    require_same(bracket.dim(), circ.dim(), "hm_tensor");
    const std::size_t n = bracket.dim();
    Residual r("hertling-manin", {n, n, n, n}, n);
    r.fill([&](auto idx) {
        return hertling_manin(bracket, circ, unit_vector(n, idx[0]), unit_vector(n, idx[1]), unit_vector(n, idx[2]),
                              unit_vector(n, idx[3]));
    });
    return r;
}

inline Residual leibnizator_tensor(const AlgebraTable& bracket, const AlgebraTable& circ) {
    require_same(bracket.dim(), circ.dim(), "leibnizator");
    const std::size_t n = bracket.dim();
    Residual r("leibnizator", {n, n, n}, n);
    r.fill([&](auto idx) {
        return leibnizator(bracket, circ, unit_vector(n, idx[0]), unit_vector(n, idx[1]), unit_vector(n, idx[2]));
    });
    return r;
}

/**
 * HM(x,y,z,w) - [ L(x o y, z, w) - x o L(y,z,w) - y o L(x,z,w) ].
 * Vanishes for any commutative product and antisymmetric bracket.
 */
inline ResidualReport hm_via_leibnizator_check(const AlgebraTable& bracket, const AlgebraTable& circ) {
    require_same(bracket.dim(), circ.dim(), "hm_via_leibnizator_check");
    const std::size_t n = bracket.dim();
    Residual r("hm-minus-leibnizator", {n, n, n, n}, n);
    r.fill([&](auto idx) {
        auto x = unit_vector(n, idx[0]), y = unit_vector(n, idx[1]), z = unit_vector(n, idx[2]),
             w = unit_vector(n, idx[3]);
        auto combo = leibnizator(bracket, circ, circ.multiply(x, y), z, w) -
                     circ.multiply(x, leibnizator(bracket, circ, y, z, w)) -
                     circ.multiply(y, leibnizator(bracket, circ, x, z, w));
        return hertling_manin(bracket, circ, x, y, z, w) - combo;
    });
    return ResidualReport({r});
}

struct ATilde {
    Residual values;    ///< scalar A~(w,x,y,z) on basis quadruples
    Residual swap;      ///< A~(w,x,y,z) - A~(x,w,y,z)
    [[nodiscard]] bool symmetric() const { return swap.zero(); }
};

/// A~(w,x,y,z) = -(<(w*x) o y, z> + <x o (w*y), z> + <x o y, w*z>)
inline Rat a_tilde_value(const AlgebraTable& levi, const AlgebraTable& circ, const ScalarProduct& metric,
                         const RatVector& w, const RatVector& x, const RatVector& y, const RatVector& z) {
    return -(metric(circ.multiply(levi.multiply(w, x), y), z) + metric(circ.multiply(x, levi.multiply(w, y)), z) +
             metric(circ.multiply(x, y), levi.multiply(w, z)));
}

/// Requires a flat metric; symmetry is judged by swapping the first two slots.
inline ATilde a_tilde(const AlgebraTable& bracket, const AlgebraTable& circ, const ScalarProduct& metric) {
    require_same(bracket.dim(), circ.dim(), "a_tilde");
    require_same(bracket.dim(), metric.dim(), "a_tilde");
    const auto levi = levi_civita(bracket, metric);
    if (!check_identity(levi, Identity::left_symmetry).all_zero())
        throw MetricError("a_tilde requires a flat scalar product");
    const std::size_t n = bracket.dim();
    Residual vals("a-tilde", {n, n, n, n}, 1);
    vals.fill([&](auto idx) {
        return RatVector{a_tilde_value(levi, circ, metric, unit_vector(n, idx[0]), unit_vector(n, idx[1]),
                                       unit_vector(n, idx[2]), unit_vector(n, idx[3]))};
    });
    Residual swap("a-tilde-swap", {n, n, n, n}, 1);
    swap.fill([&](auto idx) {
        return RatVector{vals.get({idx[0], idx[1], idx[2], idx[3]})[0] - vals.get({idx[1], idx[0], idx[2], idx[3]})[0]};
    });
    return {std::move(vals), std::move(swap)};
}

/// Symmetry of an n^4 scalar array under every transposition of adjacent slots.
inline bool fully_symmetric(const Residual& values) {
    if (values.shape.size() != 4 || values.width != 1) throw DimensionError("fully_symmetric expects a rank-4 scalar array");
    bool ok = true;
    values.for_each_index([&](std::span<const std::size_t> idx) {
        if (!ok) return;
        const Rat v = values.get(idx)[0];
        for (std::size_t s = 0; s + 1 < 4 && ok; ++s) {
            std::vector<std::size_t> t(idx.begin(), idx.end());
            std::swap(t[s], t[s + 1]);
            if (values.get(t)[0] != v) ok = false;
        }
    });
    return ok;
}

/// The unit of a commutative product, found by solving r_e = id, if one exists.
inline std::optional<RatVector> find_unit(const AlgebraTable& circ) {
    const std::size_t n = circ.dim();
    // Unknown e; equation rows: (e o e_j)_k = delta_jk for all j,k.
    RatMatrix a(n * n, n);
    RatVector b(n * n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t i = 0; i < n; ++i) a(j * n + k, i) = circ.tensor().at(i, j, k);
            b[j * n + k] = j == k ? 1 : 0;
        }
    return solve_linear(a, b);
}

struct ClassificationFlags {
    bool associative_commutative = false;
    bool frobenius = false;
    bool hertling_manin = false;
    bool metric_flat = false;
    bool has_unit = false;
    bool unit_flat = false;
    bool strong_symmetric = false;
    bool poisson = false;
    bool weakly_flat_F = false;
    bool flat_F = false;
    std::optional<RatVector> unit;

    friend bool operator==(const ClassificationFlags& a, const ClassificationFlags& b) {
        return a.associative_commutative == b.associative_commutative && a.frobenius == b.frobenius &&
               a.hertling_manin == b.hertling_manin && a.metric_flat == b.metric_flat && a.has_unit == b.has_unit &&
               a.unit_flat == b.unit_flat && a.strong_symmetric == b.strong_symmetric && a.poisson == b.poisson &&
               a.weakly_flat_F == b.weakly_flat_F && a.flat_F == b.flat_F;
    }
};

inline std::ostream& operator<<(std::ostream& os, const ClassificationFlags& f) {
    auto line = [&](const char* k, bool v) { os << k << ": " << (v ? "true" : "false") << '\n'; };
    line("associative_commutative", f.associative_commutative);
    line("frobenius", f.frobenius);
    line("hertling_manin", f.hertling_manin);
    line("metric_flat", f.metric_flat);
    line("has_unit", f.has_unit);
    line("unit_flat", f.unit_flat);
    line("strong_symmetric", f.strong_symmetric);
    line("poisson", f.poisson);
    line("weakly_flat_F", f.weakly_flat_F);
    line("flat_F", f.flat_F);
    return os;
}

/// Commutative, associative, Frobenius, flat and HM; the unit is not examined.
inline bool is_weakly_flat_F(const FAlgebra& f) {
    const auto& circ = f.circ();
    return check_identity(circ, Identity::commutativity).all_zero() &&
           check_identity(circ, Identity::associativity).all_zero() && frobenius_defect(circ, f.metric()).all_zero() &&
           check_identity(f.levi(), Identity::left_symmetry).all_zero() && hm_tensor(f.bracket(), circ).zero();
}

/**
 * Every flag is computed from scratch, so an FAlgebra built unchecked still
 * classifies honestly. Strong symmetry and the Poisson property are only
 * claimed on top of a flat Frobenius commutative associative structure.
 */
inline ClassificationFlags classify(const FAlgebra& f) {
    ClassificationFlags out;
    const auto& circ = f.circ();
    const std::size_t n = f.dim();
    out.associative_commutative = check_identity(circ, Identity::commutativity).all_zero() &&
                                  check_identity(circ, Identity::associativity).all_zero();
    out.frobenius = frobenius_defect(circ, f.metric()).all_zero();
    out.hertling_manin = hm_tensor(f.bracket(), circ).zero();
    out.metric_flat = check_identity(f.levi(), Identity::left_symmetry).all_zero();
    out.unit = find_unit(circ);
    out.has_unit = out.unit.has_value();
    if (out.has_unit) {
        out.unit_flat = true;
        for (std::size_t j = 0; j < n && out.unit_flat; ++j)
            out.unit_flat = is_zero(f.levi().multiply(unit_vector(n, j), *out.unit));
    }
    const bool base = out.associative_commutative && out.frobenius && out.metric_flat;
    out.strong_symmetric = base && a_tilde(f.bracket(), circ, f.metric()).symmetric();
    out.poisson = base && leibnizator_tensor(f.bracket(), circ).zero();
    out.weakly_flat_F = base && out.hertling_manin;
    out.flat_F = out.weakly_flat_F && out.has_unit && out.unit_flat;
    return out;
}

} // namespace fflat
