#pragma once
/**
 * @file search.hpp
 * @brief Grid search over extension parameters, and generators for the
 * nilpotent (bi-nilpotent Lorentzian and index-2) extension families.
 */
#include "fflat/doubleext.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace fflat {

/// Parameter slots; an empty optional marks the slot as free.
struct PartialParams {
    std::optional<Rat> mu, lambda, beta;
    std::optional<RatVector> a0, b0;
    std::optional<RatMatrix> u, D, v;
};

struct FamilySpec {
    FAlgebra base;
    PartialParams fixed;
    Variant variant = Variant::weakF;
    std::vector<Rat> grid{Rat(-1), Rat(0), Rat(1)};
    std::size_t max_candidates = 200000;

    [[nodiscard]] std::vector<std::string> free_slots() const {
        std::vector<std::string> out;
        if (!fixed.mu) out.emplace_back("mu");
        if (!fixed.lambda) out.emplace_back("lambda");
        if (!fixed.beta) out.emplace_back("beta");
        if (!fixed.a0) out.emplace_back("a0");
        if (!fixed.b0) out.emplace_back("b0");
        if (!fixed.u) out.emplace_back("u");
        if (!fixed.D) out.emplace_back("D");
        if (!fixed.v) out.emplace_back("v");
        return out;
    }
};

struct FamilyReport {
    std::vector<ExtensionParams> solutions;
    std::size_t examined = 0;
    bool truncated = false;
    bool linear_part_inconsistent = false;
};

namespace detail {

inline RatVector flatten(const ResidualReport& rep, std::initializer_list<const char*> names) {
    RatVector out;
    for (const char* name : names) {
        const auto& r = rep[name];
        out.insert(out.end(), r.values.begin(), r.values.end());
    }
    return out;
}

inline RatMatrix unflatten(const RatVector& z, std::size_t offset, std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n * n; ++i) m(i / n, i % n) = z[offset + i];
    return m;
}

/// Affine solution set {particular + span(basis)} of f(z) = 0 for an affine f on Q^nv.
struct AffineSpace {
    RatVector particular;
    std::vector<RatVector> basis;
};

inline std::optional<AffineSpace> solve_affine(const std::function<RatVector(const RatVector&)>& f, std::size_t nv) {
    const RatVector f0 = f(RatVector(nv));
    std::vector<RatVector> cols;
    for (std::size_t j = 0; j < nv; ++j) cols.push_back(f(unit_vector(nv, j)) - f0);
    const RatMatrix a = nv == 0 ? RatMatrix(f0.size(), 0) : RatMatrix::from_columns(cols, f0.size());
    auto part = solve_linear(a, -f0);
    if (!part) return std::nullopt;
    return AffineSpace{*part, null_space(a)};
}

/// Base parameters with every free slot zero.
inline ExtensionParams fill_fixed(const PartialParams& fp, std::size_t n) {
    auto p = ExtensionParams::zero(n);
    if (fp.mu) p.mu = *fp.mu;
    if (fp.lambda) p.lambda = *fp.lambda;
    if (fp.beta) p.beta = *fp.beta;
    if (fp.a0) p.a0 = *fp.a0;
    if (fp.b0) p.b0 = *fp.b0;
    if (fp.u) p.u = *fp.u;
    if (fp.D) p.D = *fp.D;
    if (fp.v) p.v = *fp.v;
    return p;
}

} // namespace detail

/**
 * The part of a family that is linear in the operators: (u, D) solve the
 * skew, cocycle, derivation and second flatness conditions jointly, v the
 * self-adjoint and Hochschild cocycle conditions. Free scalars and vector
 * coordinates are counted as further digits.
 */
struct FamilySlices {
    ExtensionParams seed;
    detail::AffineSpace ud, v;
    bool u_free = false, d_free = false, v_free = false;
    std::size_t n_scalar = 0, n_vec = 0;

    [[nodiscard]] std::size_t digits() const { return n_scalar + n_vec + ud.basis.size() + v.basis.size(); }
};

/// Empty when the linear conditions have no solution at all.
inline std::optional<FamilySlices> linear_slices(const FamilySpec& spec) {
    const auto& B = spec.base;
    const std::size_t n = B.dim();
    const auto& fx = spec.fixed;
    FamilySlices out;
    out.seed = detail::fill_fixed(fx, n);
    out.u_free = !fx.u;
    out.d_free = !fx.D;
    out.v_free = !fx.v;
    const std::size_t nud = (out.u_free ? n * n : 0) + (out.d_free ? n * n : 0);
    auto ud = detail::solve_affine(
        [&](const RatVector& z) {
            auto p = out.seed;
            std::size_t off = 0;
            if (out.u_free) p.u = detail::unflatten(z, off, n), off += n * n;
            if (out.d_free) p.D = detail::unflatten(z, off, n);
            detail::ExtCtx c(B, p);
            ResidualReport core;
            add_core_residuals(core, c);
            auto r = detail::flatten(structural_report(B, p), {"skew(D-u)", "u-cocycle", "derivation(D)"});
            auto f = detail::flatten(core, {"flatness:u-vs-D"});
            r.insert(r.end(), f.begin(), f.end());
            return r;
        },
        nud);
    auto v = detail::solve_affine(
        [&](const RatVector& z) {
            auto p = out.seed;
            if (out.v_free) p.v = detail::unflatten(z, 0, n);
            return detail::flatten(structural_report(B, p), {"self-adjoint(v)", "v-cocycle"});
        },
        out.v_free ? n * n : 0);
    if (!ud || !v) return std::nullopt;
    out.ud = std::move(*ud);
    out.v = std::move(*v);
    out.n_scalar = (fx.mu ? 0 : 1) + (fx.lambda ? 0 : 1) + (fx.beta ? 0 : 1);
    out.n_vec = (fx.a0 ? 0 : n) + (fx.b0 ? 0 : n);
    return out;
}

/**
 * The family member whose free digits are drawn from next(), in the order
 * mu, lambda, beta, a0, b0, (u, D) coefficients, v coefficients.
 */
inline ExtensionParams family_member(const FamilySpec& spec, const FamilySlices& sl, const std::function<Rat()>& next) {
    const std::size_t n = spec.base.dim();
    const auto& fx = spec.fixed;
    auto p = sl.seed;
    if (!fx.mu) p.mu = next();
    if (!fx.lambda) p.lambda = next();
    if (!fx.beta) p.beta = next();
    if (!fx.a0)
        for (std::size_t i = 0; i < n; ++i) p.a0[i] = next();
    if (!fx.b0)
        for (std::size_t i = 0; i < n; ++i) p.b0[i] = next();
    RatVector z = sl.ud.particular;
    for (const auto& bv : sl.ud.basis) axpy(z, next(), bv);
    std::size_t off = 0;
    if (sl.u_free) p.u = detail::unflatten(z, off, n), off += n * n;
    if (sl.d_free) p.D = detail::unflatten(z, off, n);
    if (sl.v_free) {
        RatVector zv = sl.v.particular;
        for (const auto& bv : sl.v.basis) axpy(zv, next(), bv);
        p.v = detail::unflatten(zv, 0, n);
    }
    return p;
}

namespace detail {

/**
 * Calls visit(params) for every grid point in lexicographic order. Returns
 * false if the linear conditions of the family have no solution at all.
 */
inline bool enumerate_family(const FamilySpec& spec, FamilyReport& report,
                             const std::function<void(const ExtensionParams&)>& visit) {
    const auto sl = linear_slices(spec);
    if (!sl) return false;
    const std::size_t digits = sl->digits(), g = spec.grid.size();
    if (g == 0) return true;

    std::vector<std::size_t> odo(digits, 0);
    while (true) {
        if (report.examined >= spec.max_candidates) {
            report.truncated = true;
            return true;
        }
        std::size_t k = 0;
        auto p = family_member(spec, *sl, [&] { return spec.grid[odo[k++]]; });
        ++report.examined;
        visit(p);

        std::size_t pos = digits;
        while (pos > 0) {
            --pos;
            if (++odo[pos] < g) break;
            odo[pos] = 0;
            if (pos == 0) return true;
        }
        if (digits == 0) return true;
    }
}

} // namespace detail

/// Every grid point whose residual system for the family's variant vanishes.
inline FamilyReport solve_family(const FamilySpec& spec) {
    FamilyReport report;
    report.linear_part_inconsistent = !detail::enumerate_family(spec, report, [&](const ExtensionParams& p) {
        if (residuals(spec.base, p, spec.variant).all_zero()) report.solutions.push_back(p);
    });
    return report;
}

struct NilpotentExtension {
    ExtensionResult ext;
    bool weakly_flat = false;
    bool bi_nilpotent = false;
    bool nonabelian = false;
    bool v_nilpotent = false;
    std::size_t index = 0;  ///< min(n_plus, n_minus) of the extended scalar product
};

/**
 * Extension of an abelian base with nilpotent product by (0, 0, beta, a0,
 * b0, D, D, v) where D^2 = 0 and im D is orthogonal to b0.
 */
inline NilpotentExtension nilpotent_extension(const FAlgebra& B, const RatMatrix& D, const RatMatrix& v,
                                              const RatVector& b0, const RatVector& a0, const Rat& beta) {
    const std::size_t n = B.dim();
    if (!B.bracket().is_zero()) throw ExtensionError("base bracket is not abelian");
    if (!is_nilpotent_algebra(B.circ())) throw ExtensionError("base product is not nilpotent");
    if (D.rows() != n || D.cols() != n) throw DimensionError("D must be dim(B) x dim(B)");
    if (!(D * D).is_zero()) throw ExtensionError("D^2 is not zero");
    for (std::size_t j = 0; j < n; ++j)
        if (!B.metric()(D.col(j), b0).is_zero()) throw ExtensionError("im(D) is not orthogonal to b0");

    ExtensionParams p{Rat(0), Rat(0), beta, a0, b0, D, D, v, std::nullopt};
    auto rep = residuals(B, p, Variant::weakF);
    if (!rep.all_zero()) {
        std::string msg = "weakly flat residuals fail:";
        for (const auto& b : rep.failing()) msg += " " + b;
        throw ExtensionError(msg);
    }
    NilpotentExtension out{extend(B, p)};
    const auto& g = out.ext.g;
    out.weakly_flat = is_weakly_flat_F(g);
    out.bi_nilpotent = is_bi_nilpotent(g.bracket(), g.circ());
    out.nonabelian = !g.bracket().is_zero();
    out.v_nilpotent = is_nilpotent(v);
    out.index = g.metric().index();
    return out;
}

/// Nilpotent extension of an abelian Riemannian base; the result is Lorentzian.
inline NilpotentExtension binil_generate(const FAlgebra& B, const RatMatrix& D, const RatMatrix& v,
                                         const RatVector& b0, const RatVector& a0, const Rat& beta) {
    if (!B.metric().positive_definite()) throw ExtensionError("base metric is not positive definite");
    return nilpotent_extension(B, D, v, b0, a0, beta);
}

struct InfeasibilityReport {
    bool applicable = false;
    bool infeasible = false;
    std::string reason;
    std::size_t checked = 0;  ///< weakly flat members examined
};

/**
 * With lambda pinned to 0 a flat unit cannot exist: the unit conditions
 * need 1/lambda. Confirms this on every weakly flat grid member, both
 * through the residual system and by looking for a flat unit in the
 * extension itself.
 */
inline InfeasibilityReport flat_unit_infeasibility(const FamilySpec& spec) {
    InfeasibilityReport rep;
    if (!spec.fixed.lambda || !spec.fixed.lambda->is_zero()) {
        rep.reason = "λ is not pinned to 0";
        return rep;
    }
    rep.applicable = true;
    rep.infeasible = true;
    rep.reason = "λ=0";
    FamilySpec weak = spec;
    weak.variant = Variant::weakF;
    FamilyReport scan;
    detail::enumerate_family(weak, scan, [&](const ExtensionParams& p) {
        if (!residuals(spec.base, p, Variant::weakF).all_zero()) return;
        ++rep.checked;
        bool rejected = false;
        try {
            auto q = p;
            if (!q.e_bar) q.e_bar = RatVector(spec.base.dim());
            (void)residuals(spec.base, q, Variant::flat_unit);
        } catch (const ExtensionError&) {
            rejected = true;
        }
        const auto g = extend(spec.base, p).g;
        const auto e = find_unit(g.circ());
        if (!rejected || (e && is_flat_unit(g, *e))) rep.infeasible = false;
    });
    return rep;
}

} // namespace fflat
