#pragma once
// Shared builders and seeded random generators for the test programs.
#include "fflat/catalog.hpp"
#include "fflat/cohomology.hpp"
#include "fflat/doubleext.hpp"
#include "fflat/fstruct.hpp"
#include "fflat/search.hpp"

#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace fflat::testing {

class Rng {
public:
    explicit Rng(unsigned seed) : gen_(seed) {}

    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }

    /// p/q with |p| <= span and 1 <= q <= 3.
    Rat rat(int span = 3) { return Rat(integer(-span, span), integer(1, 3)); }

    Rat nonzero(int span = 3) {
        Rat r;
        while ((r = rat(span)).is_zero()) {}
        return r;
    }

    /// Sparse-ish values: zero with probability about one half.
    Rat sparse(int span = 2) { return integer(0, 1) ? Rat(0) : rat(span); }

    RatVector vec(std::size_t n, int span = 3) {
        RatVector v(n);
        for (auto& x : v) x = rat(span);
        return v;
    }

    RatMatrix mat(std::size_t r, std::size_t c, int span = 3) {
        RatMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m(i, j) = rat(span);
        return m;
    }

    /// Unit lower times unit upper triangular: determinant 1.
    RatMatrix unimodular(std::size_t n) {
        RatMatrix l = RatMatrix::identity(n), u = RatMatrix::identity(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < i; ++j) {
                l(i, j) = Rat(integer(-2, 2));
                u(j, i) = Rat(integer(-2, 2));
            }
        return l * u;
    }

    std::mt19937& engine() { return gen_; }

private:
    std::mt19937 gen_;
};

inline RatTensor3 tensor_of(std::size_t n, std::initializer_list<std::tuple<std::size_t, std::size_t, std::size_t, Rat>> entries) {
    RatTensor3 t(n);
    for (const auto& [i, j, k, c] : entries) t.at(i, j, k) = c;
    return t;
}

inline RatMatrix gram_of(std::size_t n, std::initializer_list<std::tuple<std::size_t, std::size_t, Rat>> entries) {
    RatMatrix g(n, n);
    for (const auto& [i, j, c] : entries) g(i, j) = g(j, i) = c;
    return g;
}

// aff(R) in basis (a, d): [d, a] = a, <a, d> = 1.
inline AlgebraTable aff_bracket() {
    return AlgebraTable(ProductKind::lie_bracket, tensor_of(2, {{1, 0, 0, Rat(1)}, {0, 1, 0, Rat(-1)}}), {"a", "d"});
}
inline ScalarProduct hyperbolic() { return ScalarProduct(gram_of(2, {{0, 1, Rat(1)}})); }

// h3 in basis (a, x, d): [d, x] = -a, antidiagonal metric.
inline AlgebraTable h3_bracket() {
    return AlgebraTable(ProductKind::lie_bracket, tensor_of(3, {{2, 1, 0, Rat(-1)}, {1, 2, 0, Rat(1)}}), {"a", "x", "d"});
}
inline ScalarProduct h3_metric() { return ScalarProduct(gram_of(3, {{0, 2, Rat(1)}, {1, 1, Rat(1)}})); }

inline FAlgebra abelian(std::size_t n, const RatMatrix& gram, const RatTensor3& circ) {
    return FAlgebra(AlgebraTable::zero(n, ProductKind::lie_bracket), AlgebraTable(ProductKind::associative, circ),
                    ScalarProduct(gram));
}

inline FAlgebra abelian_euclidean(std::size_t n) { return abelian(n, RatMatrix::identity(n), RatTensor3(n)); }

/// aff(R) as a base, with the Levi-Civita-compatible product d.d = beta' a + lambda' d, a.d = lambda' a.
inline FAlgebra aff_base(const Rat& lam, const Rat& beta) {
    return FAlgebra(aff_bracket(),
                    AlgebraTable(ProductKind::associative,
                                 tensor_of(2, {{1, 1, 0, beta}, {1, 1, 1, lam}, {0, 1, 0, lam}, {1, 0, 0, lam}}),
                                 {"a", "d"}),
                    hyperbolic());
}

/// Nondegenerate symmetric form P^T diag(+-1, +-2) P.
inline ScalarProduct random_metric(Rng& rng, std::size_t n) {
    auto p = rng.unimodular(n);
    RatMatrix d(n, n);
    for (std::size_t i = 0; i < n; ++i) d(i, i) = Rat(rng.integer(0, 1) ? 1 : -1) * Rat(rng.integer(1, 2));
    return ScalarProduct(p.transpose() * d * p);
}

// t R[t] / (t^{n+1}) with e_i = t^{i+1}.
inline AlgebraTable truncated_polynomial(std::size_t n) {
    return table_from(n, ProductKind::associative, [&](std::size_t i, std::size_t j) {
        return i + j + 1 < n ? unit_vector(n, i + j + 1) : RatVector(n);
    });
}

// Upper triangular 2x2 matrices in basis E11, E12, E22.
inline AlgebraTable upper_triangular() {
    return AlgebraTable(ProductKind::associative,
                        tensor_of(3, {{0, 0, 0, Rat(1)}, {0, 1, 1, Rat(1)}, {1, 2, 1, Rat(1)}, {2, 2, 2, Rat(1)}}));
}

/**
 * Valid bimodules of carrier dimension <= 3, alternating between the two
 * flavors. Algebras are drawn from small known pools and put in a random
 * basis; the carrier basis is randomized as well.
 */
inline std::vector<BimoduleSpec> random_bimodules(Rng& rng, std::size_t count) {
    auto params = [&](const std::string& name) {
        std::map<std::string, Rat> p;
        for (const auto& fp : get_fixture(name).free_params) p[fp.name] = fp.nonzero ? rng.nonzero() : rng.rat();
        return p;
    };
    std::vector<BimoduleSpec> out;
    while (out.size() < count) {
        const bool nij = out.size() % 2 == 0;
        std::vector<AlgebraTable> pool;
        if (nij) {
            pool = {levi_civita(aff_bracket(), hyperbolic()), levi_civita(h3_bracket(), h3_metric()),
                    truncated_polynomial(static_cast<std::size_t>(rng.integer(1, 3))),
                    AlgebraTable::zero(static_cast<std::size_t>(rng.integer(1, 3)), ProductKind::generic),
                    get_fixture("h3_circ3", params("h3_circ3")).data.circ()};
        } else {
            pool = {upper_triangular(), truncated_polynomial(static_cast<std::size_t>(rng.integer(1, 3))),
                    get_fixture("h3_circ1", params("h3_circ1")).data.circ(),
                    get_fixture("h3_circ2", params("h3_circ2")).data.circ(),
                    get_fixture("h3_circ5", params("h3_circ5")).data.circ(), aff_base(rng.rat(), rng.rat()).circ()};
        }
        const auto& base = pool[static_cast<std::size_t>(rng.integer(0, static_cast<int>(pool.size()) - 1))];
        const auto alg = change_basis(base, rng.unimodular(base.dim()), Validation::unchecked);
        const Flavor fl = nij ? Flavor::nijenhuis : Flavor::hochschild;
        std::optional<BimoduleSpec> bm;
        try {
            switch (rng.integer(0, 3)) {
            case 0: bm = BimoduleSpec::regular(alg, fl); break;
            case 1: bm = BimoduleSpec::left_only(alg, fl); break;
            case 2: bm = BimoduleSpec::right_only(alg, fl); break;
            default: bm = BimoduleSpec::trivial(alg, fl, static_cast<std::size_t>(rng.integer(1, 3))); break;
            }
        } catch (const AxiomError&) {
            continue;  // right-only needs an associative product
        }
        out.push_back(bm->conjugate(rng.unimodular(bm->carrier())));
    }
    return out;
}

/**
 * A commutative associative product of dimension <= 4 in a random basis:
 * a direct sum of copies of R, dual-number-like local algebras and
 * truncated polynomial algebras.
 */
inline AlgebraTable random_commutative_associative(Rng& rng, std::size_t n) {
    RatTensor3 t(n);
    std::size_t pos = 0;
    while (pos < n) {
        const std::size_t left = n - pos;
        const int kind = rng.integer(0, 3);
        if (kind == 0 || left == 1) {  // R with e.e = e, or a nilpotent line
            if (rng.integer(0, 1)) t.at(pos, pos, pos) = Rat(1);
            pos += 1;
        } else if (kind == 1) {  // unit e, nilpotent part N with N.N = 0
            const std::size_t k = static_cast<std::size_t>(rng.integer(2, static_cast<int>(left)));
            t.at(pos, pos, pos) = Rat(1);
            for (std::size_t j = pos + 1; j < pos + k; ++j) t.at(pos, j, j) = t.at(j, pos, j) = Rat(1);
            pos += k;
        } else {  // t R[t] / t^{k+1}
            const std::size_t k = static_cast<std::size_t>(rng.integer(2, static_cast<int>(left)));
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j)
                    if (i + j + 1 < k) t.at(pos + i, pos + j, pos + i + j + 1) = Rat(1);
            pos += k;
        }
    }
    return change_basis(AlgebraTable(ProductKind::associative, t), rng.unimodular(n));
}

/// Antisymmetric table with random sparse constants; Jacobi is not imposed.
inline AlgebraTable random_antisymmetric(Rng& rng, std::size_t n) {
    RatTensor3 t(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                t.at(i, j, k) = rng.sparse();
                t.at(j, i, k) = -t.at(i, j, k);
            }
    return AlgebraTable(ProductKind::lie_bracket, t, {}, Validation::unchecked);
}

/// Bases of dimension 1 and 2 for random extension parameters: abelian ones and aff(R).
inline std::vector<FAlgebra> oracle_bases(Rng& rng) {
    const Rat one(1);
    return {abelian(1, RatMatrix::identity(1), RatTensor3(1)),
            abelian(1, RatMatrix::identity(1), tensor_of(1, {{0, 0, 0, one}})),
            abelian(1, -one * RatMatrix::identity(1), tensor_of(1, {{0, 0, 0, Rat(2)}})),
            abelian_euclidean(2),
            abelian(2, gram_of(2, {{0, 1, one}}), tensor_of(2, {{0, 0, 0, one}, {0, 1, 1, one}, {1, 0, 1, one}})),
            abelian(2, gram_of(2, {{0, 0, one}, {1, 1, -one}}), RatTensor3(2)),
            aff_base(Rat(0), Rat(0)),
            aff_base(rng.rat(), rng.rat())};
}

/**
 * Random parameters satisfying the linear standing conditions over base b.
 * Every free digit is zero with probability about one half, so that the
 * nonlinear systems vanish often enough to exercise both outcomes.
 */
inline ExtensionParams random_params(Rng& rng, const FAlgebra& b) {
    FamilySpec spec{b, {}};
    auto sl = linear_slices(spec);
    if (!sl) throw std::logic_error("no parameters satisfy the linear conditions");
    return family_member(spec, *sl, [&] {
        switch (rng.integer(0, 5)) {
        case 0: return Rat(1);
        case 1: return Rat(-1);
        case 2: return rng.nonzero();
        default: return Rat(0);
        }
    });
}

/// Random element of the solution space {sum c_i basis_i}.
inline RatVector combo(Rng& rng, const std::vector<RatVector>& basis, std::size_t n, int span = 2) {
    RatVector z(n);
    for (const auto& b : basis) axpy(z, rng.rat(span), b);
    return z;
}

} // namespace fflat::testing
