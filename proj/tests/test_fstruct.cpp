#include "support.hpp"

#include <gtest/gtest.h>

using namespace fflat;
using namespace fflat::testing;

namespace {

RatVector e3(std::size_t i) { return unit_vector(3, i); }

AlgebraTable random_commutative(Rng& rng, std::size_t n) {
    RatTensor3 t(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) t.at(i, j, k) = t.at(j, i, k) = rng.sparse();
    return AlgebraTable(ProductKind::generic, t);
}

Fixture fx(const std::string& name, std::map<std::string, Rat> p = {}) { return get_fixture(name, p); }

} // namespace

TEST(Frobenius, Examples) {
    EXPECT_TRUE(frobenius_defect(fx("h3_circ1").data.circ(), h3_metric()).all_zero());
    EXPECT_TRUE(frobenius_defect(AlgebraTable::zero(3, ProductKind::associative), h3_metric()).all_zero());
    // Basis (x, d), <x,d> = 1, x.x = x: <x.x, d> = 1 but <x, x.d> = 0.
    auto c = AlgebraTable(ProductKind::associative, tensor_of(2, {{0, 0, 0, Rat(1)}}));
    auto rep = frobenius_defect(c, hyperbolic());
    EXPECT_EQ(rep["frobenius"].get({0, 0, 1}), RatVector{Rat(1)});
}

TEST(HertlingManin, VanishesForPoissonAndCirc3) {
    EXPECT_TRUE(hm_tensor(h3_bracket(), fx("h3_circ5").data.circ()).zero());
    auto c3 = fx("h3_circ3", {{"alpha", Rat(1)}, {"beta", Rat(1)}, {"lambda", Rat(1)}});
    EXPECT_TRUE(hm_tensor(c3.data.bracket(), c3.data.circ()).zero());
}

TEST(HertlingManin, NonzeroOnIdempotentProduct) {
    // Orthogonal idempotents a, x, d on h3: only [d.d, x.x] = [d, x] = -a survives in HM(d,d,x,x).
    auto c = AlgebraTable(ProductKind::associative, tensor_of(3, {{0, 0, 0, Rat(1)}, {1, 1, 1, Rat(1)}, {2, 2, 2, Rat(1)}}));
    auto hm = hm_tensor(h3_bracket(), c);
    EXPECT_EQ(hm.get({2, 2, 1, 1}), (RatVector{Rat(-1), Rat(0), Rat(0)}));
    EXPECT_EQ(hertling_manin(h3_bracket(), c, e3(2), e3(2), e3(1), e3(1)), -e3(0));
}

TEST(Leibnizator, Examples) {
    EXPECT_TRUE(leibnizator_tensor(h3_bracket(), fx("h3_circ5").data.circ()).zero());
    Rng rng(41);
    EXPECT_TRUE(leibnizator_tensor(AlgebraTable::zero(3, ProductKind::lie_bracket), random_commutative(rng, 3)).zero());
    // alpha = 1: x.x = a + x, so L(d,x,x) = [d, a + x] - 2 [d,x].x = -a.
    auto c2 = fx("h3_circ2", {{"alpha", Rat(1)}, {"beta", Rat(0)}}).data.circ();
    EXPECT_EQ(leibnizator(h3_bracket(), c2, e3(2), e3(1), e3(1)), -e3(0));
}

TEST(ATildeTensor, Examples) {
    Rng rng(42);
    for (int t = 0; t < 5; ++t) {
        auto c4 = fx("h3_circ4", {{"alpha", rng.rat()}, {"beta", rng.rat()}, {"lambda", rng.rat()}});
        auto at = a_tilde(c4.data.bracket(), c4.data.circ(), c4.data.metric());
        EXPECT_TRUE(at.symmetric());
        EXPECT_TRUE(fully_symmetric(at.values));
    }
    auto ab = a_tilde(AlgebraTable::zero(3, ProductKind::lie_bracket), random_commutative(rng, 3), h3_metric());
    EXPECT_TRUE(ab.values.zero());
    EXPECT_TRUE(ab.symmetric());

    auto c3 = fx("h3_circ3", {{"alpha", Rat(0)}, {"beta", Rat(0)}, {"lambda", Rat(1)}});
    auto at3 = a_tilde(c3.data.bracket(), c3.data.circ(), c3.data.metric());
    EXPECT_FALSE(at3.symmetric());
    // The first failing quadruple agrees with a direct evaluation through the Levi-Civita product.
    const auto& g = c3.data;
    std::vector<std::size_t> bad;
    at3.swap.for_each_index([&](std::span<const std::size_t> i) {
        if (bad.empty() && !at3.swap.get(i)[0].is_zero()) bad.assign(i.begin(), i.end());
    });
    ASSERT_EQ(bad.size(), 4u);
    auto direct = a_tilde_value(g.levi(), g.circ(), g.metric(), e3(bad[0]), e3(bad[1]), e3(bad[2]), e3(bad[3])) -
                  a_tilde_value(g.levi(), g.circ(), g.metric(), e3(bad[1]), e3(bad[0]), e3(bad[2]), e3(bad[3]));
    EXPECT_NE(direct, Rat(0));
    EXPECT_EQ(at3.swap.get(bad)[0], direct);
}

TEST(ATildeTensor, RejectsNonFlatMetric) {
    auto sl2 = AlgebraTable(ProductKind::lie_bracket,
                            tensor_of(3, {{0, 1, 1, Rat(2)}, {1, 0, 1, Rat(-2)}, {0, 2, 2, Rat(-2)}, {2, 0, 2, Rat(2)},
                                          {1, 2, 0, Rat(1)}, {2, 1, 0, Rat(-1)}}));
    auto killing = ScalarProduct(gram_of(3, {{0, 0, Rat(8)}, {1, 2, Rat(4)}}));
    EXPECT_THROW(a_tilde(sl2, AlgebraTable::zero(3, ProductKind::associative), killing), MetricError);
}

TEST(HmViaLeibnizator, FixedExamples) {
    EXPECT_TRUE(hm_via_leibnizator_check(h3_bracket(), fx("h3_circ2").data.circ()).all_zero());
    auto aff = fx("aff_r", {{"lambda", Rat(1)}, {"beta", Rat(2)}}).data;
    EXPECT_TRUE(hm_via_leibnizator_check(aff.bracket(), aff.circ()).all_zero());
}

TEST(HertlingManin, SymmetriesAndLeibnizatorIdentityOnRandomPairs) {
    Rng rng(43);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = rng.integer(1, 3);
        auto c = random_commutative_associative(rng, n);
        auto b = random_antisymmetric(rng, n);
        auto hm = hm_tensor(b, c);
        auto lz = leibnizator_tensor(b, c);
        hm.for_each_index([&](std::span<const std::size_t> i) {
            auto v = hm.get(i);
            EXPECT_EQ(v, hm.get({i[1], i[0], i[2], i[3]}));
            EXPECT_EQ(v, hm.get({i[0], i[1], i[3], i[2]}));
            EXPECT_EQ(v, -hm.get({i[2], i[3], i[0], i[1]}));
        });
        lz.for_each_index([&](std::span<const std::size_t> i) { EXPECT_EQ(lz.get(i), lz.get({i[0], i[2], i[1]})); });
        EXPECT_TRUE(hm_via_leibnizator_check(b, c).all_zero());
    }
}

TEST(HertlingManin, LeibnizatorIdentityNeedsOnlyCommutativity) {
    Rng rng(45);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = rng.integer(1, 3);
        auto c = random_commutative(rng, n);
        auto b = random_antisymmetric(rng, n);
        EXPECT_TRUE(hm_via_leibnizator_check(b, c).all_zero());
        auto hm = hm_tensor(b, c);
        hm.for_each_index([&](std::span<const std::size_t> i) {
            EXPECT_EQ(hm.get(i), hm.get({i[1], i[0], i[3], i[2]}));
        });
    }
}

TEST(Classify, Examples) {
    auto c3 = classify(fx("h3_circ3", {{"alpha", Rat(0)}, {"beta", Rat(0)}, {"lambda", Rat(1)}}).data);
    EXPECT_TRUE(c3.has_unit);
    EXPECT_EQ(*c3.unit, e3(2));
    EXPECT_FALSE(c3.unit_flat);
    EXPECT_FALSE(c3.flat_F);

    auto c5 = classify(fx("h3_circ5", {{"beta", Rat(7, 2)}}).data);
    EXPECT_TRUE(c5.poisson);
    EXPECT_TRUE(c5.weakly_flat_F);

    auto ab = classify(abelian_euclidean(3));
    EXPECT_TRUE(ab.weakly_flat_F);
    EXPECT_FALSE(ab.has_unit);
}

TEST(Classify, FlagInvariantsAndImplications) {
    Rng rng(44);
    for (const auto& name : fixture_names())
        for (int t = 0; t < 3; ++t) {
            std::map<std::string, Rat> p;
            for (const auto& fp : fx(name).free_params) p[fp.name] = fp.nonzero ? rng.nonzero() : rng.rat();
            const auto& g = fx(name, p).data;
            auto f = classify(g);
            EXPECT_EQ(f.weakly_flat_F, f.associative_commutative && f.frobenius && f.hertling_manin && f.metric_flat)
                << name;
            EXPECT_EQ(f.flat_F, f.weakly_flat_F && f.has_unit && f.unit_flat) << name;
            if (f.strong_symmetric || f.poisson) {
                EXPECT_TRUE(f.hertling_manin) << name;
            }
        }
}

TEST(FAlgebraType, ValidatingConstructor) {
    auto br = h3_bracket();
    auto bad = AlgebraTable(ProductKind::generic, tensor_of(3, {{0, 1, 2, Rat(1)}}));
    EXPECT_THROW(FAlgebra(br, bad, h3_metric()), AxiomError);
    auto c = fx("h3_circ3", {{"alpha", Rat(0)}, {"beta", Rat(0)}, {"lambda", Rat(1)}}).data.circ();
    EXPECT_NO_THROW(FAlgebra(br, c, h3_metric(), e3(2)));
    EXPECT_THROW(FAlgebra(br, c, h3_metric(), e3(1)), AxiomError);
}
