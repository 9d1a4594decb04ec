#include "support.hpp"

#include <gtest/gtest.h>

using namespace fflat;
using fflat::testing::Rng;

TEST(Rational, ParsesCanonicalForms) {
    EXPECT_EQ(Rat::parse("6/4").str(), "3/2");
    EXPECT_EQ(Rat::parse("-10/4").str(), "-5/2");
    EXPECT_EQ(Rat::parse("0/7").str(), "0");
}

TEST(Rational, RejectsMalformedLiterals) {
    EXPECT_THROW(Rat::parse(""), ParseError);
    EXPECT_THROW(Rat::parse("1.5"), ParseError);
    EXPECT_THROW(Rat::parse("1/0"), ParseError);
    EXPECT_THROW(Rat::parse("1/-2"), ParseError);
    EXPECT_EQ(Rat::parse(" -4/6 ").str(), "-2/3");
    EXPECT_EQ(Rat::parse("+3").str(), "3");
}

TEST(Rational, ArithmeticIsExact) {
    Rat third(1, 3);
    EXPECT_EQ(third + third + third, Rat(1));
    EXPECT_EQ(Rat(1, 3) * Rat(3, 7), Rat(1, 7));
    EXPECT_THROW(Rat(1) / Rat(0), std::domain_error);
}

TEST(SolveLinear, Examples) {
    auto x = solve_linear(RatMatrix::identity(2), {Rat(3), Rat(1, 2)});
    ASSERT_TRUE(x);
    EXPECT_EQ(*x, (RatVector{Rat(3), Rat(1, 2)}));

    EXPECT_FALSE(solve_linear(RatMatrix::from_rows({{Rat(1), Rat(1)}, {Rat(2), Rat(2)}}, 2), {Rat(1), Rat(3)}));

    auto y = solve_linear(RatMatrix::from_rows({{Rat(2), Rat(0)}, {Rat(0), Rat(3)}}, 2), {Rat(1), Rat(1)});
    ASSERT_TRUE(y);
    EXPECT_EQ(*y, (RatVector{Rat(1, 2), Rat(1, 3)}));
}

TEST(SolveLinear, ResubstitutionOnRandomSystems) {
    Rng rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t r = rng.integer(1, 5), c = rng.integer(1, 5);
        auto a = rng.mat(r, c);
        auto x0 = rng.vec(c);
        auto b = a * x0;
        auto x = solve_linear(a, b);
        ASSERT_TRUE(x);
        EXPECT_EQ(a * *x, b);
    }
}

TEST(NullSpace, Examples) {
    EXPECT_TRUE(null_space(RatMatrix::identity(2)).empty());
    auto k = null_space(RatMatrix::from_rows({{Rat(1), Rat(1)}}, 2));
    ASSERT_EQ(k.size(), 1u);
    EXPECT_EQ(k[0], (RatVector{Rat(-1), Rat(1)}));
    auto z = null_space(RatMatrix(2, 2));
    ASSERT_EQ(z.size(), 2u);
    EXPECT_EQ(z[0], (RatVector{Rat(1), Rat(0)}));
    EXPECT_EQ(z[1], (RatVector{Rat(0), Rat(1)}));
}

TEST(NullSpace, KernelVectorsAreIndependentAndAnnihilated) {
    Rng rng(12);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t r = rng.integer(1, 4), c = rng.integer(1, 6);
        RatMatrix a(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) a(i, j) = rng.sparse();
        auto k = null_space(a);
        EXPECT_EQ(k.size(), c - rank(a));
        EXPECT_TRUE(linearly_independent(k, c));
        for (const auto& v : k) EXPECT_TRUE(is_zero(a * v));
    }
}

TEST(Signature, Examples) {
    auto s = congruent_signature(fflat::testing::gram_of(2, {{0, 1, Rat(1)}}));
    EXPECT_EQ(s.n_plus, 1u);
    EXPECT_EQ(s.n_minus, 1u);
    EXPECT_EQ(s.n_zero, 0u);
    s = congruent_signature(RatMatrix::identity(3));
    EXPECT_EQ(s.n_plus, 3u);
    // Antidiagonal h3 metric: x, a+d, a-d diagonalize it as (1, 2, -2).
    s = congruent_signature(fflat::testing::gram_of(3, {{0, 2, Rat(1)}, {1, 1, Rat(1)}}));
    EXPECT_EQ(s.n_plus, 2u);
    EXPECT_EQ(s.n_minus, 1u);
    EXPECT_EQ(s.n_zero, 0u);
}

TEST(Signature, RejectsNonSymmetric) {
    EXPECT_THROW(congruent_signature(RatMatrix::from_rows({{Rat(0), Rat(1)}, {Rat(0), Rat(0)}}, 2)),
                 std::invalid_argument);
}

TEST(Signature, InvariantUnderCongruence) {
    Rng rng(13);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = rng.integer(1, 5);
        RatMatrix s(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) s(i, j) = s(j, i) = rng.sparse();
        auto p = rng.unimodular(n);
        auto t = p.transpose() * s * p;
        auto a = congruent_signature(s), b = congruent_signature(t);
        EXPECT_EQ(a.n_plus, b.n_plus);
        EXPECT_EQ(a.n_minus, b.n_minus);
        EXPECT_EQ(a.n_zero, b.n_zero);
        EXPECT_EQ(a.n_zero, n - rank(s));
    }
}

TEST(Inverse, RoundTripAndDeterminant) {
    Rng rng(14);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = rng.integer(1, 4);
        auto p = rng.unimodular(n);
        EXPECT_EQ(determinant(p), Rat(1));
        auto inv = inverse(p);
        ASSERT_TRUE(inv);
        EXPECT_EQ(p * *inv, RatMatrix::identity(n));
    }
    EXPECT_FALSE(inverse(RatMatrix(2, 2)));
    EXPECT_TRUE(inverse(RatMatrix(0, 0)));
}

TEST(Nilpotent, MatrixPredicate) {
    RatMatrix n(3, 3);
    n(1, 0) = Rat(1);
    n(2, 1) = Rat(5);
    EXPECT_TRUE(is_nilpotent(n));
    EXPECT_FALSE(is_nilpotent(RatMatrix::identity(2)));
}
