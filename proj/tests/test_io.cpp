#include "fflat/io.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace fflat;
using namespace fflat::testing;

namespace {

std::string error_of(const std::string& text) {
    try {
        (void)parse_algebra_file(text);
    } catch (const IoError& e) {
        return e.what();
    }
    return "";
}

} // namespace

TEST(AlgebraFileIo, RoundTripsFixtures) {
    for (const auto& name : fixture_names()) {
        auto fx = get_fixture(name);
        auto text = write_algebra_file(fx.data);
        auto g = parse_algebra_file(text).algebra(Validation::unchecked);
        EXPECT_EQ(g.bracket().tensor(), fx.data.bracket().tensor()) << name;
        EXPECT_EQ(g.circ().tensor(), fx.data.circ().tensor()) << name;
        EXPECT_EQ(g.metric().gram(), fx.data.metric().gram()) << name;
        EXPECT_EQ(g.names(), fx.data.names());
        EXPECT_EQ(write_algebra_file(g), text) << name;

        // A base together with the parameters that extend it.
        auto base_text = write_algebra_file(fx.base, fx.provenance);
        auto f = parse_algebra_file(base_text);
        ASSERT_TRUE(f.params);
        EXPECT_EQ(*f.params, fx.provenance) << name;
        EXPECT_EQ(write_algebra_file(f.algebra(), *f.params), base_text) << name;
    }
}

TEST(AlgebraFileIo, BareParamsObject) {
    auto p = parse_params_file(R"({"b0": ["1"], "lambda": 2})", 1);
    EXPECT_EQ(p.b0, RatVector{Rat(1)});
    EXPECT_EQ(p.lambda, Rat(2));
    EXPECT_TRUE(p.v.is_zero());
    EXPECT_THROW(parse_params_file(R"({"b0": ["1", "2"]})", 1), IoError);
}

TEST(AlgebraFileIo, MinimalDocument) {
    auto f = parse_algebra_file(R"({"dim": 2, "metric": [["0","1"],["1","0"]], "bracket": [[[0,0],[-1,0]],[[1,0],[0,0]]]})");
    EXPECT_EQ(f.basis, (std::vector<std::string>{"e1", "e2"}));
    auto g = f.algebra();
    EXPECT_EQ(g.bracket().tensor(), aff_bracket().tensor());
    EXPECT_TRUE(g.circ().is_zero());
    EXPECT_FALSE(f.params);
}

TEST(AlgebraFileIo, ErrorsNameTheField) {
    EXPECT_NE(error_of("{").find("syntax"), std::string::npos);
    EXPECT_NE(error_of(R"({"metric": [["1"]]})").find("dim"), std::string::npos);
    EXPECT_NE(error_of(R"({"dim": 1})").find("metric"), std::string::npos);
    EXPECT_NE(error_of(R"({"dim": 1, "metric": [["0"]]})").find("metric"), std::string::npos);
    EXPECT_NE(error_of(R"({"dim": 1, "metric": [[1.5]]})").find("metric[0][0]"), std::string::npos);
    EXPECT_NE(error_of(R"({"dim": 1, "metric": [["1"]], "circ": [[["1/0"]]]})").find("circ[0][0][0]"),
              std::string::npos);
    EXPECT_NE(error_of(R"({"dim": 1, "metric": [["1"]], "circ": [[["1", "2"]]]})").find("circ[0][0]"),
              std::string::npos);
    EXPECT_NE(error_of(R"({"dim": 1, "metric": [["1"]], "colour": 1})").find("colour"), std::string::npos);
    EXPECT_NE(error_of(R"({"dim": 1, "metric": [["1"]], "params": {"nu": "1"}})").find("params.nu"),
              std::string::npos);
}

TEST(AlgebraFileIo, RejectsFloats) {
    EXPECT_THROW(parse_algebra_file(R"({"dim": 1, "metric": [[0.5]]})"), IoError);
    EXPECT_NO_THROW(parse_algebra_file(R"({"dim": 1, "metric": [[2]]})"));
}

TEST(FormatVector, Examples) {
    std::vector<std::string> names{"a", "x", "d"};
    EXPECT_EQ(format_vector({Rat(-1), Rat(1, 2), Rat(0)}, names), "-a + 1/2 x");
    EXPECT_EQ(format_vector(RatVector(3), names), "0");
    EXPECT_EQ(format_vector({Rat(0), Rat(-3), Rat(1)}, names), "-3 x + d");
}

TEST(FamilyFile, ParsesFixedSlotsAndGrid) {
    auto spec = parse_family_file(R"({
      "base": {"dim": 1, "basis": ["x"], "metric": [["1"]]},
      "variant": "strong",
      "fixed": {"mu": "0", "u": [["0"]], "D": [["0"]], "b0": ["1"]},
      "grid": ["-1", "0", "1/2"],
      "max_candidates": 10})");
    EXPECT_EQ(spec.variant, Variant::strong);
    EXPECT_EQ(spec.free_slots(), (std::vector<std::string>{"lambda", "beta", "a0", "v"}));
    EXPECT_EQ(spec.grid, (std::vector<Rat>{Rat(-1), Rat(0), Rat(1, 2)}));
    EXPECT_EQ(spec.max_candidates, 10u);
    EXPECT_THROW(parse_family_file(R"({"base": {"dim": 1, "metric": [["1"]]}, "variant": "other"})"), IoError);
    EXPECT_THROW(parse_family_file(R"({"variant": "weakF"})"), IoError);
}

TEST(FamilyFile, ReportIsDeterministic) {
    FamilySpec spec{abelian_euclidean(1), {}};
    spec.fixed.mu = Rat(0);
    spec.fixed.u = RatMatrix(1, 1);
    spec.fixed.D = RatMatrix(1, 1);
    auto a = write_family_report(solve_family(spec));
    auto b = write_family_report(solve_family(spec));
    EXPECT_EQ(a, b);
    EXPECT_NE(a.find("\"solutions\""), std::string::npos);
}
