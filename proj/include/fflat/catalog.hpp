#pragma once
/**
 * @file catalog.hpp
 * @brief Built-in example algebras: aff(R), the five product families on the
 * Heisenberg algebra h3, and two extensions of abelian R^2. Each fixture is
 * produced by extend() from recorded parameters and carries the properties
 * the construction is known to give it.
 */
#include "fflat/doubleext.hpp"
#include "fflat/fstruct.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fflat {

class FixtureError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct FreeParam {
    std::string name;
    Rat sample;
    bool nonzero = false;  ///< zero is outside the family
};

/// An expected property: a ClassificationFlags field name or "bi_nilpotent".
struct Claim {
    std::string flag;
    bool value;
};

struct Fixture {
    std::string name;
    FAlgebra data;
    FAlgebra base;
    ExtensionParams provenance;
    std::vector<Claim> expected;
    std::vector<FreeParam> free_params;
};

inline bool flag_value(const ClassificationFlags& f, const std::string& name) {
    static const std::map<std::string, bool ClassificationFlags::*> fields{
        {"associative_commutative", &ClassificationFlags::associative_commutative},
        {"frobenius", &ClassificationFlags::frobenius},
        {"hertling_manin", &ClassificationFlags::hertling_manin},
        {"metric_flat", &ClassificationFlags::metric_flat},
        {"has_unit", &ClassificationFlags::has_unit},
        {"unit_flat", &ClassificationFlags::unit_flat},
        {"strong_symmetric", &ClassificationFlags::strong_symmetric},
        {"poisson", &ClassificationFlags::poisson},
        {"weakly_flat_F", &ClassificationFlags::weakly_flat_F},
        {"flat_F", &ClassificationFlags::flat_F},
    };
    auto it = fields.find(name);
    if (it == fields.end()) throw std::invalid_argument("unknown classification flag: " + name);
    return f.*(it->second);
}

/// Claims that do not hold, each rendered as "flag: expected X, got Y".
inline std::vector<std::string> claim_mismatches(const Fixture& fx) {
    const auto flags = classify(fx.data);
    std::vector<std::string> out;
    for (const auto& c : fx.expected) {
        bool got = c.flag == "bi_nilpotent" ? is_bi_nilpotent(fx.data.bracket(), fx.data.circ()) : flag_value(flags, c.flag);
        if (got != c.value)
            out.push_back(c.flag + ": expected " + (c.value ? "true" : "false") + ", got " + (got ? "true" : "false"));
    }
    return out;
}

inline const std::vector<std::string>& fixture_names() {
    static const std::vector<std::string> names{"aff_r",    "h3_circ1", "h3_circ2", "h3_circ3",
                                                "h3_circ4", "h3_circ5", "rn_case1", "rn_case2"};
    return names;
}

namespace detail {

inline FAlgebra abelian_base(std::vector<std::string> names, RatMatrix gram, AlgebraTable circ) {
    const std::size_t n = names.size();
    return FAlgebra(AlgebraTable::zero(n, ProductKind::lie_bracket, names), std::move(circ),
                    ScalarProduct(std::move(gram)));
}

class ParamReader {
public:
    ParamReader(std::string fixture, const std::map<std::string, Rat>& given, std::vector<FreeParam> declared)
        : fixture_(std::move(fixture)), given_(given), declared_(std::move(declared)) {
        for (const auto& [k, _] : given_) {
            bool known = false;
            for (const auto& d : declared_) known = known || d.name == k;
            if (!known) throw FixtureError(fixture_ + " has no parameter '" + k + "'");
        }
    }

    Rat operator()(const std::string& name) const {
        for (const auto& d : declared_) {
            if (d.name != name) continue;
            auto it = given_.find(name);
            Rat value = it == given_.end() ? d.sample : it->second;
            if (d.nonzero && value.is_zero()) throw FixtureError(fixture_ + " requires " + name + " != 0");
            return value;
        }
        throw std::logic_error("undeclared fixture parameter " + name);
    }

    [[nodiscard]] const std::vector<FreeParam>& declared() const { return declared_; }

private:
    std::string fixture_;
    const std::map<std::string, Rat>& given_;
    std::vector<FreeParam> declared_;
};

inline Fixture from_extension(std::string name, FAlgebra base, ExtensionParams p, std::vector<Claim> claims,
                              const ParamReader& params) {
    auto ext = extend(base, p);
    return Fixture{std::move(name), std::move(ext.g), std::move(base), std::move(p), std::move(claims),
                   params.declared()};
}

} // namespace detail

/**
 * Instantiates a fixture; parameters not given take their sample value.
 * The h3 families are extensions of the line R x with <x,x> = 1, b0 = x,
 * u = D = 0, mu = 0 and a0 = alpha x.
 */
inline Fixture get_fixture(const std::string& name, const std::map<std::string, Rat>& given = {}) {
    using detail::ParamReader;
    const Rat one(1), zero(0);

    if (name == "aff_r") {
        // [d,a] = a from mu = 1 over the zero-dimensional base.
        ParamReader P(name, given, {{"lambda", one}, {"beta", zero}});
        auto p = ExtensionParams::zero(0);
        p.mu = one;
        p.lambda = P("lambda");
        p.beta = P("beta");
        std::vector<Claim> claims{{"weakly_flat_F", true}};
        if (p.lambda.is_zero()) {
            claims.push_back({"strong_symmetric", true});
            // L(d,d,d) = beta a, so the Poisson property needs beta = 0 as well.
            if (p.beta.is_zero()) claims.push_back({"poisson", true});
        }
        if (p.lambda == one && p.beta.is_zero()) {
            claims.push_back({"has_unit", true});
            claims.push_back({"unit_flat", false});
        }
        auto B = detail::abelian_base({}, RatMatrix(0, 0), AlgebraTable::zero(0, ProductKind::associative));
        return detail::from_extension(name, std::move(B), std::move(p), std::move(claims), P);
    }

    if (name.rfind("h3_circ", 0) == 0 && name.size() == 8 && name[7] >= '1' && name[7] <= '5') {
        const char which = name[7];
        std::vector<FreeParam> decl;
        if (which == '5') decl = {{"beta", Rat(2)}};
        else decl = {{"alpha", Rat(1), which == '2'}, {"beta", Rat(2)}};
        if (which == '3' || which == '4') decl.push_back({"lambda", one, which == '3'});
        ParamReader P(name, given, decl);

        auto p = ExtensionParams::zero(1);
        p.b0 = {one};
        p.beta = P("beta");
        if (which != '5') p.a0 = {P("alpha")};
        AlgebraTable circ_b = AlgebraTable::zero(1, ProductKind::associative, {"x"});
        std::vector<Claim> claims;
        switch (which) {
        case '1':
            claims = {{"weakly_flat_F", true}, {"bi_nilpotent", true}};
            break;
        case '2': {
            // v = id and v^2 = r_{a0} force x.x = x / alpha on the base.
            p.v = RatMatrix::identity(1);
            RatTensor3 t(1);
            t.at(0, 0, 0) = one / p.a0[0];
            circ_b = AlgebraTable(ProductKind::associative, t, {"x"});
            claims = {{"weakly_flat_F", true}, {"bi_nilpotent", false}};
            break;
        }
        case '3':
            p.lambda = P("lambda");
            p.v = p.lambda * RatMatrix::identity(1);
            claims = {{"weakly_flat_F", true}, {"bi_nilpotent", false}};
            if (p.lambda == one && p.a0[0].is_zero() && p.beta.is_zero()) {
                claims.push_back({"has_unit", true});
                claims.push_back({"unit_flat", false});
            }
            break;
        case '4':
            p.lambda = P("lambda");
            p.v = (p.lambda / Rat(2)) * RatMatrix::identity(1);
            claims = {{"strong_symmetric", true}};
            break;
        default:
            claims = {{"poisson", true}};
            break;
        }
        auto B = detail::abelian_base({"x"}, RatMatrix::identity(1), circ_b);
        return detail::from_extension(name, std::move(B), std::move(p), std::move(claims), P);
    }

    if (name == "rn_case1") {
        // R^2 Euclidean, zero product, D = u = 0, a0 = 0, v = lambda id.
        ParamReader P(name, given, {{"lambda", one}, {"beta", zero}});
        auto p = ExtensionParams::zero(2);
        p.lambda = P("lambda");
        p.beta = P("beta");
        p.b0 = {one, zero};
        p.v = p.lambda * RatMatrix::identity(2);
        auto B = detail::abelian_base({"x1", "x2"}, RatMatrix::identity(2),
                                      AlgebraTable::zero(2, ProductKind::associative, {"x1", "x2"}));
        return detail::from_extension(name, std::move(B), std::move(p), {{"weakly_flat_F", true}}, P);
    }

    if (name == "rn_case2") {
        // Dual numbers on R^2 (x1 unit, x2.x2 = 0) with <x1,x2> = 1, u = D = v = 0, a0 = b0 = 0.
        ParamReader P(name, given, {{"lambda", one, true}, {"mu", zero}, {"beta", zero}});
        auto p = ExtensionParams::zero(2);
        p.lambda = P("lambda");
        p.mu = P("mu");
        p.beta = P("beta");
        p.e_bar = RatVector{one, zero};
        RatTensor3 t(2);
        t.at(0, 0, 0) = one;
        t.at(0, 1, 1) = one;
        t.at(1, 0, 1) = one;
        RatMatrix gram(2, 2);
        gram(0, 1) = gram(1, 0) = one;
        auto B = detail::abelian_base({"x1", "x2"}, gram, AlgebraTable(ProductKind::associative, t, {"x1", "x2"}));
        std::vector<Claim> claims{{"weakly_flat_F", true}, {"has_unit", true}};
        claims.push_back({"flat_F", p.mu.is_zero()});
        return detail::from_extension(name, std::move(B), std::move(p), std::move(claims), P);
    }

    throw FixtureError("unknown fixture: " + name);
}

} // namespace fflat
