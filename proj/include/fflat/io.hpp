#pragma once
/**
 * @file io.hpp
 * @brief JSON algebra files. Rationals are strings ("p" or "p/q"); tensors
 * are nested arrays indexed [i][j][k] = coefficient of e_k in e_i.e_j.
 *
 *   {"dim": n, "basis": [...], "metric": [[...]], "bracket": [[[...]]],
 *    "circ": [[[...]]], "unit": [...], "params": {...}}
 *
 * bracket, circ, unit and params are optional; an absent table is zero.
 */
#include "fflat/doubleext.hpp"
#include "fflat/search.hpp"

#include "json.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fflat {

/// Malformed input; the message starts with the offending field path.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct AlgebraFile {
    std::vector<std::string> basis;
    RatMatrix metric;
    RatTensor3 bracket;
    RatTensor3 circ;
    std::optional<RatVector> unit;
    std::optional<ExtensionParams> params;

    [[nodiscard]] std::size_t dim() const { return basis.size(); }

    /// Tables without axiom checks, for reporting on possibly invalid input.
    [[nodiscard]] FAlgebra algebra(Validation v = Validation::checked) const {
        return FAlgebra(AlgebraTable(ProductKind::lie_bracket, bracket, basis, v),
                        AlgebraTable(v == Validation::checked ? ProductKind::associative : ProductKind::generic, circ,
                                     basis, v),
                        ScalarProduct(metric), unit, v);
    }
};

namespace io_detail {

using json = nlohmann::ordered_json;

[[noreturn]] inline void fail(const std::string& path, const std::string& what) { throw IoError(path + ": " + what); }

inline Rat rat(const json& j, const std::string& path) {
    if (j.is_string()) {
        try {
            return Rat::parse(j.get<std::string>());
        } catch (const ParseError& e) {
            fail(path, e.what());
        }
    }
    if (j.is_number_integer()) return Rat::parse(j.dump());
    fail(path, j.is_number_float() ? "floating-point literal; write rationals as \"p/q\" strings"
                                   : "expected a rational string");
}

inline const json& array(const json& j, std::size_t n, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array");
    if (j.size() != n) fail(path, "expected " + std::to_string(n) + " entries, found " + std::to_string(j.size()));
    return j;
}

inline RatVector vec(const json& j, std::size_t n, const std::string& path) {
    array(j, n, path);
    RatVector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = rat(j[i], path + "[" + std::to_string(i) + "]");
    return v;
}

inline RatMatrix mat(const json& j, std::size_t n, const std::string& path) {
    array(j, n, path);
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        auto row = vec(j[i], n, path + "[" + std::to_string(i) + "]");
        for (std::size_t k = 0; k < n; ++k) m(i, k) = row[k];
    }
    return m;
}

inline RatTensor3 tensor(const json& j, std::size_t n, const std::string& path) {
    array(j, n, path);
    RatTensor3 t(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::string pi = path + "[" + std::to_string(i) + "]";
        array(j[i], n, pi);
        for (std::size_t k = 0; k < n; ++k) {
            auto v = vec(j[i][k], n, pi + "[" + std::to_string(k) + "]");
            for (std::size_t l = 0; l < n; ++l) t.at(i, k, l) = v[l];
        }
    }
    return t;
}

inline json out(const Rat& r) { return r.str(); }
inline json out(const RatVector& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(out(x));
    return a;
}
inline json out(const RatMatrix& m) {
    json a = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(out(m.row(i)));
    return a;
}
inline json out(const RatTensor3& t) {
    const std::size_t n = t.dim();
    json a = json::array();
    for (std::size_t i = 0; i < n; ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < n; ++j) row.push_back(out(t.product(i, j)));
        a.push_back(std::move(row));
    }
    return a;
}

inline json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw IoError(std::string("syntax: ") + e.what());
    }
}

inline std::size_t read_dim(const json& doc) {
    if (!doc.is_object()) fail("<root>", "expected an object");
    if (!doc.contains("dim")) fail("dim", "missing");
    if (!doc["dim"].is_number_unsigned()) fail("dim", "expected a non-negative integer");
    return doc["dim"].get<std::size_t>();
}

} // namespace io_detail

/// Reads a params block; absent entries are zero.
inline ExtensionParams params_from_json(const nlohmann::ordered_json& j, std::size_t n, const std::string& path) {
    using namespace io_detail;
    if (!j.is_object()) fail(path, "expected an object");
    static const std::vector<std::string> known{"mu", "lambda", "beta", "a0", "b0", "u", "D", "v", "e_bar"};
    for (const auto& [k, _] : j.items())
        if (std::find(known.begin(), known.end(), k) == known.end()) fail(path + "." + k, "unknown parameter");
    auto p = ExtensionParams::zero(n);
    auto at = [&](const char* k) { return path + "." + k; };
    if (j.contains("mu")) p.mu = rat(j["mu"], at("mu"));
    if (j.contains("lambda")) p.lambda = rat(j["lambda"], at("lambda"));
    if (j.contains("beta")) p.beta = rat(j["beta"], at("beta"));
    if (j.contains("a0")) p.a0 = vec(j["a0"], n, at("a0"));
    if (j.contains("b0")) p.b0 = vec(j["b0"], n, at("b0"));
    if (j.contains("u")) p.u = mat(j["u"], n, at("u"));
    if (j.contains("D")) p.D = mat(j["D"], n, at("D"));
    if (j.contains("v")) p.v = mat(j["v"], n, at("v"));
    if (j.contains("e_bar")) p.e_bar = vec(j["e_bar"], n, at("e_bar"));
    return p;
}

inline nlohmann::ordered_json params_to_json(const ExtensionParams& p) {
    using io_detail::out;
    nlohmann::ordered_json j;
    j["mu"] = out(p.mu);
    j["lambda"] = out(p.lambda);
    j["beta"] = out(p.beta);
    j["a0"] = out(p.a0);
    j["b0"] = out(p.b0);
    j["u"] = out(p.u);
    j["D"] = out(p.D);
    j["v"] = out(p.v);
    if (p.e_bar) j["e_bar"] = out(*p.e_bar);
    return j;
}

inline AlgebraFile algebra_from_json(const nlohmann::ordered_json& doc) {
    using namespace io_detail;
    const std::size_t n = read_dim(doc);
    AlgebraFile f;
    if (!doc.contains("basis")) {
        for (std::size_t i = 0; i < n; ++i) f.basis.push_back("e" + std::to_string(i + 1));
    } else {
        array(doc["basis"], n, "basis");
        for (std::size_t i = 0; i < n; ++i) {
            if (!doc["basis"][i].is_string()) fail("basis[" + std::to_string(i) + "]", "expected a name");
            f.basis.push_back(doc["basis"][i].get<std::string>());
        }
    }
    if (!doc.contains("metric")) fail("metric", "missing");
    f.metric = mat(doc["metric"], n, "metric");
    try {
        (void)ScalarProduct(f.metric);
    } catch (const MetricError& e) {
        fail("metric", e.what());
    }
    f.bracket = doc.contains("bracket") ? tensor(doc["bracket"], n, "bracket") : RatTensor3(n);
    f.circ = doc.contains("circ") ? tensor(doc["circ"], n, "circ") : RatTensor3(n);
    if (doc.contains("unit")) f.unit = vec(doc["unit"], n, "unit");
    if (doc.contains("params")) f.params = params_from_json(doc["params"], n, "params");
    for (const auto& [k, _] : doc.items()) {
        static const std::vector<std::string> known{"dim", "basis", "metric", "bracket", "circ", "unit", "params"};
        if (std::find(known.begin(), known.end(), k) == known.end()) fail(k, "unknown field");
    }
    return f;
}

inline AlgebraFile parse_algebra_file(const std::string& text) {
    return algebra_from_json(io_detail::parse_text(text));
}

/// A bare params object for extending an algebra of dimension n.
inline ExtensionParams parse_params_file(const std::string& text, std::size_t n) {
    return params_from_json(io_detail::parse_text(text), n, "params");
}

inline nlohmann::ordered_json algebra_to_json(const FAlgebra& g, const std::optional<ExtensionParams>& params = {}) {
    using io_detail::out;
    nlohmann::ordered_json j;
    j["dim"] = g.dim();
    j["basis"] = g.names();
    j["metric"] = out(g.metric().gram());
    j["bracket"] = out(g.bracket().tensor());
    j["circ"] = out(g.circ().tensor());
    if (g.unit()) j["unit"] = out(*g.unit());
    if (params) j["params"] = params_to_json(*params);
    return j;
}

/// Two-space indented JSON with a trailing newline.
inline std::string write_algebra_file(const FAlgebra& g, const std::optional<ExtensionParams>& params = {}) {
    return algebra_to_json(g, params).dump(2) + "\n";
}

/// Linear combination in basis names, e.g. "-a + 1/2 x"; "0" for the zero vector.
inline std::string format_vector(const RatVector& v, const std::vector<std::string>& names) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_zero()) continue;
        Rat c = v[i];
        if (s.empty()) {
            if (c.sign() < 0) s += "-";
        } else {
            s += c.sign() < 0 ? " - " : " + ";
        }
        c = abs(c);
        if (c != Rat(1)) s += c.str() + " ";
        s += names[i];
    }
    return s.empty() ? "0" : s;
}

inline Variant parse_variant(const std::string& s) {
    if (s == "weakF") return Variant::weakF;
    if (s == "strong") return Variant::strong;
    if (s == "poisson") return Variant::poisson;
    if (s == "flat_unit") return Variant::flat_unit;
    throw IoError("variant: expected weakF, strong, poisson or flat_unit, got '" + s + "'");
}

/**
 * Family file: {"base": <algebra>, "variant": "weakF", "fixed": {<params
 * subset>}, "grid": ["-1","0","1"], "max_candidates": N}. Slots absent from
 * "fixed" are free.
 */
inline FamilySpec parse_family_file(const std::string& text) {
    using namespace io_detail;
    const json doc = parse_text(text);
    if (!doc.is_object()) fail("<root>", "expected an object");
    if (!doc.contains("base")) fail("base", "missing");
    AlgebraFile base_file;
    try {
        base_file = algebra_from_json(doc["base"]);
    } catch (const IoError& e) {
        throw IoError(std::string("base.") + e.what());
    }
    FamilySpec spec{base_file.algebra(), {}, Variant::weakF, {Rat(-1), Rat(0), Rat(1)}, 200000};
    const std::size_t n = base_file.dim();
    if (doc.contains("variant")) {
        if (!doc["variant"].is_string()) fail("variant", "expected a string");
        spec.variant = parse_variant(doc["variant"].get<std::string>());
    }
    if (doc.contains("fixed")) {
        const auto& f = doc["fixed"];
        if (!f.is_object()) fail("fixed", "expected an object");
        auto p = params_from_json(f, n, "fixed");
        auto& fx = spec.fixed;
        if (f.contains("mu")) fx.mu = p.mu;
        if (f.contains("lambda")) fx.lambda = p.lambda;
        if (f.contains("beta")) fx.beta = p.beta;
        if (f.contains("a0")) fx.a0 = p.a0;
        if (f.contains("b0")) fx.b0 = p.b0;
        if (f.contains("u")) fx.u = p.u;
        if (f.contains("D")) fx.D = p.D;
        if (f.contains("v")) fx.v = p.v;
    }
    if (doc.contains("grid")) {
        if (!doc["grid"].is_array()) fail("grid", "expected an array");
        spec.grid.clear();
        for (std::size_t i = 0; i < doc["grid"].size(); ++i)
            spec.grid.push_back(rat(doc["grid"][i], "grid[" + std::to_string(i) + "]"));
    }
    if (doc.contains("max_candidates")) {
        if (!doc["max_candidates"].is_number_unsigned()) fail("max_candidates", "expected a non-negative integer");
        spec.max_candidates = doc["max_candidates"].get<std::size_t>();
    }
    return spec;
}

inline std::string write_family_report(const FamilyReport& rep) {
    nlohmann::ordered_json j;
    j["examined"] = rep.examined;
    j["truncated"] = rep.truncated;
    j["solutions"] = nlohmann::ordered_json::array();
    for (const auto& p : rep.solutions) j["solutions"].push_back(params_to_json(p));
    return j.dump(2) + "\n";
}

} // namespace fflat
