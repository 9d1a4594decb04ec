// Command-line front end. Exit codes: 0 success, 1 a check failed, 2 malformed input.
#include "fflat/catalog.hpp"
#include "fflat/cohomology.hpp"
#include "fflat/doubleext.hpp"
#include "fflat/fstruct.hpp"
#include "fflat/io.hpp"
#include "fflat/search.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

using namespace fflat;

namespace {

constexpr int kOk = 0, kCheckFailed = 1, kMalformed = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path + ": cannot open");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error(out_path + ": cannot write");
    out << text;
}

std::string product_lines(const AlgebraTable& t, const char* op) {
    std::ostringstream ss;
    const auto& names = t.names();
    for (std::size_t i = 0; i < t.dim(); ++i)
        for (std::size_t j = 0; j < t.dim(); ++j) {
            const auto v = t.product(i, j);
            if (!is_zero(v)) ss << names[i] << ' ' << op << ' ' << names[j] << " = " << format_vector(v, names) << '\n';
        }
    return ss.str();
}

std::string checks_text(const std::vector<std::pair<std::string, bool>>& checks) {
    std::ostringstream ss;
    for (const auto& [name, ok] : checks) ss << (ok ? "ok    " : "FAIL  ") << name << '\n';
    return ss.str();
}

int cmd_validate(const AlgebraFile& f) {
    const auto g = f.algebra(Validation::unchecked);
    std::vector<std::pair<std::string, bool>> checks{
        {"bracket antisymmetric", check_identity(g.bracket(), Identity::antisymmetry).all_zero()},
        {"bracket jacobi", check_identity(g.bracket(), Identity::jacobi).all_zero()},
        {"circ commutative", check_identity(g.circ(), Identity::commutativity).all_zero()},
        {"circ associative", check_identity(g.circ(), Identity::associativity).all_zero()},
    };
    if (f.unit) {
        bool ok = true;
        for (std::size_t j = 0; j < g.dim(); ++j)
            ok = ok && g.circ().multiply(*f.unit, unit_vector(g.dim(), j)) == unit_vector(g.dim(), j);
        checks.emplace_back("unit acts as identity", ok);
    }
    if (f.params) {
        for (const auto& r : structural_report(g, *f.params).items()) checks.emplace_back("params " + r.name, r.zero());
    }
    std::cout << checks_text(checks);
    for (const auto& c : checks)
        if (!c.second) return kCheckFailed;
    return kOk;
}

int cmd_classify(const AlgebraFile& f) {
    const auto g = f.algebra(Validation::unchecked);
    const auto flags = classify(g);
    std::cout << flags;
    if (flags.unit) std::cout << "unit: " << format_vector(*flags.unit, g.names()) << '\n';
    std::cout << "bi_nilpotent: " << (is_bi_nilpotent(g.bracket(), g.circ()) ? "true" : "false") << '\n';
    std::cout << "signature: (" << g.metric().signature().n_plus << "," << g.metric().signature().n_minus << ")\n";
    return kOk;
}

int cmd_cocycles(const AlgebraFile& f, const std::string& flavor_name, const std::string& module) {
    const auto g = f.algebra();
    Flavor flavor;
    if (flavor_name == "nijenhuis") flavor = Flavor::nijenhuis;
    else if (flavor_name == "hochschild") flavor = Flavor::hochschild;
    else throw IoError("flavor: expected nijenhuis or hochschild");
    const AlgebraTable& alg = flavor == Flavor::nijenhuis ? g.levi() : g.circ();
    BimoduleSpec bm = module == "trivial" ? BimoduleSpec::trivial(alg, flavor)
                    : module == "left"    ? BimoduleSpec::left_only(alg, flavor)
                    : module == "right"   ? BimoduleSpec::right_only(alg, flavor)
                    : module == "regular" ? BimoduleSpec::regular(alg, flavor)
                                          : throw IoError("module: expected regular, left, right or trivial");
    for (std::size_t p : {1u, 2u}) {
        const auto basis = cocycle_basis(p, bm);
        std::cout << "Z" << p << " dim " << basis.size() << '\n';
        for (const auto& c : basis) {
            std::cout << " ";
            for (const auto& x : c.values()) std::cout << ' ' << x;
            std::cout << '\n';
        }
    }
    return kOk;
}

int cmd_residuals(const AlgebraFile& f, Variant variant) {
    if (!f.params) throw IoError("params: missing");
    const auto rep = residuals(f.algebra(), *f.params, variant);
    std::cout << rep.to_text();
    return rep.all_zero() ? kOk : kCheckFailed;
}

RatVector parse_vector_arg(const std::string& text, std::size_t n) {
    RatVector v;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) v.push_back(Rat::parse(tok));
    if (v.size() != n) throw IoError("--ideal: expected " + std::to_string(n) + " comma-separated rationals");
    return v;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fflat: exact checks and double extensions of flat F-Lie algebras"};
    app.require_subcommand(1);
    std::string input, out, variant_name = "weakF", flavor = "nijenhuis", module = "regular", params_path, ideal, grid;
    std::string fixture_name;
    std::map<std::string, std::string> fixture_params;

    auto with_input = [&](CLI::App* sub) {
        sub->add_option("-i,--input", input, "algebra file")->required();
        return sub;
    };
    auto* validate = with_input(app.add_subcommand("validate", "check the axioms declared by a file"));
    auto* classify_cmd = with_input(app.add_subcommand("classify", "print classification flags"));
    auto* levi = with_input(app.add_subcommand("levi-civita", "print the Levi-Civita product"));
    auto* cocycles = with_input(app.add_subcommand("cocycles", "bases of Z1 and Z2"));
    cocycles->add_option("--flavor", flavor, "nijenhuis (on the Levi-Civita product) or hochschild (on circ)");
    cocycles->add_option("--module", module, "regular, left, right or trivial");
    auto* resid = with_input(app.add_subcommand("residuals", "per-equation residuals of the params block"));
    resid->add_option("--variant", variant_name, "weakF, strong, poisson or flat_unit");
    auto* ext = with_input(app.add_subcommand("extend", "double extension by the params block"));
    ext->add_option("--params", params_path, "params object overriding the input's params block");
    ext->add_option("-o,--out", out, "output file");
    auto* red = with_input(app.add_subcommand("reduce", "quotient by an isotropic ideal"));
    red->add_option("--ideal", ideal, "comma-separated spanning vector (default: first basis vector)");
    red->add_option("-o,--out", out, "output file");
    auto* search = with_input(app.add_subcommand("search", "grid search described by a family file"));
    search->add_option("--variant", variant_name, "overrides the family's variant");
    search->add_option("--grid", grid, "comma-separated rationals overriding the family's grid");
    search->add_option("-o,--out", out, "write solutions as JSON");
    auto* fixture = app.add_subcommand("fixture", "write a catalog algebra");
    fixture->add_option("name", fixture_name, "fixture name")->required();
    for (const char* p : {"lambda", "alpha", "beta", "mu"})
        fixture->add_option(std::string("--") + p, fixture_params[p], std::string("value of ") + p);
    fixture->add_option("-o,--out", out, "output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kMalformed;
    }

    try {
        if (fixture->parsed()) {
            std::map<std::string, Rat> given;
            for (const auto& [k, v] : fixture_params)
                if (!v.empty()) given[k] = Rat::parse(v);
            const auto fx = get_fixture(fixture_name, given);
            emit(write_algebra_file(fx.data), out);
            return kOk;
        }
        if (search->parsed()) {
            auto spec = parse_family_file(read_file(input));
            if (search->count("--variant")) spec.variant = parse_variant(variant_name);
            if (!grid.empty()) {
                spec.grid.clear();
                std::stringstream ss(grid);
                std::string tok;
                while (std::getline(ss, tok, ',')) spec.grid.push_back(Rat::parse(tok));
            }
            const auto rep = solve_family(spec);
            std::cout << "variant " << to_string(spec.variant) << ", free:";
            for (const auto& s : spec.free_slots()) std::cout << ' ' << s;
            std::cout << "\nexamined " << rep.examined << (rep.truncated ? " (truncated)" : "") << ", solutions "
                      << rep.solutions.size() << '\n';
            for (const auto& p : rep.solutions) {
                std::cout << "  mu=" << p.mu << " lambda=" << p.lambda << " beta=" << p.beta << " a0=("
                          << format_vector(p.a0, spec.base.names()) << ") b0=(" << format_vector(p.b0, spec.base.names())
                          << ")\n";
            }
            if (!out.empty()) emit(write_family_report(rep), out);
            return kOk;
        }

        const auto file = parse_algebra_file(read_file(input));
        if (validate->parsed()) return cmd_validate(file);
        if (classify_cmd->parsed()) return cmd_classify(file);
        if (levi->parsed()) {
            std::cout << product_lines(file.algebra(Validation::unchecked).levi(), "*");
            return kOk;
        }
        if (cocycles->parsed()) return cmd_cocycles(file, flavor, module);
        if (resid->parsed()) return cmd_residuals(file, parse_variant(variant_name));
        if (ext->parsed()) {
            auto params = file.params;
            if (!params_path.empty()) params = parse_params_file(read_file(params_path), file.dim());
            if (!params) throw IoError("params: missing");
            try {
                const auto r = extend(file.algebra(), *params);
                emit(write_algebra_file(r.g), out);
            } catch (const ExtensionError& e) {
                std::cerr << "extension failed: " << e.what() << '\n';
                return kCheckFailed;
            }
            return kOk;
        }
        if (red->parsed()) {
            const auto g = file.algebra(Validation::unchecked);
            const RatVector a = ideal.empty() ? unit_vector(g.dim(), 0) : parse_vector_arg(ideal, g.dim());
            try {
                emit(write_algebra_file(reduce(g, a)), out);
            } catch (const ExtensionError& e) {
                std::cerr << "reduction failed: " << e.what() << '\n';
                return kCheckFailed;
            }
            return kOk;
        }
    } catch (const IoError& e) {
        std::cerr << "malformed input: " << e.what() << '\n';
        return kMalformed;
    } catch (const ParseError& e) {
        std::cerr << "malformed input: " << e.what() << '\n';
        return kMalformed;
    } catch (const std::invalid_argument& e) {
        // Axiom, metric, dimension and fixture errors.
        std::cerr << "invalid input: " << e.what() << '\n';
        return kMalformed;
    }
    return kMalformed;
}
