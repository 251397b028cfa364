// catdga command line: build, serialize and check the algebras.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "catdga/catsl2.hpp"
#include "catdga/cohomology.hpp"
#include "catdga/hecke.hpp"
#include "catdga/nilhecke.hpp"
#include "catdga/serialize.hpp"
#include "catdga/strands.hpp"
#include "catdga/suites.hpp"
#include "catdga/surfdga.hpp"

using namespace catdga;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Field parse_field(const std::string& s) {
    if (s == "rational" || s == "Q" || s == "0") return Field::rational();
    long long p = 0;
    try {
        std::size_t used = 0;
        p = std::stoll(s, &used);
        if (used != s.size()) throw UsageError("bad field '" + s + "'");
    } catch (const std::logic_error&) {
        throw UsageError("bad field '" + s + "'");
    }
    if (!is_prime_number(p)) throw UsageError("field characteristic " + s + " is not prime");
    return Field::prime(p);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write " + path);
    out << text;
}

int emit(const Report& r) {
    std::cout << canonical_dump(report_to_json(r));
    return r.passed() ? 0 : 1;
}

int emit_algebra(const DgAlgebra& a, const std::string& out) {
    write_output(out, canonical_dump(algebra_to_json(a)));
    if (!out.empty() && out != "-") std::cout << a.name() << ": dim " << a.dim() << " -> " << out << "\n";
    return 0;
}

DgAlgebra load(const std::string& path) { return algebra_from_json(parse_document(read_file(path))); }

std::optional<std::uint64_t> seed_of(long long s) {
    if (s < 0) return std::nullopt;
    return static_cast<std::uint64_t>(s);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dg algebras of strands, Hecke and surface diagrams"};
    app.require_subcommand(1);

    std::string field = "3", out, algebra_path, diagram_path, checks, type, bits, suite_name;
    long long hbar = 1, seed = -1;
    int k = 1, n = 1, qcut = 0;
    bool nil = false, search = false, list = false, as_json = false;

    auto* brk = app.add_subcommand("build-rk", "build R_k or R_k^nil");
    brk->add_option("--k", k)->required();
    brk->add_flag("--nil", nil);
    brk->add_option("--field", field);
    brk->add_option("--hbar", hbar);
    brk->add_option("--out", out);
    brk->add_option("--seed", seed, "shuffle internal orders");

    auto* brnk = app.add_subcommand("build-rnk", "build R(n;k) or R(n;k)^nil");
    brnk->add_option("--n", n)->required();
    brnk->add_option("--k", k)->required();
    brnk->add_flag("--nil", nil);
    brnk->add_option("--field", field);
    brnk->add_option("--hbar", hbar);
    brnk->add_option("--out", out);
    brnk->add_option("--seed", seed);

    auto* bsurf = app.add_subcommand("build-surface", "build the surface dga of an arc diagram (over F_2)");
    bsurf->add_option("--diagram", diagram_path)->required();
    bsurf->add_option("--k", k)->required();
    bsurf->add_option("--out", out);
    bsurf->add_option("--seed", seed);

    auto* ver = app.add_subcommand("verify", "check the dga axioms");
    ver->add_option("--algebra", algebra_path)->required();
    ver->add_option("--checks", checks, "subset of dsq,leibniz,assoc,grading,unit");

    auto* coh = app.add_subcommand("cohomology", "cohomology dimensions");
    coh->add_option("--algebra", algebra_path)->required();
    coh->add_flag("--json", as_json);

    auto* mas = app.add_subcommand("massey", "Massey triple products");
    mas->add_option("--algebra", algebra_path)->required();
    mas->add_flag("--search", search, "list every nontrivial triple, not just the first");

    auto* dual = app.add_subcommand("duality", "Koszul duality for R_k^nil");
    dual->add_option("--k", k)->required();
    dual->add_option("--qcut", qcut);

    auto* fun = app.add_subcommand("functor", "P(S) tensor E or F");
    fun->add_option("--type", type)->required()->check(CLI::IsMember({"E", "F"}));
    fun->add_option("--n", n)->required();
    fun->add_option("--S", bits)->required();

    auto* kz = app.add_subcommand("k0", "K_0 of E and F");
    kz->add_option("--n", n)->required();

    auto* su = app.add_subcommand("suite", "named acceptance suite");
    su->add_option("--name", suite_name);
    su->add_flag("--list", list);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*brk) {
            Field f = parse_field(field);
            BuildOptions opt{seed_of(seed), false};
            return emit_algebra(nil ? build_rk_nil(k, f, opt) : build_rk(k, f, hbar, opt), out);
        }
        if (*brnk) {
            Field f = parse_field(field);
            StrandOptions opt{nil ? 0 : hbar, seed_of(seed)};
            return emit_algebra(nil ? build_rnk_nil(n, k, f, opt).algebra : build_rnk(n, k, f, opt).algebra, out);
        }
        if (*bsurf) {
            auto d = diagram_from_json(parse_document(read_file(diagram_path)));
            SurfaceOptions opt;
            opt.shuffle_seed = seed_of(seed);
            return emit_algebra(build_surface_dga(d, k, opt).algebra, out);
        }
        if (*ver) {
            VerifyOptions opt;
            if (!checks.empty()) {
                opt.assoc = opt.unit = opt.grading = opt.dsq = opt.leibniz = false;
                std::stringstream ss(checks);
                std::string c;
                while (std::getline(ss, c, ',')) {
                    if (c == "assoc") opt.assoc = true;
                    else if (c == "unit") opt.unit = true;
                    else if (c == "grading") opt.grading = true;
                    else if (c == "dsq") opt.dsq = true;
                    else if (c == "leibniz") opt.leibniz = true;
                    else throw UsageError("unknown check '" + c + "'");
                }
            }
            return emit(verify_dga(load(algebra_path), opt));
        }
        if (*coh) {
            auto a = load(algebra_path);
            if (!a.field().is_prime()) throw UsageError("cohomology needs a prime field");
            auto dims = cohomology_dims(a);
            std::map<int, int> by;
            for (const auto& [bd, d] : dims) by[bd.first] += d;
            if (as_json) {
                nlohmann::json j;
                j["algebra"] = a.name();
                nlohmann::json t = nlohmann::json::array();
                for (const auto& [bd, d] : dims) t.push_back({bd.first, bd.second, d});
                j["bidegrees"] = t;
                nlohmann::json c = nlohmann::json::object();
                for (const auto& [deg, d] : by) c[std::to_string(deg)] = d;
                j["by_cohdeg"] = c;
                std::cout << canonical_dump(j);
                return 0;
            }
            std::cout << "cohdeg qdeg dim\n";
            for (const auto& [bd, d] : dims) std::cout << bd.first << " " << bd.second << " " << d << "\n";
            int top = by.empty() ? -1 : by.rbegin()->first;
            std::string line;
            for (int c = 0; c <= top; ++c) line += (c ? "," : "") + std::to_string(by.count(c) ? by[c] : 0);
            std::cout << "by cohdeg: (" << line << ")\n";
            return 0;
        }
        if (*mas) {
            auto a = load(algebra_path);
            if (!a.field().is_prime()) throw UsageError("Massey products need a prime field");
            CohomologyRing h(a);
            MasseySearchOptions opt;
            if (search) opt.max_witnesses = static_cast<std::size_t>(-1);
            auto found = massey_search(h, opt);
            Report r;
            r.suite = "massey";
            r.parameters = {{"algebra", a.name()}, {"dim H", std::to_string(h.dim())}};
            for (const auto& w : found)
                r.info("<" + a.format(h.classes()[w.a].rep) + ", " + a.format(h.classes()[w.b].rep) + ", " + a.format(h.classes()[w.c].rep) + ">",
                       a.format(w.result.representative) + " (indeterminacy dim " + std::to_string(w.result.indeterminacy_dim) + ")");
            r.info("nontrivial triples found", std::to_string(found.size()));
            return emit(r);
        }
        if (*dual) {
            if (qcut == 0) qcut = default_qcut(k);
            return emit(verify_koszul_duality(k, qcut, Field::prime(3)));
        }
        if (*fun) {
            for (char c : bits)
                if (c != '0' && c != '1') throw UsageError("S must be a bit string");
            if (static_cast<int>(bits.size()) != n) throw UsageError("S must have n characters");
            Subset S = from_bits(bits);
            int kk = static_cast<int>(S.size());
            const Field F3 = Field::prime(3);
            if (type == "F") {
                if (kk == 0) throw UsageError("F needs a nonempty S");
                return emit(functor_F_on_projective(build_bimodule(n, kk, BimoduleKind::F, F3), S).report);
            }
            if (kk == n) throw UsageError("E needs S to miss a point");
            return emit(functor_E_on_projective(build_bimodule(n, kk, BimoduleKind::E, F3), S).report);
        }
        if (*kz) return emit(verify_k0(n, Field::prime(3)));
        if (*su) {
            if (list || suite_name.empty()) {
                for (const auto& s : suites()) std::cout << s.number << " " << s.name << ": " << s.title << "\n";
                return suite_name.empty() && !list ? 2 : 0;
            }
            return emit(run_suite(suite_name));
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DocumentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
