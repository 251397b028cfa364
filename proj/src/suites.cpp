#include "catdga/suites.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "catdga/catsl2.hpp"
#include "catdga/cohomology.hpp"
#include "catdga/hecke.hpp"
#include "catdga/nilhecke.hpp"
#include "catdga/serialize.hpp"
#include "catdga/strands.hpp"
#include "catdga/surfdga.hpp"

namespace catdga {

namespace {

const Field F3 = Field::prime(3);
const Field F5 = Field::prime(5);

long long factorial(int k) { return k <= 1 ? 1 : k * factorial(k - 1); }

std::string tag(const std::string& what, int n, int k) { return what + "(" + std::to_string(n) + ";" + std::to_string(k) + ")"; }

// One line per algebra: pass if every verify_dga check passes.
void add_verify(Report& r, const std::string& name, const Report& v) {
    const Check* bad = nullptr;
    for (const auto& c : v.checks)
        if (c.status == Status::fail && !bad) bad = &c;
    r.add(name + " is a dga", !bad, "pass", bad ? bad->name + ": " + bad->got : "pass", Provenance::derived);
}

Report dimensions() {
    Report r;
    for (int k = 1; k <= 4; ++k) {
        long long want = (1LL << k) * factorial(k);
        auto a = build_rk(k, F3, 1);
        r.add("dim R_" + std::to_string(k), a.dim() == want, std::to_string(want), std::to_string(a.dim()), Provenance::paper);
        auto b = build_rk_nil(k, F3);
        r.add("dim R_" + std::to_string(k) + "^nil", b.dim() == want, std::to_string(want), std::to_string(b.dim()), Provenance::paper);
    }
    return r;
}

Report well_defined() {
    Report r;
    for (int k = 1; k <= 4; ++k) {
        add_verify(r, "R_" + std::to_string(k), verify_dga(build_rk(k, F3, 1)));
        add_verify(r, "R_" + std::to_string(k) + "^nil", verify_dga(build_rk_nil(k, F3)));
    }
    for (int n = 1; n <= 5; ++n)
        for (int k = 1; k <= std::min(n, 3); ++k) {
            add_verify(r, tag("R", n, k), verify_dga(build_rnk(n, k, F3).algebra));
            add_verify(r, tag("R", n, k) + "^nil", verify_dga(build_rnk_nil(n, k, F3).algebra));
        }
    for (int k = 1; k <= 2; ++k) {
        auto a = build_annulus_dga(k);
        auto v = verify_surface_well_defined(a);
        add_verify(r, "annulus k=" + std::to_string(k), v);
    }
    for (int k = 1; k <= 2; ++k) {
        auto a = build_surface_dga(ArcDiagram::torus(), k);
        add_verify(r, "torus k=" + std::to_string(k), verify_surface_well_defined(a));
    }
    return r;
}

Report rk_cohomology() {
    Report r;
    for (int k = 1; k <= 4; ++k) {
        auto a = build_rk(k, F3, 1);
        int total = 0;
        for (const auto& [bd, d] : cohomology_dims(a)) total += d;
        r.add("dim H(R_" + std::to_string(k) + ")", total == (1 << k), std::to_string(1 << k), std::to_string(total), Provenance::paper);
    }
    {
        auto a = build_rk(2, F3, 1);
        std::vector<int> degs;
        for (const auto& [bd, d] : cohomology_dims(a))
            for (int t = 0; t < d; ++t) degs.push_back(bd.first);
        std::sort(degs.begin(), degs.end());
        std::string got;
        for (int d : degs) got += (got.empty() ? "" : ",") + std::to_string(d);
        r.add("H(R_2) basis degrees", got == "0,1,1,2", "0,1,1,2", got, Provenance::paper);
    }
    for (int k = 1; k <= 4; ++k) {
        auto v = verify_h_closed(k, F3, 1);
        bool ok = true;
        for (const auto& c : v.checks)
            if (c.name.rfind("d(h_{" + std::to_string(k) + ",", 0) == 0 && c.status == Status::fail) ok = false;
        r.add("h_{" + std::to_string(k) + ",i} closed for 1 <= i <= " + std::to_string(k), ok, "closed", ok ? "closed" : "not closed",
              Provenance::paper);
    }
    for (const Field& f : {F3, F5})
        for (int k = 1; k <= 4; ++k) {
            auto v = verify_formality_conjecture(k, false, f, 1);
            std::string pre = "over " + f.describe() + " k=" + std::to_string(k) + ": ";
            for (const char* name : {"monomials in [h_{k,i}] form a basis of H", "[h_i][h_j] + [h_j][h_i] = 0 in H"}) {
                const Check* c = v.find(name);
                r.add(pre + name, c && c->status == Status::pass, c ? c->expected : "present", c ? c->got : "missing", Provenance::paper);
            }
        }
    return r;
}

Report formality() {
    Report r;
    for (int k = 2; k <= 4; ++k) {
        auto v = verify_formality_conjecture(k, false, F3, 1);
        for (const auto& c : v.checks)
            if (c.name.rfind("chain level", 0) == 0) {
                Check x = c;
                x.name = "k=" + std::to_string(k) + " " + c.name;
                r.checks.push_back(x);
            }
    }
    return r;
}

Report koszul() {
    Report r;
    for (int k = 1; k <= 3; ++k) r.merge(verify_koszul_duality(k, default_qcut(k), F3), "k=" + std::to_string(k) + ": ");
    return r;
}

Report hom_cohomology() {
    Report r;
    for (int n = 1; n <= 5; ++n)
        for (int k = 1; k <= std::min(n, 3); ++k) {
            auto v = verify_hom_cohomology(build_rnk(n, k, F3));
            const Check* bad = nullptr;
            int passed = 0;
            for (const auto& c : v.checks) {
                if (c.status == Status::fail && !bad) bad = &c;
                if (c.status == Status::pass) ++passed;
            }
            r.add(tag("H(1_S R", n, k) + " 1_T) = 2^m(S,T) or 0", !bad, "all slices",
                  bad ? bad->name + ": " + bad->got : std::to_string(passed) + " checks", Provenance::paper);
        }
    return r;
}

Report massey() {
    Report r;
    for (auto [n, k] : {std::pair{4, 2}, std::pair{5, 2}, std::pair{5, 3}}) {
        auto w = massey_nonformality_witness(build_rnk(n, k, F3));
        r.merge(w.report, tag("R", n, k) + ": ");
    }
    return r;
}

Report functor_f() {
    Report r;
    for (int n = 1; n <= 4; ++n)
        for (int k = 1; k <= n; ++k) {
            auto b = build_bimodule(n, k, BimoduleKind::F, F3);
            for (const auto& S : k_subsets(n, k)) {
                auto res = functor_F_on_projective(b, S);
                const Check* bad = nullptr;
                for (const auto& c : res.report.checks)
                    if (c.status == Status::fail && !bad) bad = &c;
                r.add("P(" + to_bits(n, S) + ") (x) F: isomorphism to the theorem complex", !bad, "pass",
                      bad ? bad->name + ": " + bad->got : "pass", Provenance::paper);
            }
        }
    r.merge(check_f_example(F3), "P(1101) example: ");
    return r;
}

Report functor_e() {
    Report r;
    auto run = [&](const BimoduleSlice& b, const Subset& S) {
        auto res = functor_E_on_projective(b, S);
        const Check* bad = nullptr;
        for (const auto& c : res.report.checks)
            if (c.status == Status::fail && !bad) bad = &c;
        r.add("P(" + to_bits(b.n, S) + ") (x) E: H(plain) = H(theorem complex)", !bad, "pass", bad ? bad->name + ": " + bad->got : "pass",
              Provenance::paper);
    };
    for (int n = 1; n <= 4; ++n)
        for (int k = 0; k < n; ++k) {
            auto b = build_bimodule(n, k, BimoduleKind::E, F3);
            for (const auto& S : k_subsets(n, k)) run(b, S);
        }
    run(build_bimodule(5, 2, BimoduleKind::E, F3), {3, 4});
    return r;
}

Report k0() {
    Report r;
    for (int n = 1; n <= 4; ++n) r.merge(verify_k0(n, F3), "n=" + std::to_string(n) + ": ");
    return r;
}

Report surfaces() {
    Report r;
    r.merge(check_annulus_examples(), "annulus: ");
    r.merge(check_surface_examples(), "surface: ");
    return r;
}

Report determinism() {
    Report r;
    const std::vector<std::uint64_t> seeds = {1, 2, 977};
    auto same = [&](const std::string& name, const std::function<DgAlgebra(std::optional<std::uint64_t>)>& build) {
        std::string base = canonical_dump(algebra_to_json(build(std::nullopt)));
        int equal = 0;
        for (auto s : seeds)
            if (canonical_dump(algebra_to_json(build(s))) == base) ++equal;
        bool ok = equal == static_cast<int>(seeds.size());
        r.add(name + ": shuffled rebuilds give identical JSON", ok, std::to_string(seeds.size()) + " of " + std::to_string(seeds.size()),
              std::to_string(equal) + " of " + std::to_string(seeds.size()), Provenance::derived);
    };
    same("R_3", [](auto s) { return build_rk(3, F3, 1, BuildOptions{s, false}); });
    same("R_3^nil", [](auto s) { return build_rk_nil(3, F3, BuildOptions{s, false}); });
    same("R(4;2)", [](auto s) { return build_rnk(4, 2, F3, StrandOptions{1, s}).algebra; });
    same("R(4;2)^nil", [](auto s) { return build_rnk_nil(4, 2, F3, StrandOptions{0, s}).algebra; });
    same("annulus k=2", [](auto s) {
        SurfaceOptions o;
        o.shuffle_seed = s;
        return build_annulus_dga(2, 1, o).algebra;
    });
    same("torus k=1", [](auto s) {
        SurfaceOptions o;
        o.shuffle_seed = s;
        return build_surface_dga(ArcDiagram::torus(), 1, o).algebra;
    });
    // the same document read back
    auto a = build_rnk(3, 2, F3);
    std::string text = canonical_dump(algebra_to_json(a.algebra));
    bool round = canonical_dump(algebra_to_json(algebra_from_json(parse_document(text)))) == text;
    r.add("R(3;2) JSON round trip", round, "identical", round ? "identical" : "differs", Provenance::trivial);
    return r;
}

struct SuiteEntry {
    SuiteInfo info;
    Report (*run)();
};

const std::vector<SuiteEntry>& table() {
    static const std::vector<SuiteEntry> t = {
        {{1, "dimensions", "dim R_k = 2^k k!"}, dimensions},
        {{2, "well-defined", "verify_dga on all built algebras"}, well_defined},
        {{3, "rk-cohomology", "cohomology of R_k"}, rk_cohomology},
        {{4, "formality", "chain-level formality probe"}, formality},
        {{5, "koszul", "Koszul duality"}, koszul},
        {{6, "hom-cohomology", "hom cohomology of R(n;k)"}, hom_cohomology},
        {{7, "massey", "non-formality witnesses"}, massey},
        {{8, "functor-f", "P(S) (x) F"}, functor_f},
        {{9, "functor-e", "P(S) (x) E"}, functor_e},
        {{10, "k0", "decategorification"}, k0},
        {{11, "surfaces", "annulus and torus examples"}, surfaces},
        {{12, "determinism", "shuffled rebuilds"}, determinism},
    };
    return t;
}

}  // namespace

const std::vector<SuiteInfo>& suites() {
    static const std::vector<SuiteInfo> s = [] {
        std::vector<SuiteInfo> out;
        for (const auto& e : table()) out.push_back(e.info);
        return out;
    }();
    return s;
}

Report run_criterion(int number) {
    for (const auto& e : table())
        if (e.info.number == number) {
            Report r = e.run();
            r.suite = e.info.name;
            r.parameters.insert(r.parameters.begin(), {"criterion", std::to_string(number)});
            return r;
        }
    throw std::invalid_argument("no criterion " + std::to_string(number));
}

Report run_suite(const std::string& name) {
    for (const auto& e : table())
        if (e.info.name == name) return run_criterion(e.info.number);
    throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace catdga
