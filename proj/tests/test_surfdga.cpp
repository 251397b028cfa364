#include <doctest.h>

#include <iostream>
#include <stdexcept>

#include "catdga/surfdga.hpp"

using namespace catdga;

namespace {

void show_failures(const Report& r) {
    if (!r.passed()) std::cerr << r.summary() << "\n";
}

int letter(const Presentation& p, const std::string& name) {
    for (int l = 0; l < static_cast<int>(p.letters.size()); ++l)
        if (p.letters[l].name == name) return l;
    throw std::logic_error("no letter " + name);
}

Element mul(const PresentedAlgebra& a, const Element& x, const Element& y) { return a.algebra.multiply(x, y); }

}  // namespace

TEST_CASE("rewriting a small presentation") {
    // one vertex, x^2 = 0, xy = yx
    Presentation p;
    p.add_vertex("v");
    int x = p.add_letter({"x", 0, 0, 1, "dot"});
    int y = p.add_letter({"y", 0, 0, 1, "dot"});
    p.add_relation({{x, x}}, "x square");
    p.add_relation({{y, y}}, "y square");
    p.add_relation({{y, x}, {x, y}}, "commute");
    Rewriter rw(p);
    CHECK(rw.normal_words().size() == 4);
    CHECK(rw.reduce({{y, x}}) == Poly{{x, y}});
    CHECK(rw.reduce({{x, y, x}}).empty());
    auto a = build_presented(p, "ext");
    CHECK(a.algebra.dim() == 4);
    CHECK(verify_dga(a.algebra).passed());
}

TEST_CASE("inhomogeneous relations and caps are rejected") {
    Presentation p;
    p.add_vertex("v");
    int x = p.add_letter({"x", 0, 0, 1, "dot"});
    int t = p.add_letter({"t", 0, 0, 0, "crossing"});
    p.add_relation({{x}, {t}}, "mixed");
    CHECK_THROWS_AS(build_presented(p, "bad"), std::invalid_argument);

    Presentation q;
    q.add_vertex("v");
    q.add_letter({"t", 0, 0, 0, "crossing"});
    SurfaceOptions opt;
    opt.limits.max_normal_words = 50;
    CHECK_THROWS_AS(build_presented(q, "free", opt), std::runtime_error);
}

TEST_CASE("annulus examples") {
    auto r = check_annulus_examples();
    show_failures(r);
    CHECK(r.passed());
    CHECK_THROWS_AS(check_annulus_examples(Field::prime(3)), std::invalid_argument);
    CHECK_THROWS_AS(build_annulus_dga(0), std::invalid_argument);
    CHECK_THROWS_AS(build_annulus_dga(2, 0), std::invalid_argument);
}

TEST_CASE("annulus dga against the PBW model") {
    for (int k = 1; k <= 3; ++k) {
        CAPTURE(k);
        auto a = build_annulus_dga(k);
        auto r = compare_annulus_with_pbw(a, k);
        show_failures(r);
        CHECK(r.passed());
        auto v = verify_surface_well_defined(a);
        show_failures(v);
        CHECK(v.passed());
    }
}

TEST_CASE("annulus invariants on normal forms") {
    for (int k = 1; k <= 3; ++k) {
        CAPTURE(k);
        auto a = build_annulus_dga(k);
        const auto& P = a.pres;
        const Element& b = a.letter_image[letter(P, "b")];
        CHECK(mul(a, b, b).empty());
        for (int j = 1; j <= k; ++j) {
            const Element& x = a.letter_image[letter(P, "x" + std::to_string(j))];
            CHECK(mul(a, b, x) == mul(a, x, b));
            CHECK(mul(a, x, x).empty());
        }
        for (int i = 1; i + 1 < k; ++i) {
            const Element& t = a.letter_image[letter(P, "T" + std::to_string(i))];
            CHECK(mul(a, b, t) == mul(a, t, b));
        }
        CHECK(a.algebra.d(b).empty());
    }
}

TEST_CASE("annulus k=3 dimension") {
    auto a = build_annulus_dga(3);
    // 3! * 4^3 from the PBW model
    CHECK(a.algebra.dim() == 384);
}

TEST_CASE("rewrite order does not change the algebra") {
    auto base = build_annulus_dga(2);
    auto torus = build_surface_dga(ArcDiagram::torus(), 1);
    for (std::uint64_t seed : {1ULL, 7ULL, 12345ULL}) {
        SurfaceOptions opt;
        opt.shuffle_seed = seed;
        auto a = build_annulus_dga(2, 1, opt);
        CHECK(a.algebra.dim() == base.algebra.dim());
        CHECK(a.num_rules == base.num_rules);
        for (int i = 0; i < a.algebra.dim(); ++i) CHECK(a.algebra.basis(i).label == base.algebra.basis(i).label);
        auto t = build_surface_dga(ArcDiagram::torus(), 1, opt);
        CHECK(t.algebra.dim() == torus.algebra.dim());
        for (int i = 0; i < t.algebra.dim(); ++i)
            for (int j = 0; j < t.algebra.dim(); ++j) CHECK(t.algebra.product(i, j) == torus.algebra.product(i, j));
    }
}

TEST_CASE("arc diagrams") {
    auto t = ArcDiagram::torus();
    CHECK(t.num_points() == 6);
    CHECK(t.num_arcs() == 4);
    CHECK(t.degree_of(5) == 1);
    CHECK(t.degree_of(3) == 0);
    CHECK(t.primitives().size() == 3);
    CHECK(arc_states(t, 1).size() == 4);
    CHECK(arc_states(t, 2).size() == 8);
    CHECK(state_label({0, 0, 2, 0}) == "a3^2");
    CHECK(state_label({0, 0, 0, 0}) == "1");

    CHECK_THROWS_AS(ArcDiagram::make({}, {}, 0), std::invalid_argument);
    CHECK_THROWS_AS(ArcDiagram::make({3}, {{2, 3}}, 0), std::invalid_argument);
    CHECK_THROWS_AS(ArcDiagram::make({4}, {{1, 2}, {2, 3}}, 0), std::invalid_argument);
    CHECK_THROWS_AS(ArcDiagram::make({1, 2}, {{2, 3}}, 1), std::invalid_argument);
    CHECK_THROWS_AS(surface_presentation(t, 1, Field::prime(3)), std::invalid_argument);
    CHECK_THROWS_AS(build_surface_dga(t, 4), std::invalid_argument);
}

TEST_CASE("annulus through the arc diagram") {
    for (int k = 1; k <= 2; ++k) {
        CAPTURE(k);
        auto a = build_surface_dga(ArcDiagram::annulus(), k);
        auto b = build_annulus_dga(k);
        CHECK(a.algebra.dim() == b.algebra.dim());
        auto r = compare_annulus_with_pbw(a, k);
        show_failures(r);
        CHECK(r.passed());
        CHECK(verify_surface_well_defined(a).passed());
    }
}

TEST_CASE("disk dgas are blocks of the strand algebra") {
    for (int n = 1; n <= 3; ++n)
        for (int k = 1; k <= n; ++k) {
            CAPTURE(n);
            CAPTURE(k);
            auto d = ArcDiagram::disk(n);
            auto a = build_surface_dga(d, k);
            auto st = arc_states(d, k);
            long long total = 0;
            for (const auto& x : st)
                for (const auto& y : st) total += diagram_count(d, x, y);
            CHECK(a.algebra.dim() == total);
            CHECK(verify_dga(a.algebra).passed());
        }
}

TEST_CASE("torus census") {
    auto rows = generator_census(ArcDiagram::torus(), 1);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].kind == "idempotent");
    CHECK(rows[0].count == 4);
    CHECK(rows[1].kind == "dot");
    CHECK(rows[1].labels == std::vector<std::string>{"xi(a3;a3)_1", "xi(a4;a4)_1"});
    CHECK(rows[2].count == 3);
    CHECK(rows[2].degrees == std::vector<int>{0, 0, 1});  // b_p1, b_p3 at a3, then b_p2 at a4
    auto rows2 = generator_census(ArcDiagram::torus(), 2);
    CHECK(rows2[0].count == 8);
    CHECK(rows2[1].kind == "crossing");
}

TEST_CASE("surface examples") {
    auto r = check_surface_examples();
    show_failures(r);
    CHECK(r.passed());
    REQUIRE(r.find("torus k=2 well defined"));
    CHECK(r.find("torus k=2 well defined")->status == Status::pass);
}
