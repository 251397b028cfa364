#include <doctest.h>

#include <iostream>

#include "catdga/catsl2.hpp"

using namespace catdga;

namespace {

const Field F3 = Field::prime(3);

LaurentPoly q(int p) { return LaurentPoly::q(p); }

void show_failures(const Report& r) {
    if (!r.passed()) std::cerr << r.summary() << "\n";
}

}  // namespace

TEST_CASE("subset state indexing") {
    auto s = SubsetState::make(4, {1, 2, 4});
    CHECK(s.s(1) == 4);
    CHECK(s.s(3) == 1);
    CHECK(s.sc(1) == 3);
    CHECK(s.f(1) == Subset{1, 2});
    CHECK(s.f(2) == Subset{1, 4});
    CHECK(s.f(3) == Subset{2, 4});
    CHECK(s.e(1) == Subset{1, 2, 3, 4});
    CHECK(s.m(1) == 0);
    CHECK(s.m(3) == -1);
    auto t = SubsetState::make(5, {3, 4});
    CHECK(t.l(1) == 0);
    CHECK(t.l(2) == -1);
    CHECK(t.l(3) == 0);
    CHECK(to_bits(5, {3, 4}) == "00110");
    CHECK(from_bits("1101") == Subset{1, 2, 4});
    CHECK_THROWS(SubsetState::make(3, {4}));
    CHECK_THROWS(from_bits("12"));
}

TEST_CASE("classical action on V^2") {
    auto a = classical_ef_action(2);
    TensorVector want{{{1}, q(0)}, {{2}, q(-1)}};
    CHECK(a.F.at({1, 2}) == want);
    CHECK(a.E.at({}) == want);
    auto b = coproduct_ef_action(2);
    CHECK(b.F.at({1, 2}) == want);
    CHECK(b.E.at({}) == want);
}

TEST_CASE("classical action agrees with the coproduct and satisfies the sl2 relation") {
    for (int n = 1; n <= 5; ++n) {
        auto r = verify_classical_action(n);
        show_failures(r);
        CHECK(r.passed());
    }
}

TEST_CASE("bimodule dimensions") {
    auto e = build_bimodule(1, 0, BimoduleKind::E, F3);
    CHECK(e.ids.size() == 2);
    CHECK(e.report.passed());
    auto f = build_bimodule(1, 1, BimoduleKind::F, F3);
    CHECK(f.ids.size() == 2);
    CHECK(f.report.passed());
}

TEST_CASE("bimodule closure and Leibniz for n <= 4") {
    for (int n = 1; n <= 4; ++n)
        for (int k = 0; k <= n; ++k) {
            if (k <= n - 1) {
                auto b = build_bimodule(n, k, BimoduleKind::E, F3);
                show_failures(b.report);
                CHECK(b.report.passed());
            }
            if (k >= 1) {
                auto b = build_bimodule(n, k, BimoduleKind::F, F3);
                show_failures(b.report);
                CHECK(b.report.passed());
            }
        }
}

TEST_CASE("F functor on all projectives, n <= 4") {
    for (int n = 1; n <= 4; ++n)
        for (int k = 1; k <= n; ++k) {
            auto b = build_bimodule(n, k, BimoduleKind::F, F3);
            for (const auto& S : k_subsets(n, k)) {
                auto r = functor_F_on_projective(b, S);
                show_failures(r.report);
                CHECK(r.report.passed());
            }
        }
}

TEST_CASE("E functor on all projectives, n <= 4") {
    for (int n = 1; n <= 4; ++n)
        for (int k = 0; k < n; ++k) {
            auto b = build_bimodule(n, k, BimoduleKind::E, F3);
            for (const auto& S : k_subsets(n, k)) {
                auto r = functor_E_on_projective(b, S);
                show_failures(r.report);
                CHECK(r.report.passed());
            }
        }
}

TEST_CASE("K0 for n <= 4") {
    for (int n = 1; n <= 4; ++n) {
        auto r = verify_k0(n, F3);
        show_failures(r);
        CHECK(r.passed());
    }
}

TEST_CASE("F on P(1101) reproduces the worked example") {
    auto r = check_f_example(F3);
    show_failures(r);
    CHECK(r.passed());
    CHECK(r.find("printed +r_{1,2}")->status == Status::pass);
}

TEST_CASE("F for k = 1 has two objects and no arrows") {
    auto b = build_bimodule(3, 1, BimoduleKind::F, F3);
    for (int s = 1; s <= 3; ++s) {
        auto r = functor_F_on_projective(b, {s});
        auto st = SubsetState::make(3, {s});
        REQUIRE(r.complex.objects.size() == 2);
        CHECK(r.complex.entries.empty());
        CHECK(r.complex.objects[0].b == st.m(1) + 1);
        CHECK(r.complex.objects[1].a == -1);
        CHECK(r.complex.objects[1].b == st.m(1) - 1);
    }
}

TEST_CASE("F and E at n = 1, 2 by hand") {
    auto a0 = build_rnk_nil(1, 0, F3);
    auto c = theorem_complex_F(a0, SubsetState::make(1, {1}));
    auto ch = euler_char_q(c);
    REQUIRE(ch.size() == 1);
    CHECK(ch.begin()->second == q(1) - q(-1));

    auto a1 = build_rnk_nil(2, 1, F3);
    auto e = theorem_complex_E(a1, SubsetState::make(2, {}));
    auto ech = euler_char_q(e);
    CHECK(ech.at(a1.idempotent_of({1})) == q(1) - q(-1));
    CHECK(ech.at(a1.idempotent_of({2})) == q(0) - q(-2));

    auto a2 = build_rnk_nil(2, 0, F3);
    auto f2 = theorem_complex_F(a2, SubsetState::make(2, {1}));
    CHECK(euler_char_q(f2).begin()->second == q(2) - q(0));
}

TEST_CASE("E on P(00110) in R(5;2) follows the displayed differentials") {
    auto b = build_bimodule(5, 2, BimoduleKind::E, F3);
    CHECK(b.report.passed());
    auto r = functor_E_on_projective(b, {3, 4});
    show_failures(r.report);
    CHECK(r.report.passed());
    const auto& R = *b.right;
    std::vector<std::string> labels;
    for (const auto& o : r.complex.objects) labels.push_back(o.label);
    CHECK(labels == std::vector<std::string>{"P(10110){1}", "P(10110)[-1]{-1}", "P(01110){0}", "P(01110)[-1]{-2}",
                                             "P(00111){1}", "P(00111)[-1]{-1}"});
    auto entry = [&](int s, int t) -> std::string {
        for (const auto& e : r.complex.entries)
            if (e.source == s && e.target == t) return R.algebra.format(e.x);
        return "none";
    };
    // (1,0) -> (r^l, -r) and (0,1) -> (0, -r^+) for the adjacent pair
    CHECK(entry(2, 0) == "(S=1,3,4;T=2,3,4;phi=2,3,4;D=2)");
    CHECK(entry(2, 1) == "2*(S=1,3,4;T=2,3,4;phi=2,3,4;D=)");
    CHECK(entry(3, 1) == "2*(S=1,3,4;T=2,3,4;phi=2,3,4;D=2)");
    CHECK(entry(3, 0) == "none");
    // (1,0) -> (r^l, -r) and (0,1) -> (r^lh, -r^h) for three moving strands
    CHECK(entry(4, 2) == "(S=2,3,4;T=3,4,5;phi=3,4,5;D=3)");
    CHECK(entry(4, 3) == "2*(S=2,3,4;T=3,4,5;phi=3,4,5;D=)");
    CHECK(entry(5, 3) == "2*(S=2,3,4;T=3,4,5;phi=3,4,5;D=5)");
    CHECK(entry(5, 2) == "(S=2,3,4;T=3,4,5;phi=3,4,5;D=3,5)");
}

TEST_CASE("tensor with the identity bimodule is the projective") {
    auto a = std::make_shared<const StrandAlgebra>(build_rnk_nil(3, 2, F3));
    auto b = identity_bimodule(a);
    CHECK(b.report.passed());
    for (int e = 0; e < static_cast<int>(a->subsets.size()); ++e) {
        auto m = module_tensor_bimodule(b, e);
        CHECK(m.ids == a->algebra.left_slice(e));
    }
    CHECK_THROWS_AS(module_tensor_bimodule(b, 99), std::out_of_range);
}

TEST_CASE("P(1101) tensor F has the dimension of the six projectives") {
    auto b = build_bimodule(4, 3, BimoduleKind::F, F3);
    auto m = module_tensor_bimodule(b, b.left->idempotent_of({1, 2, 4}));
    int total = 0;
    for (const auto& T : std::vector<Subset>{{1, 2}, {1, 4}, {2, 4}})
        total += 2 * static_cast<int>(b.right->algebra.left_slice(b.right->idempotent_of(T)).size());
    CHECK(static_cast<int>(m.ids.size()) == total);
    CHECK(euler_char(cohomology_dims(m.complex)) ==
          euler_char(total_complex_cohomology(functor_F_on_projective(b, {1, 2, 4}).complex, b.right->algebra)));
}

TEST_CASE("functor inputs are validated") {
    auto b = build_bimodule(2, 1, BimoduleKind::F, F3);
    CHECK_THROWS(functor_F_on_projective(b, {1, 2}));
    CHECK_THROWS(functor_E_on_projective(b, {1}));
    CHECK_THROWS(build_bimodule(2, 2, BimoduleKind::E, F3));
    CHECK_THROWS(build_bimodule(2, 0, BimoduleKind::F, F3));
}

TEST_CASE("a sign flip in the F complex is caught") {
    auto b = build_bimodule(3, 3, BimoduleKind::F, F3);
    auto r = functor_F_on_projective(b, {1, 2, 3});
    REQUIRE(!r.complex.entries.empty());
    auto c = r.complex;
    c.entries[0].x = scale(F3, 2, c.entries[0].x);
    CHECK_FALSE(complex_verify(c, b.right->algebra).passed());
}
