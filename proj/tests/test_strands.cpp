#include <doctest.h>

#include "catdga/strands.hpp"

using namespace catdga;

namespace {

const Field F3 = Field::prime(3);

int gen_id(const StrandAlgebra& a, Subset S, Subset T, std::vector<int> images, Subset dots) {
    std::vector<int> phi;
    for (int t : images) phi.push_back(static_cast<int>(std::find(T.begin(), T.end(), t) - T.begin()));
    auto b = NondecBij::make(S, T, phi);
    REQUIRE(b);
    auto id = a.find(*b, dots);
    REQUIRE(id);
    return *id;
}

bool same_tables(const DgAlgebra& x, const DgAlgebra& y) {
    if (x.dim() != y.dim()) return false;
    for (int i = 0; i < x.dim(); ++i) {
        if (x.diff(i) != y.diff(i)) return false;
        for (int j = 0; j < x.dim(); ++j)
            if (x.product(i, j) != y.product(i, j)) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("subsets and ordering") {
    CHECK(k_subsets(4, 2).size() == 6);
    CHECK(k_subsets(3, 0).size() == 1);
    CHECK(subset_leq({1, 3}, {2, 3}));
    CHECK_FALSE(subset_leq({1, 3}, {1, 2}));
    CHECK(norm({1, 2, 4}) == 7);
}

TEST_CASE("dot lists: canonical order and star") {
    auto c = canonical_dots({4, 2, 3});
    REQUIRE(c);
    CHECK(c->first == Subset{2, 3, 4});
    CHECK(c->second == 1);  // two transpositions
    auto d = canonical_dots({3, 2});
    REQUIRE(d);
    CHECK(d->second == -1);
    CHECK_FALSE(canonical_dots({2, 3, 2}));
}

TEST_CASE("nondecreasing bijections") {
    CHECK_FALSE(NondecBij::make({1, 3}, {1, 2}, {0, 1}));
    auto b = NondecBij::make({1, 2}, {2, 3}, {1, 0});
    REQUIRE(b);
    CHECK(b->increasing_ends() == Subset{3});
    CHECK(b->inversions() == std::vector<std::pair<int, int>>{{2, 3}});
    auto r = b->resolved(2, 3);
    CHECK(r.image(0) == 2);
    CHECK(r.image(1) == 3);
    CHECK(r.increasing_ends() == Subset{2, 3});
}

TEST_CASE("basis enumeration") {
    CHECK(enumerate_basis(1, 1).size() == 1);
    CHECK(enumerate_basis(3, 1).size() == 9);
    CHECK(enumerate_basis(1, 0).size() == 1);
    for (auto [n, k] : {std::pair{3, 2}, {4, 2}, {5, 3}, {6, 3}, {5, 5}})
        CHECK(static_cast<long long>(enumerate_basis(n, k).size()) == count_basis_recursive(n, k));
    for (const auto& g : enumerate_basis(4, 2)) {
        CHECK(subset_leq(g.bij.S, g.bij.T));
        CHECK(std::includes(g.bij.increasing_ends().begin(), g.bij.increasing_ends().end(), g.dots.begin(), g.dots.end()));
    }
}

TEST_CASE("R(3;1) generators and relations") {
    auto a = build_rnk(3, 1, F3);
    const auto& A = a.algebra;
    int bar12 = gen_id(a, {1}, {2}, {2}, {}), dot12 = gen_id(a, {1}, {2}, {2}, {2});
    int bar23 = gen_id(a, {2}, {3}, {3}, {}), dot23 = gen_id(a, {2}, {3}, {3}, {3});
    int bar13 = gen_id(a, {1}, {3}, {3}, {}), dot13 = gen_id(a, {1}, {3}, {3}, {3});
    CHECK(A.product(bar12, bar23) == unit_vector(bar13));
    CHECK(A.product(dot12, bar23) == unit_vector(dot13));
    CHECK(A.product(bar12, dot23) == unit_vector(dot13));
    CHECK(A.product(bar12, dot23) == A.product(dot12, bar23));
    CHECK(A.product(dot12, dot23).empty());
    for (int i = 0; i < A.dim(); ++i) CHECK(A.diff(i).empty());
    CHECK(verify_dga(A).passed());
}

TEST_CASE("R(4;2) and R(4;2)^nil are dgas") {
    auto a = build_rnk(4, 2, F3);
    CHECK(verify_dga(a.algebra).passed());
    auto n = build_rnk_nil(4, 2, F3);
    Report r = verify_dga(n.algebra);
    CHECK(r.passed());
    CHECK(r.find("qdeg additive"));
    CHECK(verify_strand_construction(n).passed());
}

TEST_CASE("embedding stays inside the strand basis, with hbar terms") {
    for (Scalar hb : {1, 2}) {
        StrandOptions o;
        o.hbar = hb;
        auto a = build_rnk(5, 3, Field::prime(7), o);
        CHECK(verify_dga(a.algebra).passed());
        Report r = verify_strand_construction(a);
        CHECK(r.passed());
    }
}

TEST_CASE("literal differential") {
    auto n = build_rnk_nil(5, 3, F3);
    for (int x = 0; x < n.algebra.dim(); ++x) CHECK(n.algebra.diff(x) == literal_differential(n, x, true));
    auto a = build_rnk(4, 2, F3);
    for (int x = 0; x < a.algebra.dim(); ++x) CHECK(a.algebra.diff(x) == literal_differential(a, x, false));
    // a length-two resolution exists for the 3-cycle, but carries no term in the nil d
    int id = gen_id(n, {1, 2, 3}, {3, 4, 5}, {5, 4, 3}, {});
    CHECK(literal_differential(n, id, false) != n.algebra.diff(id));
}

TEST_CASE("q-degrees") {
    auto n = build_rnk_nil(4, 3, F3);
    for (const auto& S : n.subsets) {
        int e = n.algebra.idempotent(n.idempotent_of(S)).front();
        CHECK(n.algebra.basis(e).qdeg == 0);
    }
    auto n5 = build_rnk_nil(5, 2, F3);
    CHECK(n5.algebra.basis(gen_id(n5, {1, 2}, {1, 4}, {1, 4}, {})).qdeg == 2);
    for (int x = 0; x < n5.algebra.dim(); ++x)
        for (const auto& e : n5.algebra.diff(x)) {
            const auto& g = n5.gens[x];
            const auto& h = n5.gens[e.index];
            CHECK(h.cohdeg() == g.cohdeg() + 1);
            CHECK(h.bij.inversions().size() + 1 == g.bij.inversions().size());
        }
}

TEST_CASE("closed-form product on R(4;2)^nil") {
    auto n = build_rnk_nil(4, 2, F3);
    int nonzero = 0;
    for (int x = 0; x < n.algebra.dim(); ++x)
        for (int y = 0; y < n.algebra.dim(); ++y) {
            auto c = closed_form_product(n.gens[x], n.gens[y]);
            const auto& p = n.algebra.product(x, y);
            if (!c) {
                CHECK(p.empty());
                continue;
            }
            ++nonzero;
            REQUIRE(p.size() == 1);
            CHECK(p[0].index == *n.find(c->first.bij, c->first.dots));
            CHECK(p[0].value == F3.reduce(c->second));
        }
    CHECK(nonzero > 0);
}

TEST_CASE("hom spaces and their cohomology") {
    for (auto [n, k] : {std::pair{3, 2}, {4, 2}, {5, 2}, {5, 3}}) {
        CHECK(verify_hom_cohomology(build_rnk(n, k, F3)).passed());
        CHECK(verify_hom_cohomology(build_rnk_nil(n, k, F3)).passed());
    }
    auto a = build_rnk(3, 2, F3);
    auto dims = [&](Subset S, Subset T) {
        int total = 0;
        for (const auto& [d, v] : cohomology_dims(idempotent_truncation(a.algebra, a.idempotent_of(S), a.idempotent_of(T)).complex)) total += v;
        return total;
    };
    CHECK(dims({1, 2}, {1, 2}) == 1);
    CHECK(dims({1, 2}, {2, 3}) == 2);
    CHECK(dims({1, 3}, {1, 2}) == 0);
}

TEST_CASE("idempotent truncation") {
    auto a = build_rnk(3, 1, F3);
    CHECK(idempotent_truncation(a.algebra, a.idempotent_of({1}), a.idempotent_of({3})).ids.size() == 2);
    CHECK(idempotent_truncation(a.algebra, a.idempotent_of({2}), a.idempotent_of({1})).ids.empty());
    for (const auto& S : a.subsets) {
        auto s = idempotent_truncation(a.algebra, a.idempotent_of(S), a.idempotent_of(S));
        REQUIRE(s.ids.size() == 1);
        CHECK(a.algebra.basis(s.ids[0]).cohdeg == 0);
    }
    auto x = idempotent_truncation(a.algebra, 0, 1), y = idempotent_truncation(a.algebra, 1, 2),
         xy = idempotent_truncation(a.algebra, 0, 2);
    // (1|2)(2|3) = (1|3) in local coordinates
    SparseVec got = compose(a.algebra, x, y, xy, unit_vector(0), unit_vector(0));
    CHECK(got == unit_vector(0));
    CHECK_THROWS(compose(a.algebra, x, x, xy, unit_vector(0), unit_vector(0)));
    CHECK_THROWS(idempotent_truncation(a.algebra, 0, 7));
}

TEST_CASE("Massey witnesses") {
    for (auto [n, k] : {std::pair{4, 2}, {5, 2}, {5, 3}}) {
        auto w = massey_nonformality_witness(build_rnk(n, k, F3));
        CHECK(w.report.passed());
        CHECK(w.witness);
        auto wn = massey_nonformality_witness(build_rnk_nil(n, k, F3));
        CHECK(wn.report.passed());
        CHECK(wn.witness);
    }
    auto w1 = massey_nonformality_witness(build_rnk(4, 1, F3));
    CHECK(w1.report.passed());
    CHECK_FALSE(w1.witness);
}

TEST_CASE("regression: the recorded R(4;2) witness") {
    auto a = build_rnk(4, 2, F3);
    CohomologyRing h(a.algebra);
    Element x = unit_vector(gen_id(a, {1, 2}, {1, 3}, {1, 3}, {3}));
    Element y = unit_vector(gen_id(a, {1, 3}, {1, 4}, {1, 4}, {4}));
    Element z = unit_vector(gen_id(a, {1, 4}, {3, 4}, {3, 4}, {3}));
    auto m = massey_triple(h, x, y, z);
    CHECK(m.nontrivial);
}

TEST_CASE("degenerate and shuffled builds") {
    auto a = build_rnk(3, 0, F3);
    CHECK(a.algebra.dim() == 1);
    CHECK(a.algebra.num_idempotents() == 1);
    CHECK(verify_dga(a.algebra).passed());
    CHECK(build_rnk(2, 2, F3).algebra.dim() == 1);
    StrandOptions o;
    o.shuffle_seed = 17;
    CHECK(same_tables(build_rnk(4, 2, F3).algebra, build_rnk(4, 2, F3, o).algebra));
    CHECK(same_tables(build_rnk_nil(5, 3, F3).algebra, build_rnk_nil(5, 3, F3, o).algebra));
    CHECK_THROWS(build_rnk(2, 3, F3));
    StrandOptions z;
    z.hbar = 3;
    CHECK_THROWS(build_rnk(3, 2, F3, z));
}
