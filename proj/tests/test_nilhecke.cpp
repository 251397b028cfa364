#include <doctest.h>

#include "catdga/nilhecke.hpp"

using namespace catdga;

namespace {

const Field F3 = Field::prime(3);

// Brute-force (x_i - x_{i+1}) * dd(p) == p - s_i p.
bool dd_oracle(const Field& f, int i, const MultiPoly& p) {
    int n = p.nvars();
    MultiPoly diff = MultiPoly::variable(n, i).plus(f, MultiPoly::variable(n, i + 1), f.neg(1));
    MultiPoly lhs = diff.times(f, divided_difference(f, i, p));
    MultiPoly rhs = p.plus(f, p.swapped(i), f.neg(1));
    return lhs == rhs;
}

KoszulVec poly_vec(const MultiPoly& p) {
    KoszulVec v;
    for (const auto& [e, c] : p.terms()) v[{0, e}] = c;
    return v;
}

std::map<Bidegree, int> lambda_pattern(int k) {
    std::map<Bidegree, int> out;
    for (unsigned s = 0; s < (1u << k); ++s) {
        int q = 0;
        for (int i = 1; i <= k; ++i)
            if (s & (1u << (i - 1))) q -= 2 * i;
        ++out[{std::popcount(s), q}];
    }
    return out;
}

}  // namespace

TEST_CASE("divided differences: small values") {
    MultiPoly x1 = MultiPoly::variable(2, 1), x2 = MultiPoly::variable(2, 2);
    CHECK(divided_difference(F3, 1, x1) == MultiPoly::constant(2, 1));
    CHECK(divided_difference(F3, 1, x2) == MultiPoly::constant(2, 2));
    CHECK(divided_difference(F3, 1, x1.times(F3, x2)).is_zero());
    CHECK_THROWS(divided_difference(F3, 2, x1));
}

TEST_CASE("divided differences agree with the defining identity") {
    Field f = Field::prime(7);
    for (int n = 2; n <= 3; ++n)
        for (int deg = 0; deg <= 4; ++deg)
            for (const auto& e : monomials_of_degree(n, deg))
                for (int i = 1; i < n; ++i) CHECK(dd_oracle(f, i, MultiPoly::monomial(n, e, 3)));
}

TEST_CASE("monomial counts") {
    CHECK(monomials_of_degree(3, 0).size() == 1);
    CHECK(monomials_of_degree(3, 2).size() == 6);
    CHECK(monomials_of_degree(3, 4).size() == 15);
    CHECK(monomials_of_degree(2, -1).empty());
}

TEST_CASE("nilHecke relations on polynomials of degree <= 4, k = 3") {
    KoszulModel M(3, F3);
    for (int deg = 0; deg <= 4; ++deg)
        for (const auto& e : monomials_of_degree(3, deg)) {
            KoszulVec p = poly_vec(MultiPoly::monomial(3, e));
            for (int i = 1; i <= 2; ++i) {
                CHECK(M.rho_s(i, M.rho_s(i, p)).empty());
                // x_i d_i - d_i x_{i+1} = 1
                MultiPoly pe = MultiPoly::monomial(3, e);
                MultiPoly a = MultiPoly::variable(3, i).times(F3, divided_difference(F3, i, pe));
                MultiPoly b = divided_difference(F3, i, MultiPoly::variable(3, i + 1).times(F3, pe));
                CHECK(a.plus(F3, b, F3.neg(1)) == pe);
            }
            auto l = M.rho_s(1, M.rho_s(2, M.rho_s(1, p)));
            auto r = M.rho_s(2, M.rho_s(1, M.rho_s(2, p)));
            CHECK(l == r);
        }
}

TEST_CASE("Koszul differential squares to zero") {
    KoszulModel M(3, F3);
    for (int m = 0; m <= 3; ++m)
        for (const auto& mono : M.slice(m, 2 - 2 * m).basis) CHECK(M.d(M.d(KoszulVec{{mono, 1}})).empty());
}

TEST_CASE("[d, rho(s_i)] = rho(xi_i) - rho(xi_{i+1}) pointwise") {
    KoszulModel M(3, F3);
    for (int m = 0; m <= 2; ++m)
        for (int q = -2 * m; q <= -2 * m + 6; q += 2)
            for (const auto& mono : M.slice(m, q).basis)
                for (int i = 1; i <= 2; ++i) {
                    KoszulVec v{{mono, 1}};
                    // d s - s d = xi_i - xi_{i+1}
                    KoszulVec lhs = M.d(M.rho_s(i, v));
                    for (const auto& [t, c] : M.rho_s(i, M.d(v))) {
                        Scalar& slot = lhs[t];
                        slot = F3.sub(slot, c);
                        if (slot == 0) lhs.erase(t);
                    }
                    KoszulVec rhs = M.rho_xi(i, v);
                    for (const auto& [t, c] : M.rho_xi(i + 1, v)) {
                        Scalar& slot = rhs[t];
                        slot = F3.sub(slot, c);
                        if (slot == 0) rhs.erase(t);
                    }
                    CHECK(lhs == rhs);
                }
}

TEST_CASE("Sym-coordinates reconstruct monomials") {
    KoszulModel M(3, F3);
    for (int deg = 0; deg <= 5; ++deg)
        for (const auto& b : monomials_of_degree(3, deg)) {
            MultiPoly sum(3);
            for (const auto& [ai, S] : M.sym_coordinates(b)) {
                const auto& a = M.sym_basis()[ai].x;  // mask 0 betas come first
                sum = sum.plus(F3, S.times(F3, MultiPoly::monomial(3, a)));
            }
            CHECK(sum == MultiPoly::monomial(3, b));
        }
}

TEST_CASE("End complex dims are finite and D^2 = 0") {
    KoszulModel M(2, F3);
    for (int q = 0; q >= -10; q -= 2)
        for (int c = -3; c < 2; ++c) CHECK(M.end_diff(c + 1, q).multiply(F3, M.end_diff(c, q)).is_zero());
    CHECK(M.end_dim(0, 1) == 0);
    CHECK(M.end_dim(2, -6) == 1);
    CHECK(M.end_dim(1, -6) == 0);
}

TEST_CASE("End cohomology, k = 1 and k = 2") {
    for (int k = 1; k <= 2; ++k) {
        KoszulModel M(k, F3);
        CHECK(end_cohomology_dims(M, default_qcut(k)) == lambda_pattern(k));
    }
    std::map<Bidegree, int> k2{{{0, 0}, 1}, {{1, -2}, 1}, {{1, -4}, 1}, {{2, -6}, 1}};
    CHECK(lambda_pattern(2) == k2);
}

TEST_CASE("Koszul duality report, k = 1..3") {
    for (int k = 1; k <= 3; ++k) {
        Report r = verify_koszul_duality(k, default_qcut(k), Field::prime(5));
        for (const auto& c : r.checks) INFO(c.name << ": " << c.got);
        CHECK(r.passed());
        const Check* c = r.find("H(End) equals H(R_k^nil)");
        REQUIRE(c);
        CHECK(c->status == Status::pass);
    }
}

TEST_CASE("rho is a chain map on generators") {
    KoszulModel M(3, F3);
    auto s1 = rho_generator(M, 's', 1);
    CHECK(M.end_diff(0, -2).apply(F3, s1.coords) == sub(F3, rho_generator(M, 'x', 1).coords, rho_generator(M, 'x', 2).coords));
    CHECK_THROWS(rho_generator(M, 'q', 1));
}

TEST_CASE("duality check rejects bad inputs") {
    CHECK_THROWS_AS(verify_koszul_duality(2, default_qcut(2), Field::prime(2)), std::invalid_argument);
    CHECK_THROWS_AS(verify_koszul_duality(2, default_qcut(2), Field::rational()), std::invalid_argument);
    CHECK_THROWS_AS(verify_koszul_duality(2, -4, F3), std::invalid_argument);
}

TEST_CASE("rho generators: k = 1 and k = 2 pictures") {
    KoszulModel M1(1, F3);
    auto x = rho_generator(M1, 'x', 1);
    REQUIRE(x.coords.size() == 1);
    const auto& [b, mono] = M1.end_basis(1, -2)[x.coords[0].index];
    CHECK(M1.sym_basis()[b].mask == 0u);
    CHECK(mono.mask == 1u);
    CHECK(x.coords[0].value == 1);

    KoszulModel M2(2, F3);
    Exponents x1{1, 0};
    CHECK(M2.rho_s(1, KoszulVec{{{0b11, x1}, 1}}) == KoszulVec{{{0b11, {0, 0}}, F3.neg(1)}});
    CHECK(M2.rho_s(1, KoszulVec{{{0b01, x1}, 1}}) == KoszulVec{{{0b10, {0, 0}}, 1}});
    CHECK(M2.rho_s(1, KoszulVec{{{0b10, x1}, 1}}) == KoszulVec{{{0b01, {0, 0}}, 1}});
    CHECK(M2.rho_s(1, KoszulVec{{{0b00, x1}, 1}}) == KoszulVec{{{0b00, {0, 0}}, 1}});
}
