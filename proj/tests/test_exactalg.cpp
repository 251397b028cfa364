#include <algorithm>
#include <numeric>
#include <random>

#include "catdga/linalg.hpp"
#include "doctest.h"

using namespace catdga;

namespace {

using Dense = std::vector<std::vector<Scalar>>;

// Textbook row reduction on a dense copy; returns the rank and leaves the
// reduced row echelon form in m.
int dense_rref(Dense& m, const Field& f) {
    int rows = static_cast<int>(m.size()), cols = rows ? static_cast<int>(m[0].size()) : 0;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (m[i][c] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(m[piv], m[r]);
        Scalar inv = f.inv(m[r][c]);
        for (auto& x : m[r]) x = f.mul(x, inv);
        for (int i = 0; i < rows; ++i)
            if (i != r && m[i][c] != 0) {
                Scalar a = m[i][c];
                for (int j = 0; j < cols; ++j) m[i][j] = f.sub(m[i][j], f.mul(a, m[r][j]));
            }
        ++r;
    }
    return r;
}

Dense random_dense(std::mt19937& rng, const Field& f, int rows, int cols, double density = 0.5) {
    std::uniform_real_distribution<double> u(0, 1);
    std::uniform_int_distribution<int> v(1, static_cast<int>(f.characteristic()) - 1);
    Dense m(rows, std::vector<Scalar>(cols, 0));
    for (auto& row : m)
        for (auto& x : row)
            if (u(rng) < density) x = v(rng);
    return m;
}

SparseMatrix to_sparse_matrix(const Dense& m, const Field& f) {
    std::vector<Triple> t;
    for (int i = 0; i < static_cast<int>(m.size()); ++i)
        for (int j = 0; j < static_cast<int>(m[i].size()); ++j)
            if (m[i][j]) t.push_back({i, j, m[i][j]});
    return SparseMatrix::from_triples(f, static_cast<int>(m.size()), m.empty() ? 0 : static_cast<int>(m[0].size()), t);
}

}  // namespace

TEST_CASE("rank of trivial matrices") {
    Field f2 = Field::prime(2);
    CHECK(mat_rank(SparseMatrix::from_triples(f2, 3, 3, {{0, 0, 1}, {1, 1, 1}, {2, 2, 1}}), f2) == 3);
    CHECK(mat_rank(SparseMatrix(2, 2), f2) == 0);
}

TEST_CASE("rank agrees with dense elimination over F_3") {
    Field f = Field::prime(3);
    std::mt19937 rng(7);
    for (int t = 0; t < 20; ++t) {
        Dense m = random_dense(rng, f, 8, 8, 0.3);
        Dense copy = m;
        int expect = dense_rref(copy, f);
        CHECK(static_cast<int>(mat_rank(to_sparse_matrix(m, f), f)) == expect);
    }
}

TEST_CASE("rank of transpose") {
    for (int p : {2, 3, 5, 7}) {
        Field f = Field::prime(p);
        std::mt19937 rng(p);
        for (int t = 0; t < 10; ++t) {
            SparseMatrix m = to_sparse_matrix(random_dense(rng, f, 5 + t % 4, 9 - t % 3, 0.35), f);
            CHECK(mat_rank(m, f) == mat_rank(m.transpose(), f));
        }
    }
}

TEST_CASE("rational rank matches a prime reduction for small integer matrices") {
    Field q = Field::rational();
    SparseMatrix m = SparseMatrix::from_triples(q, 3, 3, {{0, 0, 2}, {0, 1, 4}, {1, 0, 1}, {1, 1, 2}, {2, 2, 3}});
    CHECK(mat_rank(m, q) == 2);
    Field f3 = Field::prime(3);
    SparseMatrix m3 = SparseMatrix::from_triples(f3, 3, 3, {{0, 0, 2}, {0, 1, 1}, {1, 0, 1}, {1, 1, 2}, {2, 2, 3}});
    CHECK(mat_rank(m3, f3) == 1);
}

TEST_CASE("kernel basis") {
    Field f2 = Field::prime(2);
    auto k = kernel_basis(SparseMatrix::from_triples(f2, 1, 2, {{0, 0, 1}, {0, 1, 1}}), f2);
    REQUIRE(k.size() == 1);
    CHECK(k[0] == SparseVec{{0, 1}, {1, 1}});
    CHECK(kernel_basis(SparseMatrix::from_triples(f2, 3, 3, {{0, 0, 1}, {1, 1, 1}, {2, 2, 1}}), f2).empty());
}

TEST_CASE("kernel over F_5 spans the dense null space") {
    Field f = Field::prime(5);
    std::mt19937 rng(11);
    for (int t = 0; t < 10; ++t) {
        Dense m = random_dense(rng, f, 6, 9, 0.4);
        SparseMatrix s = to_sparse_matrix(m, f);
        auto k = kernel_basis(s, f);
        Dense copy = m;
        int r = dense_rref(copy, f);
        CHECK(static_cast<int>(k.size()) == 9 - r);
        for (const auto& v : k) CHECK(s.apply(f, v).empty());
        CHECK(static_cast<int>(mat_rank(SparseMatrix::from_columns(9, k), f)) == 9 - r);
    }
}

TEST_CASE("kernel over Q is annihilated") {
    Field q = Field::rational();
    SparseMatrix m = SparseMatrix::from_triples(q, 2, 4, {{0, 0, 2}, {0, 1, 3}, {1, 1, 1}, {1, 2, -5}, {1, 3, 7}});
    auto k = kernel_basis(m, q);
    CHECK(k.size() == 2);
    for (const auto& v : k) CHECK(m.apply(q, v).empty());
}

TEST_CASE("subquotient basis") {
    Field f = Field::prime(3);
    CHECK(subquotient_basis(SparseMatrix(4, 0), SparseMatrix(0, 4), f).size() == 4);
    SparseMatrix id = SparseMatrix::from_triples(f, 4, 4, {{0, 0, 1}, {1, 1, 1}, {2, 2, 1}, {3, 3, 1}});
    CHECK(subquotient_basis(SparseMatrix(4, 0), id, f).empty());
    // 0 -> F -> F^2 -> F, d_in = (1,1)^T, d_out = (1,-1)
    SparseMatrix din = SparseMatrix::from_triples(f, 2, 1, {{0, 0, 1}, {1, 0, 1}});
    SparseMatrix dout = SparseMatrix::from_triples(f, 1, 2, {{0, 0, 1}, {0, 1, 2}});
    CHECK(subquotient_basis(din, dout, f).empty());
    SparseMatrix bad = SparseMatrix::from_triples(f, 1, 2, {{0, 0, 1}});
    CHECK_THROWS_AS(subquotient_basis(din, bad, f), std::invalid_argument);
}

TEST_CASE("homology counts do not depend on basis order") {
    Field f = Field::prime(3);
    std::mt19937 rng(5);
    for (int t = 0; t < 8; ++t) {
        // d_out = A, d_in = kernel vectors of A mixed together
        Dense a = random_dense(rng, f, 3, 7, 0.5);
        SparseMatrix dout = to_sparse_matrix(a, f);
        auto ker = kernel_basis(dout, f);
        std::vector<SparseVec> cols;
        for (std::size_t i = 0; i + 1 < ker.size(); ++i) cols.push_back(add(f, ker[i], ker[i + 1]));
        SparseMatrix din = SparseMatrix::from_columns(7, cols);
        std::size_t n1 = subquotient_basis(din, dout, f).size();
        std::vector<int> perm(7);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<Triple> tin, tout;
        for (const auto& e : din.entries()) tin.push_back({perm[e.row], e.col, e.value});
        for (const auto& e : dout.entries()) tout.push_back({e.row, perm[e.col], e.value});
        std::size_t n2 = subquotient_basis(SparseMatrix::from_triples(f, 7, din.cols(), tin),
                                           SparseMatrix::from_triples(f, 3, 7, tout), f)
                             .size();
        CHECK(n1 == n2);
        CHECK(n1 == ker.size() - mat_rank(din, f));
    }
}

TEST_CASE("homology reducer classes and preimages") {
    Field f = Field::prime(5);
    // F -> F^3 -> F, d_in = e0 + e1, d_out = (0, 0, 1)
    SparseMatrix din = SparseMatrix::from_triples(f, 3, 1, {{0, 0, 1}, {1, 0, 1}});
    SparseMatrix dout = SparseMatrix::from_triples(f, 1, 3, {{0, 2, 1}});
    HomologyReducer h(f, din, dout);
    CHECK(h.dim() == 1);
    CHECK(h.is_boundary({{0, 2}, {1, 2}}));
    auto g = h.preimage({{0, 3}, {1, 3}});
    REQUIRE(g.has_value());
    CHECK(din.apply(f, *g) == SparseVec{{0, 3}, {1, 3}});
    CHECK_FALSE(h.is_boundary({{0, 1}}));
    CHECK(h.class_of({{0, 1}}) == h.class_of({{1, 4}}));
    CHECK_FALSE(h.class_of({{0, 1}}).empty());
    CHECK_THROWS(h.class_of({{2, 1}}));
}
