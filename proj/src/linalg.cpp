#include "catdga/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace catdga {

SparseMatrix SparseMatrix::from_triples(const Field& f, int rows, int cols, std::vector<Triple> entries) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
    for (const auto& t : entries)
        if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols)
            throw std::invalid_argument("matrix entry index out of range");
    std::sort(entries.begin(), entries.end(),
              [](const Triple& a, const Triple& b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });
    SparseMatrix m(rows, cols);
    for (const auto& t : entries) {
        Scalar v = f.reduce(t.value);
        if (!m.entries_.empty() && m.entries_.back().row == t.row && m.entries_.back().col == t.col) {
            m.entries_.back().value = f.add(m.entries_.back().value, v);
            if (m.entries_.back().value == 0) m.entries_.pop_back();
        } else if (v != 0) {
            m.entries_.push_back({t.row, t.col, v});
        }
    }
    return m;
}

SparseMatrix SparseMatrix::from_columns(int rows, const std::vector<SparseVec>& columns) {
    SparseMatrix m(rows, static_cast<int>(columns.size()));
    for (int j = 0; j < static_cast<int>(columns.size()); ++j)
        for (const auto& e : columns[j]) {
            if (e.index < 0 || e.index >= rows) throw std::invalid_argument("column entry out of range");
            if (e.value != 0) m.entries_.push_back({e.index, j, e.value});
        }
    std::sort(m.entries_.begin(), m.entries_.end(),
              [](const Triple& a, const Triple& b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });
    return m;
}

SparseMatrix SparseMatrix::transpose() const {
    SparseMatrix t(cols_, rows_);
    t.entries_.reserve(entries_.size());
    for (const auto& e : entries_) t.entries_.push_back({e.col, e.row, e.value});
    std::sort(t.entries_.begin(), t.entries_.end(),
              [](const Triple& a, const Triple& b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });
    return t;
}

std::vector<SparseVec> SparseMatrix::columns() const {
    std::vector<SparseVec> cols(cols_);
    for (const auto& e : entries_) cols[e.col].push_back({e.row, e.value});
    return cols;  // rows visited in increasing order, so each column is sorted
}

std::vector<SparseVec> SparseMatrix::row_vectors() const {
    std::vector<SparseVec> rows(rows_);
    for (const auto& e : entries_) rows[e.row].push_back({e.col, e.value});
    return rows;
}

SparseVec SparseMatrix::apply(const Field& f, const SparseVec& x) const {
    std::vector<Entry> raw;
    // entries sorted by row; use column lookup through x
    std::unordered_map<int, Scalar> xv;
    for (const auto& e : x) xv[e.index] = e.value;
    for (const auto& e : entries_) {
        auto it = xv.find(e.col);
        if (it != xv.end()) raw.push_back({e.row, f.mul(e.value, it->second)});
    }
    return canonical(f, std::move(raw));
}

SparseMatrix SparseMatrix::multiply(const Field& f, const SparseMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("matrix shapes do not compose");
    auto lcols = columns();
    auto rcols = rhs.columns();
    std::vector<SparseVec> out(rhs.cols_);
    Accumulator acc(f, rows_);
    for (int j = 0; j < rhs.cols_; ++j) {
        for (const auto& e : rcols[j]) acc.add(e.value, lcols[e.index]);
        out[j] = acc.take();
    }
    SparseMatrix m = from_columns(rows_, out);
    return m;
}

namespace {

template <class Ops>
std::size_t rank_impl(const Ops& ops, const SparseMatrix& m) {
    Echelon<Ops> e(ops);
    for (const auto& row : m.row_vectors()) e.insert(lift(ops, row));
    return e.rank();
}

// Kernel vectors from dependencies among the columns.
template <class Ops>
std::vector<GVec<Ops>> kernel_impl(const Ops& ops, const SparseMatrix& m) {
    Echelon<Ops> e(ops, true);
    std::vector<GVec<Ops>> out;
    auto cols = m.columns();
    for (int j = 0; j < static_cast<int>(cols.size()); ++j) {
        if (!e.insert(lift(ops, cols[j]), j)) {
            // col_j = sum c_i col_i  =>  e_j - sum c_i e_i in kernel
            GVec<Ops> k;
            k.terms.push_back({j, ops.from_scalar(1)});
            g_axpy(ops, k, ops.neg(ops.from_scalar(1)), e.last_dependency());
            out.push_back(std::move(k));
        }
    }
    return out;
}

SparseVec integral(const GVec<RationalOps>& g) {
    using boost::multiprecision::cpp_int;
    cpp_int l = 1;
    for (const auto& [i, v] : g.terms) l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(v));
    cpp_int gg = 0;
    std::vector<cpp_int> ints;
    for (const auto& [i, v] : g.terms) {
        cpp_int x = boost::multiprecision::numerator(v) * (l / boost::multiprecision::denominator(v));
        ints.push_back(x);
        gg = boost::multiprecision::gcd(gg, x);
    }
    SparseVec out;
    for (std::size_t t = 0; t < ints.size(); ++t) {
        cpp_int x = ints[t] / gg;
        if (x > INT64_MAX || x < INT64_MIN) throw std::overflow_error("kernel vector entry exceeds 64 bits");
        out.push_back({g.terms[t].first, static_cast<Scalar>(x)});
    }
    return out;
}

}  // namespace

SparseVec to_sparse(const GVec<PrimeOps>& g) {
    SparseVec out;
    out.reserve(g.terms.size());
    for (const auto& [i, v] : g.terms) out.push_back({i, v});
    return out;
}

std::size_t mat_rank(const SparseMatrix& m, const Field& f) {
    if (f.is_prime()) return rank_impl(PrimeOps{f}, m);
    return rank_impl(RationalOps{}, m);
}

std::vector<SparseVec> kernel_basis(const SparseMatrix& m, const Field& f) {
    std::vector<SparseVec> out;
    if (f.is_prime()) {
        for (const auto& g : kernel_impl(PrimeOps{f}, m)) out.push_back(to_sparse(g));
    } else {
        for (const auto& g : kernel_impl(RationalOps{}, m)) out.push_back(integral(g));
    }
    return out;
}

std::vector<SparseVec> subquotient_basis(const SparseMatrix& d_in, const SparseMatrix& d_out, const Field& f) {
    if (d_in.rows() != d_out.cols())
        throw std::invalid_argument("complex shapes do not compose");
    if (!d_out.multiply(f, d_in).is_zero()) throw std::invalid_argument("broken complex: d_out * d_in != 0");
    auto kernel = kernel_basis(d_out, f);
    std::vector<SparseVec> reps;
    auto run = [&](const auto& ops) {
        using O = std::decay_t<decltype(ops)>;
        Echelon<O> e(ops);
        for (const auto& c : d_in.columns()) e.insert(lift(ops, c));
        for (const auto& k : kernel)
            if (e.insert(lift(ops, k))) reps.push_back(k);
    };
    if (f.is_prime())
        run(PrimeOps{f});
    else
        run(RationalOps{});
    return reps;
}

HomologyReducer::HomologyReducer(const Field& f, const SparseMatrix& d_in, const SparseMatrix& d_out)
    : f_(f), d_out_(d_out), n_in_(d_in.cols()), boundaries_(PrimeOps{f}, true), all_(PrimeOps{f}, true) {
    if (!f.is_prime()) throw std::invalid_argument("homology reducer requires a prime field");
    reps_ = subquotient_basis(d_in, d_out, f);
    PrimeOps ops{f};
    auto cols = d_in.columns();
    for (int j = 0; j < n_in_; ++j) {
        auto g = lift(ops, cols[j]);
        boundaries_.insert(g, j);
        all_.insert(g, j);
    }
    for (int r = 0; r < static_cast<int>(reps_.size()); ++r) all_.insert(lift(ops, reps_[r]), n_in_ + r);
}

bool HomologyReducer::is_cycle(const SparseVec& z) const { return d_out_.apply(f_, z).empty(); }

SparseVec HomologyReducer::class_of(const SparseVec& z) const {
    if (!is_cycle(z)) throw std::invalid_argument("class_of: vector is not a cycle");
    GVec<PrimeOps> combo;
    auto r = all_.reduce(lift(PrimeOps{f_}, z), &combo);
    if (!r.terms.empty()) throw std::logic_error("class_of: cycle outside span of boundaries and representatives");
    SparseVec out;
    for (const auto& [i, v] : combo.terms)
        if (i >= n_in_) out.push_back({i - n_in_, v});
    return out;
}

bool HomologyReducer::is_boundary(const SparseVec& z) const { return boundaries_.contains(lift(PrimeOps{f_}, z)); }

std::optional<SparseVec> HomologyReducer::preimage(const SparseVec& z) const {
    GVec<PrimeOps> combo;
    auto r = boundaries_.reduce(lift(PrimeOps{f_}, z), &combo);
    if (!r.terms.empty()) return std::nullopt;
    return to_sparse(combo);
}

}  // namespace catdga
