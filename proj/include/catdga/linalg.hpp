#pragma once

#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "catdga/field.hpp"

namespace catdga {

struct Triple {
    int row;
    int col;
    Scalar value;
};

class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols) {}
    // Duplicated positions are summed; zeros dropped; indices validated.
    static SparseMatrix from_triples(const Field& f, int rows, int cols, std::vector<Triple> entries);
    // Column j is columns[j], a vector in F^rows.
    static SparseMatrix from_columns(int rows, const std::vector<SparseVec>& columns);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const std::vector<Triple>& entries() const { return entries_; }
    SparseMatrix transpose() const;
    std::vector<SparseVec> columns() const;
    std::vector<SparseVec> row_vectors() const;
    SparseVec apply(const Field& f, const SparseVec& x) const;
    SparseMatrix multiply(const Field& f, const SparseMatrix& rhs) const;
    bool is_zero() const { return entries_.empty(); }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Triple> entries_;  // sorted by (row, col), no zeros
};

struct PrimeOps {
    using value_type = Scalar;
    Field f;
    value_type from_scalar(Scalar a) const { return f.reduce(a); }
    bool is_zero(const value_type& a) const { return a == 0; }
    value_type add(const value_type& a, const value_type& b) const { return f.add(a, b); }
    value_type sub(const value_type& a, const value_type& b) const { return f.sub(a, b); }
    value_type mul(const value_type& a, const value_type& b) const { return f.mul(a, b); }
    value_type neg(const value_type& a) const { return f.neg(a); }
    value_type inv(const value_type& a) const { return f.inv(a); }
};

struct RationalOps {
    using value_type = boost::multiprecision::cpp_rational;
    value_type from_scalar(Scalar a) const { return value_type(a); }
    bool is_zero(const value_type& a) const { return a == 0; }
    value_type add(const value_type& a, const value_type& b) const { return a + b; }
    value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    value_type neg(const value_type& a) const { return -a; }
    value_type inv(const value_type& a) const { return 1 / a; }
};

template <class Ops>
struct GVec {
    std::vector<std::pair<int, typename Ops::value_type>> terms;  // sorted by index
    bool empty() const { return terms.empty(); }
};

template <class Ops>
GVec<Ops> lift(const Ops& ops, const SparseVec& v) {
    GVec<Ops> g;
    g.terms.reserve(v.size());
    for (const auto& e : v) {
        auto x = ops.from_scalar(e.value);
        if (!ops.is_zero(x)) g.terms.push_back({e.index, x});
    }
    return g;
}

// y += a * x
template <class Ops>
void g_axpy(const Ops& ops, GVec<Ops>& y, const typename Ops::value_type& a, const GVec<Ops>& x) {
    if (ops.is_zero(a) || x.terms.empty()) return;
    std::vector<std::pair<int, typename Ops::value_type>> out;
    out.reserve(y.terms.size() + x.terms.size());
    std::size_t i = 0, j = 0;
    while (i < y.terms.size() || j < x.terms.size()) {
        if (j == x.terms.size() || (i < y.terms.size() && y.terms[i].first < x.terms[j].first)) {
            out.push_back(std::move(y.terms[i++]));
        } else if (i == y.terms.size() || x.terms[j].first < y.terms[i].first) {
            out.push_back({x.terms[j].first, ops.mul(a, x.terms[j].second)});
            ++j;
        } else {
            auto v = ops.add(y.terms[i].second, ops.mul(a, x.terms[j].second));
            if (!ops.is_zero(v)) out.push_back({y.terms[i].first, std::move(v)});
            ++i;
            ++j;
        }
    }
    y.terms.swap(out);
}

// Semi-echelon basis: each stored row has a distinct leading index with
// leading coefficient one. Optionally records, for each row, the combination
// of inserted vectors it came from.
template <class Ops>
class Echelon {
public:
    explicit Echelon(Ops ops, bool track = false) : ops_(std::move(ops)), track_(track) {}

    std::size_t rank() const { return rows_.size(); }

    // Reduces v; if tracking, `combo` receives the combination c (over
    // inserted ids) with v_reduced = v - sum c_i inserted_i.
    GVec<Ops> reduce(GVec<Ops> v, GVec<Ops>* combo = nullptr) const {
        while (!v.terms.empty()) {
            auto it = pivot_.find(v.terms.front().first);
            if (it == pivot_.end()) break;
            auto a = v.terms.front().second;
            const auto& row = rows_[it->second];
            g_axpy(ops_, v, ops_.neg(a), row);
            if (combo) g_axpy(ops_, *combo, a, combos_[it->second]);
        }
        return v;
    }

    // Inserts v with external id `id`; returns true if v was independent.
    bool insert(const GVec<Ops>& v, int id = -1) {
        GVec<Ops> combo;
        GVec<Ops> r = reduce(v, track_ ? &combo : nullptr);
        if (r.terms.empty()) {
            last_dependency_ = combo;
            return false;
        }
        auto lead_inv = ops_.inv(r.terms.front().second);
        GVec<Ops> scaled;
        g_axpy(ops_, scaled, lead_inv, r);
        if (track_) {
            // scaled = lead_inv * (v - combo)  =>  scaled = lead_inv*e_id - lead_inv*combo
            GVec<Ops> c;
            c.terms.push_back({id, lead_inv});
            g_axpy(ops_, c, ops_.neg(lead_inv), combo);
            combos_.push_back(std::move(c));
        }
        pivot_[scaled.terms.front().first] = rows_.size();
        rows_.push_back(std::move(scaled));
        return true;
    }

    // After a failed insert with tracking: v = sum c_i inserted_i.
    const GVec<Ops>& last_dependency() const { return last_dependency_; }

    bool contains(const GVec<Ops>& v) const { return reduce(v).terms.empty(); }

    const Ops& ops() const { return ops_; }

private:
    Ops ops_;
    bool track_;
    std::vector<GVec<Ops>> rows_;
    std::vector<GVec<Ops>> combos_;
    std::unordered_map<int, std::size_t> pivot_;
    GVec<Ops> last_dependency_;
};

std::size_t mat_rank(const SparseMatrix& m, const Field& f);
std::vector<SparseVec> kernel_basis(const SparseMatrix& m, const Field& f);
// Representatives of ker(d_out)/im(d_in). Throws std::invalid_argument if
// d_out * d_in != 0.
std::vector<SparseVec> subquotient_basis(const SparseMatrix& d_in, const SparseMatrix& d_out, const Field& f);

// Homology at one spot of a complex over F_p: classifies cycles modulo
// boundaries and finds preimages under the incoming map.
class HomologyReducer {
public:
    HomologyReducer(const Field& f, const SparseMatrix& d_in, const SparseMatrix& d_out);

    const std::vector<SparseVec>& representatives() const { return reps_; }
    std::size_t dim() const { return reps_.size(); }
    // Coordinates of a cycle's class in the representative basis. Throws if
    // z is not a cycle.
    SparseVec class_of(const SparseVec& z) const;
    bool is_boundary(const SparseVec& z) const;
    // Some g with d_in g = z, or nullopt when z is not a boundary.
    std::optional<SparseVec> preimage(const SparseVec& z) const;
    bool is_cycle(const SparseVec& z) const;

private:
    Field f_;
    SparseMatrix d_out_;
    int n_in_;
    std::vector<SparseVec> reps_;
    Echelon<PrimeOps> boundaries_;  // tracked over columns of d_in
    Echelon<PrimeOps> all_;         // boundaries then reps, tracked by id
};

SparseVec to_sparse(const GVec<PrimeOps>& g);

}  // namespace catdga
