#include "catdga/cohomology.hpp"

#include <algorithm>
#include <stdexcept>

namespace catdga {

namespace {

struct Grouping {
    std::map<Bidegree, std::vector<int>> groups;
    std::vector<int> local;  // index within its group
};

Grouping group_by_degree(const GradedComplex& c) {
    Grouping g;
    g.local.resize(c.size());
    for (int i = 0; i < c.size(); ++i) {
        auto& v = g.groups[{c.cohdeg[i], c.qdeg[i]}];
        g.local[i] = static_cast<int>(v.size());
        v.push_back(i);
    }
    return g;
}

SparseMatrix block_matrix(const GradedComplex& c, const Grouping& g, const std::vector<int>& src,
                          const std::vector<int>& dst) {
    std::vector<Triple> t;
    for (int j = 0; j < static_cast<int>(src.size()); ++j)
        for (const auto& e : c.diff[src[j]]) {
            if (c.cohdeg[e.index] != c.cohdeg[src[j]] + 1 || c.qdeg[e.index] != c.qdeg[src[j]])
                throw std::invalid_argument("differential does not have bidegree (1,0)");
            t.push_back({g.local[e.index], j, e.value});
        }
    return SparseMatrix::from_triples(c.field, static_cast<int>(dst.size()), static_cast<int>(src.size()), std::move(t));
}

}  // namespace

std::map<Bidegree, int> cohomology_dims(const GradedComplex& c) {
    auto g = group_by_degree(c);
    std::map<Bidegree, int> rank_out;
    static const std::vector<int> empty;
    for (const auto& [deg, ids] : g.groups) {
        auto it = g.groups.find({deg.first + 1, deg.second});
        const auto& dst = it == g.groups.end() ? empty : it->second;
        rank_out[deg] = static_cast<int>(mat_rank(block_matrix(c, g, ids, dst), c.field));
    }
    std::map<Bidegree, int> out;
    for (const auto& [deg, ids] : g.groups) {
        int rin = 0;
        auto it = rank_out.find({deg.first - 1, deg.second});
        if (it != rank_out.end()) rin = it->second;
        int h = static_cast<int>(ids.size()) - rank_out[deg] - rin;
        if (h) out[deg] = h;
    }
    return out;
}

bool is_complex(const GradedComplex& c) {
    for (int i = 0; i < c.size(); ++i) {
        std::vector<Entry> raw;
        for (const auto& e : c.diff[i]) {
            if (c.cohdeg[e.index] != c.cohdeg[i] + 1 || c.qdeg[e.index] != c.qdeg[i]) return false;
            for (const auto& t : c.diff[e.index]) raw.push_back({t.index, c.field.mul(e.value, t.value)});
        }
        if (!canonical(c.field, std::move(raw)).empty()) return false;
    }
    return true;
}

GradedComplex complex_of(const DgAlgebra& a, const std::vector<int>& ids) {
    GradedComplex c;
    c.field = a.field();
    std::map<int, int> local;
    for (int i = 0; i < static_cast<int>(ids.size()); ++i) local[ids[i]] = i;
    for (int id : ids) {
        c.cohdeg.push_back(a.basis(id).cohdeg);
        c.qdeg.push_back(a.has_qdeg() ? *a.basis(id).qdeg : 0);
        SparseVec v;
        for (const auto& e : a.diff(id)) {
            auto it = local.find(e.index);
            if (it == local.end()) throw std::invalid_argument("subspace not closed under d");
            v.push_back({it->second, e.value});
        }
        c.diff.push_back(canonical(c.field, std::move(v)));
    }
    return c;
}

std::map<Bidegree, int> cohomology_dims(const DgAlgebra& a) {
    std::vector<int> ids(a.dim());
    for (int i = 0; i < a.dim(); ++i) ids[i] = i;
    return cohomology_dims(complex_of(a, ids));
}

Element IdempotentSlice::to_global(const SparseVec& local) const {
    Element out;
    for (const auto& e : local) out.push_back({ids.at(e.index), e.value});
    return out;
}

SparseVec IdempotentSlice::to_local(const Element& x) const {
    SparseVec out;
    for (const auto& e : x) {
        auto it = std::lower_bound(ids.begin(), ids.end(), e.index);
        if (it == ids.end() || *it != e.index) throw std::invalid_argument("element outside the idempotent slice");
        out.push_back({static_cast<int>(it - ids.begin()), e.value});
    }
    return out;
}

IdempotentSlice idempotent_truncation(const DgAlgebra& a, int e, int f) {
    if (e < 0 || f < 0 || e >= a.num_idempotents() || f >= a.num_idempotents())
        throw std::out_of_range("idempotent id out of range");
    IdempotentSlice s;
    s.left = e;
    s.right = f;
    s.ids = a.block(e, f);
    s.complex = complex_of(a, s.ids);
    return s;
}

SparseVec compose(const DgAlgebra& a, const IdempotentSlice& x, const IdempotentSlice& y, const IdempotentSlice& xy,
                  const SparseVec& u, const SparseVec& v) {
    if (x.right != y.left || xy.left != x.left || xy.right != y.right) throw std::invalid_argument("slices do not compose");
    return xy.to_local(a.multiply(x.to_global(u), y.to_global(v)));
}

CohomologyRing::CohomologyRing(const DgAlgebra& a) : a_(&a) {
    if (!a.field().is_prime()) throw std::invalid_argument("cohomology ring requires a prime field");
    for (int i = 0; i < a.dim(); ++i) {
        CellKey k{a.left_idem(i), a.right_idem(i), a.basis(i).cohdeg, a.has_qdeg() ? *a.basis(i).qdeg : 0};
        cells_[k].ids.push_back(i);
    }
    auto local_index = [&](const Cell& c) {
        std::map<int, int> m;
        for (int t = 0; t < static_cast<int>(c.ids.size()); ++t) m[c.ids[t]] = t;
        return m;
    };
    auto matrix = [&](const Cell* src, const Cell* dst) {
        int rows = dst ? static_cast<int>(dst->ids.size()) : 0;
        int cols = src ? static_cast<int>(src->ids.size()) : 0;
        std::vector<Triple> t;
        if (src) {
            std::map<int, int> dl = dst ? local_index(*dst) : std::map<int, int>{};
            for (int j = 0; j < cols; ++j)
                for (const auto& e : a.diff(src->ids[j])) {
                    auto it = dl.find(e.index);
                    if (it == dl.end()) throw std::logic_error("differential leaves its cell family");
                    t.push_back({it->second, j, e.value});
                }
        }
        return SparseMatrix::from_triples(a.field(), rows, cols, std::move(t));
    };
    for (auto& [k, cell] : cells_) {
        const Cell* prev = find_cell({k.left, k.right, k.cohdeg - 1, k.qdeg});
        const Cell* next = find_cell({k.left, k.right, k.cohdeg + 1, k.qdeg});
        SparseMatrix d_in = matrix(prev, &cell);
        SparseMatrix d_out = matrix(&cell, next);
        cell.reducer = std::make_unique<HomologyReducer>(a.field(), d_in, d_out);
        cell.first_class = static_cast<int>(classes_.size());
        for (const auto& r : cell.reducer->representatives()) classes_.push_back({to_global(cell, r), k});
    }
}

const CohomologyRing::Cell* CohomologyRing::find_cell(const CellKey& k) const {
    auto it = cells_.find(k);
    return it == cells_.end() ? nullptr : &it->second;
}

SparseVec CohomologyRing::to_local(const Cell& c, const Element& z) const {
    SparseVec v;
    for (const auto& e : z) {
        auto it = std::lower_bound(c.ids.begin(), c.ids.end(), e.index);
        if (it == c.ids.end() || *it != e.index) throw std::invalid_argument("element not in cell");
        v.push_back({static_cast<int>(it - c.ids.begin()), e.value});
    }
    return v;
}

Element CohomologyRing::to_global(const Cell& c, const SparseVec& v) const {
    Element z;
    for (const auto& e : v) z.push_back({c.ids[e.index], e.value});
    return z;
}

std::map<Bidegree, int> CohomologyRing::dims() const {
    std::map<Bidegree, int> out;
    for (const auto& cl : classes_) ++out[{cl.cell.cohdeg, cl.cell.qdeg}];
    return out;
}

std::vector<int> CohomologyRing::classes_in(const CellKey& k) const {
    std::vector<int> out;
    const Cell* c = find_cell(k);
    if (!c) return out;
    for (std::size_t t = 0; t < c->reducer->dim(); ++t) out.push_back(c->first_class + static_cast<int>(t));
    return out;
}

CellKey CohomologyRing::cell_of(const Element& z) const {
    if (z.empty()) throw std::invalid_argument("cell of zero element");
    const auto& a = *a_;
    int i = z.front().index;
    CellKey k{a.left_idem(i), a.right_idem(i), a.basis(i).cohdeg, a.has_qdeg() ? *a.basis(i).qdeg : 0};
    for (const auto& e : z) {
        int j = e.index;
        CellKey kj{a.left_idem(j), a.right_idem(j), a.basis(j).cohdeg, a.has_qdeg() ? *a.basis(j).qdeg : 0};
        if (!(kj == k)) throw std::invalid_argument("element is not homogeneous in block and degree");
    }
    return k;
}

SparseVec CohomologyRing::class_of(const Element& z) const {
    if (z.empty()) return {};
    CellKey k = cell_of(z);
    const Cell* c = find_cell(k);
    SparseVec local = c->reducer->class_of(to_local(*c, z));
    for (auto& e : local) e.index += c->first_class;
    return local;
}

bool CohomologyRing::is_boundary(const Element& z) const {
    if (z.empty()) return true;
    const Cell* c = find_cell(cell_of(z));
    return c->reducer->is_boundary(to_local(*c, z));
}

std::optional<Element> CohomologyRing::preimage(const Element& z) const {
    if (z.empty()) return Element{};
    CellKey k = cell_of(z);
    const Cell* c = find_cell(k);
    auto g = c->reducer->preimage(to_local(*c, z));
    if (!g) return std::nullopt;
    const Cell* prev = find_cell({k.left, k.right, k.cohdeg - 1, k.qdeg});
    if (!prev) {
        if (!g->empty()) throw std::logic_error("preimage in empty cell");
        return Element{};
    }
    return to_global(*prev, *g);
}

SparseVec CohomologyRing::product(int x, int y) const {
    const auto& cx = classes_.at(x);
    const auto& cy = classes_.at(y);
    if (cx.cell.right != cy.cell.left) return {};
    return class_of(a_->multiply(cx.rep, cy.rep));
}

SparseVec CohomologyRing::product_of(const SparseVec& x, const SparseVec& y) const {
    return class_of(a_->multiply(lift(x), lift(y)));
}

Element CohomologyRing::lift(const SparseVec& cls) const {
    Element z;
    for (const auto& e : cls) axpy(a_->field(), z, e.value, classes_.at(e.index).rep);
    return z;
}

MasseyResult massey_triple(const CohomologyRing& h, const Element& a, const Element& b, const Element& c) {
    const DgAlgebra& A = h.algebra();
    const Field& F = A.field();
    for (const Element* x : {&a, &b, &c}) {
        if (x->empty()) throw std::invalid_argument("massey_triple: zero input");
        if (!A.d(*x).empty()) throw std::invalid_argument("massey_triple: input is not closed");
        h.cell_of(*x);
    }
    MasseyResult r;
    Element ab = A.multiply(a, b);
    Element bc = A.multiply(b, c);
    auto g = h.preimage(ab);
    auto f = h.preimage(scale(F, F.neg(1), bc));
    if (!g || !f) throw std::invalid_argument("massey_triple: ab or bc is not exact");
    r.g = *g;
    r.f = *f;
    r.representative = A.multiply(r.g, c);
    axpy(F, r.representative, F.pow_sign(A.cohdeg_of(a)), A.multiply(a, r.f));
    if (!A.d(r.representative).empty()) throw std::logic_error("massey_triple: representative is not closed");
    r.class_coords = h.class_of(r.representative);

    CellKey ka = h.cell_of(a), kb = h.cell_of(b), kc = h.cell_of(c);
    // Indeterminacy [a] H + H [c] in the target cell.
    Echelon<PrimeOps> ind(PrimeOps{F});
    for (int x : h.classes_in({kb.left, kc.right, kb.cohdeg + kc.cohdeg - 1, kb.qdeg + kc.qdeg}))
        ind.insert(lift(PrimeOps{F}, h.class_of(A.multiply(a, h.classes()[x].rep))));
    for (int x : h.classes_in({ka.left, kb.right, ka.cohdeg + kb.cohdeg - 1, ka.qdeg + kb.qdeg}))
        ind.insert(lift(PrimeOps{F}, h.class_of(A.multiply(h.classes()[x].rep, c))));
    r.indeterminacy_dim = static_cast<int>(ind.rank());
    r.nontrivial = !ind.contains(lift(PrimeOps{F}, r.class_coords));
    return r;
}

std::vector<MasseyWitness> massey_search(const CohomologyRing& h, const MasseySearchOptions& opt) {
    std::vector<MasseyWitness> out;
    const auto& cls = h.classes();
    int n = h.dim();
    std::map<std::pair<int, int>, bool> zero_cache;
    auto product_zero = [&](int x, int y) {
        auto key = std::make_pair(x, y);
        auto it = zero_cache.find(key);
        if (it != zero_cache.end()) return it->second;
        bool z = h.product(x, y).empty();
        zero_cache[key] = z;
        return z;
    };
    for (int y = 0; y < n; ++y) {
        if (opt.skip_degree0_middle && cls[y].cell.cohdeg == 0) continue;
        for (int x = 0; x < n; ++x) {
            if (cls[x].cell.right != cls[y].cell.left || !product_zero(x, y)) continue;
            for (int z = 0; z < n; ++z) {
                if (cls[y].cell.right != cls[z].cell.left || !product_zero(y, z)) continue;
                auto r = massey_triple(h, cls[x].rep, cls[y].rep, cls[z].rep);
                if (r.nontrivial) {
                    out.push_back({x, y, z, std::move(r)});
                    if (out.size() >= opt.max_witnesses) return out;
                }
            }
        }
    }
    return out;
}

}  // namespace catdga
