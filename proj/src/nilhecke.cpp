#include "catdga/nilhecke.hpp"

#include <bit>
#include <functional>
#include <numeric>
#include <sstream>

namespace catdga {

MultiPoly MultiPoly::constant(int nvars, Scalar c) { return monomial(nvars, Exponents(nvars, 0), c); }

MultiPoly MultiPoly::monomial(int nvars, Exponents e, Scalar c) {
    if (static_cast<int>(e.size()) != nvars) throw std::invalid_argument("exponent vector length");
    MultiPoly p(nvars);
    if (c != 0) p.terms_[std::move(e)] = c;
    return p;
}

MultiPoly MultiPoly::variable(int nvars, int j) {
    Exponents e(nvars, 0);
    e.at(j - 1) = 1;
    return monomial(nvars, e);
}

MultiPoly MultiPoly::elementary(const Field& f, int nvars, int i) {
    MultiPoly p(nvars);
    for (unsigned s = 0; s < (1u << nvars); ++s) {
        if (std::popcount(s) != i) continue;
        Exponents e(nvars, 0);
        for (int j = 0; j < nvars; ++j) e[j] = (s >> j) & 1;
        p.add_term(f, e, 1);
    }
    return p;
}

void MultiPoly::add_term(const Field& f, const Exponents& e, Scalar c) {
    c = f.reduce(c);
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
        return;
    }
    it->second = f.add(it->second, c);
    if (it->second == 0) terms_.erase(it);
}

MultiPoly MultiPoly::plus(const Field& f, const MultiPoly& o, Scalar scale) const {
    MultiPoly r = *this;
    if (r.n_ == 0) r.n_ = o.n_;
    for (const auto& [e, c] : o.terms_) r.add_term(f, e, f.mul(c, f.reduce(scale)));
    return r;
}

MultiPoly MultiPoly::times(const Field& f, const MultiPoly& o) const {
    MultiPoly r(std::max(n_, o.n_));
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) {
            Exponents e(e1);
            for (std::size_t j = 0; j < e.size(); ++j) e[j] += e2[j];
            r.add_term(f, e, f.mul(c1, c2));
        }
    return r;
}

MultiPoly MultiPoly::swapped(int i) const {
    MultiPoly r(n_);
    for (const auto& [e, c] : terms_) {
        Exponents s = e;
        std::swap(s.at(i - 1), s.at(i));
        r.terms_[s] = c;
    }
    return r;
}

MultiPoly divided_difference(const Field& f, int i, const MultiPoly& p) {
    if (i < 1 || i >= p.nvars()) throw std::out_of_range("divided difference index");
    MultiPoly r(p.nvars());
    for (const auto& [e, c] : p.terms()) {
        int a = e[i - 1], b = e[i];
        if (a == b) continue;
        // (x^a y^b - x^b y^a)/(x - y) = sign * x^m y^m * sum_{t} x^{h-1-t} y^t
        int lo = std::min(a, b), h = std::abs(a - b);
        Scalar coef = a > b ? c : f.neg(c);
        for (int t = 0; t < h; ++t) {
            Exponents g = e;
            g[i - 1] = lo + h - 1 - t;
            g[i] = lo + t;
            r.add_term(f, g, coef);
        }
    }
    return r;
}

std::vector<Exponents> monomials_of_degree(int nvars, int degree) {
    std::vector<Exponents> out;
    if (degree < 0) return out;
    Exponents e(nvars, 0);
    std::function<void(int, int)> rec = [&](int j, int left) {
        if (j == nvars - 1 || nvars == 0) {
            if (nvars == 0) {
                if (left == 0) out.push_back(e);
                return;
            }
            e[j] = left;
            out.push_back(e);
            return;
        }
        for (int v = left; v >= 0; --v) {
            e[j] = v;
            rec(j + 1, left - v);
        }
        e[j] = 0;
    };
    rec(0, degree);
    return out;
}

namespace {

int sum(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

// Sign of xi_j * xi_A relative to the ascending monomial of A + j.
bool left_sign_negative(unsigned mask, int j) { return std::popcount(mask & ((1u << (j - 1)) - 1)) & 1; }

void add_to(const Field& f, KoszulVec& v, const KoszulMonomial& m, Scalar c) {
    c = f.reduce(c);
    if (c == 0) return;
    auto it = v.find(m);
    if (it == v.end()) {
        v.emplace(m, c);
        return;
    }
    it->second = f.add(it->second, c);
    if (it->second == 0) v.erase(it);
}

}  // namespace

KoszulModel::KoszulModel(int k, Field f) : k_(k), f_(f) {
    if (k < 0 || k > 5) throw std::invalid_argument("k out of supported range");
    Exponents a(k, 0);
    std::function<void(int)> rec = [&](int i) {
        if (i == k) {
            artin_index_[a] = static_cast<int>(artin_.size());
            artin_.push_back(a);
            return;
        }
        for (int v = 0; v <= k - 1 - i; ++v) {
            a[i] = v;
            rec(i + 1);
        }
        a[i] = 0;
    };
    rec(0);
    for (unsigned m = 0; m < (1u << k); ++m)
        for (const auto& e : artin_) betas_.push_back({m, e});
    std::map<KoszulMonomial, int> beta_index;
    for (int b = 0; b < static_cast<int>(betas_.size()); ++b) beta_index[betas_[b]] = b;
    incoming_.resize(betas_.size());
    for (int b = 0; b < static_cast<int>(betas_.size()); ++b) {
        const auto& beta = betas_[b];
        for (int i = 1; i <= k; ++i) {
            if (beta.mask & (1u << (i - 1))) continue;
            Exponents xe = beta.x;
            ++xe[i - 1];
            Scalar sign = left_sign_negative(beta.mask, i) ? f_.neg(1) : 1;
            for (const auto& [ai, S] : sym_coordinates(xe)) {
                int target = beta_index.at({beta.mask | (1u << (i - 1)), artin_[ai]});
                incoming_[target].push_back({b, MultiPoly(k).plus(f_, S, sign)});
            }
        }
    }
}

int KoszulModel::cohdeg(const KoszulMonomial& m) { return std::popcount(m.mask); }

int KoszulModel::qdeg(const KoszulMonomial& m) { return -2 * std::popcount(m.mask) + 2 * sum(m.x); }

void KoszulModel::ensure_degree(int n) const {
    if (solved_degree_.count(n)) return;
    auto monos = monomials_of_degree(k_, n);
    std::map<Exponents, int> mindex;
    for (int i = 0; i < static_cast<int>(monos.size()); ++i) mindex[monos[i]] = i;
    std::vector<MultiPoly> e(k_ + 1);
    for (int i = 1; i <= k_; ++i) e[i] = MultiPoly::elementary(f_, k_, i);
    // columns e^lambda x^a with sum i*lambda_i + |a| = n
    struct Column {
        int artin;
        MultiPoly sym;
    };
    std::vector<Column> cols;
    for (int ai = 0; ai < static_cast<int>(artin_.size()); ++ai) {
        int r = n - sum(artin_[ai]);
        if (r < 0) continue;
        std::function<void(int, int, MultiPoly)> rec = [&](int i, int left, MultiPoly acc) {
            if (i > k_) {
                if (left == 0) cols.push_back({ai, acc});
                return;
            }
            for (int lam = 0; lam * i <= left; ++lam) {
                rec(i + 1, left - lam * i, acc);
                acc = acc.times(f_, e[i]);
            }
        };
        rec(1, r, MultiPoly::constant(k_, 1));
    }
    Echelon<PrimeOps> ech(PrimeOps{f_}, true);
    auto as_vec = [&](const MultiPoly& p) {
        std::vector<Entry> raw;
        for (const auto& [ex, c] : p.terms()) raw.push_back({mindex.at(ex), c});
        return lift(PrimeOps{f_}, canonical(f_, raw));
    };
    for (int c = 0; c < static_cast<int>(cols.size()); ++c) {
        MultiPoly full = cols[c].sym.times(f_, MultiPoly::monomial(k_, artin_[cols[c].artin]));
        if (!ech.insert(as_vec(full), c)) throw std::logic_error("Sym-basis products are dependent in degree " + std::to_string(n));
    }
    if (ech.rank() != monos.size()) throw std::logic_error("Sym-basis does not span degree " + std::to_string(n));
    for (const auto& m : monos) {
        GVec<PrimeOps> combo;
        auto rest = ech.reduce(as_vec(MultiPoly::monomial(k_, m)), &combo);
        if (!rest.empty()) throw std::logic_error("Sym-coordinates failed");
        std::map<int, MultiPoly> by_artin;
        for (const auto& [c, v] : combo.terms) {
            auto& slot = by_artin[cols[c].artin];
            if (slot.nvars() == 0) slot = MultiPoly(k_);
            slot = slot.plus(f_, cols[c].sym, v);
        }
        std::vector<std::pair<int, MultiPoly>> out;
        for (auto& [ai, p] : by_artin)
            if (!p.is_zero()) out.push_back({ai, p});
        coords_[m] = std::move(out);
    }
    solved_degree_[n] = true;
}

const std::vector<std::pair<int, MultiPoly>>& KoszulModel::sym_coordinates(const Exponents& b) const {
    ensure_degree(sum(b));
    return coords_.at(b);
}

KoszulSlice KoszulModel::slice(int m, int q) const {
    KoszulSlice s{m, q, {}};
    if (m < 0 || m > k_ || (q + 2 * m) % 2 != 0) return s;
    int deg = (q + 2 * m) / 2;
    if (deg < 0) return s;
    auto monos = monomials_of_degree(k_, deg);
    for (unsigned mask = 0; mask < (1u << k_); ++mask) {
        if (std::popcount(mask) != m) continue;
        for (const auto& e : monos) s.basis.push_back({mask, e});
    }
    return s;
}

KoszulVec KoszulModel::d(const KoszulVec& v) const {
    KoszulVec out;
    for (const auto& [m, c] : v)
        for (int i = 1; i <= k_; ++i) {
            if (m.mask & (1u << (i - 1))) continue;
            KoszulMonomial t{m.mask | (1u << (i - 1)), m.x};
            ++t.x[i - 1];
            add_to(f_, out, t, left_sign_negative(m.mask, i) ? f_.neg(c) : c);
        }
    return out;
}

KoszulVec KoszulModel::rho_xi(int j, const KoszulVec& v) const {
    if (j < 1 || j > k_) throw std::out_of_range("xi index");
    KoszulVec out;
    for (const auto& [m, c] : v) {
        if (m.mask & (1u << (j - 1))) continue;
        add_to(f_, out, {m.mask | (1u << (j - 1)), m.x}, left_sign_negative(m.mask, j) ? f_.neg(c) : c);
    }
    return out;
}

KoszulVec KoszulModel::rho_s(int i, const KoszulVec& v) const {
    if (i < 1 || i >= k_) throw std::out_of_range("s index");
    const unsigned bi = 1u << (i - 1), bi1 = 1u << i;
    KoszulVec out;
    for (const auto& [m, c] : v) {
        unsigned sm = m.mask & ~(bi | bi1);
        if (m.mask & bi) sm |= bi1;
        if (m.mask & bi1) sm |= bi;
        Scalar cc = ((m.mask & bi) && (m.mask & bi1)) ? f_.neg(c) : c;
        MultiPoly p = divided_difference(f_, i, MultiPoly::monomial(k_, m.x));
        for (const auto& [e, pc] : p.terms()) add_to(f_, out, {sm, e}, f_.mul(cc, pc));
    }
    return out;
}

KoszulVec KoszulModel::rho(const HeckeExterior& nil, int id, const KoszulVec& v) const {
    KoszulVec out = v;
    unsigned m = nil.mask(id);
    for (int j = k_; j >= 1; --j)
        if (m & (1u << (j - 1))) out = rho_xi(j, out);
    const auto& w = nil.word(nil.perm_index(id));
    for (auto it = w.rbegin(); it != w.rend(); ++it) out = rho_s(*it, out);
    return out;
}

KoszulVec KoszulModel::rho(const HeckeExterior& nil, const SparseVec& x, const KoszulVec& v) const {
    KoszulVec out;
    for (const auto& e : x)
        for (const auto& [m, c] : rho(nil, e.index, v)) add_to(f_, out, m, f_.mul(c, e.value));
    return out;
}

const KoszulModel::EndIndex& KoszulModel::end_index(int c, int q) const {
    auto key = std::make_pair(c, q);
    auto it = end_cache_.find(key);
    if (it != end_cache_.end()) return *it->second;
    auto ix = std::make_unique<EndIndex>();
    for (int b = 0; b < static_cast<int>(betas_.size()); ++b) {
        const auto& beta = betas_[b];
        auto s = slice(cohdeg(beta) + c, qdeg(beta) + q);
        for (const auto& m : s.basis) {
            ix->index[{b, m}] = static_cast<int>(ix->basis.size());
            ix->basis.push_back({b, m});
        }
    }
    return *end_cache_.emplace(key, std::move(ix)).first->second;
}

int KoszulModel::end_dim(int c, int q) const { return static_cast<int>(end_index(c, q).basis.size()); }

SparseMatrix KoszulModel::end_diff(int c, int q) const {
    const EndIndex& src = end_index(c, q);
    const EndIndex& dst = end_index(c + 1, q);
    std::vector<Triple> t;
    Scalar sign = f_.neg(f_.pow_sign(c));  // -(-1)^c
    for (int col = 0; col < static_cast<int>(src.basis.size()); ++col) {
        const auto& [b0, mu] = src.basis[col];
        for (const auto& [m, v] : d(KoszulVec{{mu, 1}})) t.push_back({dst.index.at({b0, m}), col, v});
        MultiPoly xmu = MultiPoly::monomial(k_, mu.x);
        for (const auto& [b, S] : incoming_[b0]) {
            MultiPoly prod = S.times(f_, xmu);
            for (const auto& [e, v] : prod.terms()) {
                auto it = dst.index.find({b, KoszulMonomial{mu.mask, e}});
                if (it == dst.index.end()) throw std::logic_error("end_diff: target outside slice");
                t.push_back({it->second, col, f_.mul(sign, v)});
            }
        }
    }
    return SparseMatrix::from_triples(f_, static_cast<int>(dst.basis.size()), static_cast<int>(src.basis.size()), std::move(t));
}

EndSliceMap rho_generator(const KoszulModel& m, char gen, int index) {
    if (gen == 'x') return m.end_coords(1, -2, [&](const KoszulVec& v) { return m.rho_xi(index, v); });
    if (gen == 's') return m.end_coords(0, -2, [&](const KoszulVec& v) { return m.rho_s(index, v); });
    throw std::invalid_argument("generator must be 'x' (xi_j) or 's' (s_i)");
}

std::map<Bidegree, int> end_cohomology_dims(const KoszulModel& m, int qcut) {
    std::map<Bidegree, int> out;
    const Field& f = m.field();
    for (int q = 0; q >= qcut; q -= 2) {
        std::map<int, std::size_t> rank;
        for (int c = -m.k() - 1; c <= m.k(); ++c) rank[c] = mat_rank(m.end_diff(c, q), f);
        for (int c = -m.k(); c <= m.k(); ++c) {
            int h = m.end_dim(c, q) - static_cast<int>(rank[c]) - static_cast<int>(rank[c - 1]);
            if (h) out[{c, q}] = h;
        }
    }
    return out;
}

namespace {

std::string fmt_dims(const std::map<Bidegree, int>& m) {
    std::ostringstream os;
    for (const auto& [d, n] : m) os << "(" << d.first << "," << d.second << "):" << n << " ";
    std::string s = os.str();
    return s.empty() ? "none" : s.substr(0, s.size() - 1);
}

}  // namespace

Report verify_koszul_duality(int k, int qcut, const Field& f) {
    if (!f.is_prime()) throw std::invalid_argument("duality check runs over a prime field");
    if (f.characteristic() == 2) throw std::invalid_argument("duality check requires characteristic other than 2");
    if (k < 1) throw std::invalid_argument("k must be positive");
    if (qcut > -k * (k + 1)) throw std::invalid_argument("qcut must be at most -k(k+1)");
    Report r;
    r.suite = "koszul_duality";
    r.parameters = {{"k", std::to_string(k)}, {"qcut", std::to_string(qcut)}, {"field", f.describe()}};
    KoszulModel M(k, f);
    HeckeExterior nil(k, f, 0, true);

    // M_k itself: square-zero slices with cohomology F in one spot.
    {
        bool sq = true;
        std::map<Bidegree, int> h;
        for (int q = qcut; q <= 2 * k + 4; q += 2) {
            std::vector<KoszulSlice> sl;
            for (int m = 0; m <= k; ++m) sl.push_back(M.slice(m, q));
            auto mat = [&](int m) {
                std::map<KoszulMonomial, int> idx;
                for (int i = 0; i < static_cast<int>(sl[m + 1].basis.size()); ++i) idx[sl[m + 1].basis[i]] = i;
                std::vector<Triple> t;
                for (int j = 0; j < static_cast<int>(sl[m].basis.size()); ++j)
                    for (const auto& [mono, v] : M.d(KoszulVec{{sl[m].basis[j], 1}})) t.push_back({idx.at(mono), j, v});
                return SparseMatrix::from_triples(f, static_cast<int>(sl[m + 1].basis.size()), static_cast<int>(sl[m].basis.size()), t);
            };
            std::vector<SparseMatrix> ds;
            for (int m = 0; m < k; ++m) ds.push_back(mat(m));
            for (int m = 0; m + 1 < k; ++m)
                if (!ds[m + 1].multiply(f, ds[m]).is_zero()) sq = false;
            for (int m = 0; m <= k; ++m) {
                int in = m > 0 ? static_cast<int>(mat_rank(ds[m - 1], f)) : 0;
                int out = m < k ? static_cast<int>(mat_rank(ds[m], f)) : 0;
                int dim = static_cast<int>(sl[m].basis.size()) - in - out;
                if (dim) h[{m, q}] = dim;
            }
        }
        r.add("M_k slices square to zero", sq, "yes", sq ? "yes" : "no", Provenance::trivial);
        std::map<Bidegree, int> expect{{{k, -2 * k}, 1}};
        r.add("H(M_k) for qdeg in [" + std::to_string(qcut) + "," + std::to_string(2 * k + 4) + "]", h == expect,
              fmt_dims(expect), fmt_dims(h), Provenance::paper);
    }

    // End complex: D^2 = 0 on every slice used.
    bool dsq = true;
    for (int q = 0; q >= qcut; q -= 2)
        for (int c = -k - 1; c < k; ++c)
            if (!M.end_diff(c + 1, q).multiply(f, M.end_diff(c, q)).is_zero()) dsq = false;
    r.add("End slices square to zero", dsq, "yes", dsq ? "yes" : "no", Provenance::trivial);

    // D(rho(s_i)) = rho(xi_i) - rho(xi_{i+1}).
    bool gen_ok = true;
    for (int i = 1; i < k; ++i) {
        auto s = rho_generator(M, 's', i);
        auto lhs = M.end_diff(0, -2).apply(f, s.coords);
        auto rhs = sub(f, rho_generator(M, 'x', i).coords, rho_generator(M, 'x', i + 1).coords);
        if (lhs != rhs) gen_ok = false;
    }
    r.add("D(rho(s_i)) = rho(xi_i) - rho(xi_{i+1})", gen_ok, "equal", gen_ok ? "equal" : "differ", Provenance::paper);

    // rho on the whole basis: chain map, injective, multiplicative.
    auto rho_coords = [&](const SparseVec& x, int c, int q) {
        return M.end_coords(c, q, [&](const KoszulVec& v) { return M.rho(nil, x, v); }).coords;
    };
    bool chain = true, mult = true;
    std::map<Bidegree, std::vector<SparseVec>> images;
    for (int a = 0; a < nil.dim(); ++a) {
        int c = nil.cohdeg(a), q = nil.qdeg(a);
        SparseVec img = rho_coords(unit_vector(a), c, q);
        images[{c, q}].push_back(img);
        SparseVec lhs = M.end_diff(c, q).apply(f, img);
        SparseVec rhs = nil.diff(a).empty() ? SparseVec{} : rho_coords(nil.diff(a), c + 1, q);
        if (lhs != rhs) chain = false;
    }
    // rho(g b) = rho(g) rho(b) for generators g and every basis b; all
    // products follow by induction on word length.
    std::vector<std::pair<SparseVec, std::function<KoszulVec(const KoszulVec&)>>> gens;
    for (int j = 1; j <= k; ++j)
        gens.push_back({nil.right_xi(unit_vector(nil.id(0, 0)), j), [&M, j](const KoszulVec& v) { return M.rho_xi(j, v); }});
    for (int i = 1; i < k; ++i)
        gens.push_back({nil.right_T(unit_vector(nil.id(0, 0)), i), [&M, i](const KoszulVec& v) { return M.rho_s(i, v); }});
    for (int b = 0; b < nil.dim() && mult; ++b)
        for (const auto& [g, op] : gens) {
            SparseVec gb = nil.product(g, unit_vector(b));
            for (const auto& beta : M.sym_basis()) {
                KoszulVec v{{beta, 1}};
                if (op(M.rho(nil, b, v)) != M.rho(nil, gb, v)) {
                    mult = false;
                    break;
                }
            }
        }
    r.add("rho is a chain map on every basis element", chain, "yes", chain ? "yes" : "no", Provenance::paper);
    r.add("rho(g b) = rho(g) rho(b) for generators g", mult, "yes", mult ? "yes" : "no", Provenance::paper);
    bool inj = true;
    for (const auto& [deg, vs] : images) {
        int dim = M.end_dim(deg.first, deg.second);
        if (static_cast<int>(mat_rank(SparseMatrix::from_columns(dim, vs), f)) != static_cast<int>(vs.size())) inj = false;
    }
    r.add("rho is injective", inj, "yes", inj ? "yes" : "no", Provenance::paper);

    // Cohomology comparison.
    auto hend = end_cohomology_dims(M, qcut);
    std::map<Bidegree, int> lambda;
    for (unsigned s = 0; s < (1u << k); ++s) {
        int q = 0;
        for (int i = 1; i <= k; ++i)
            if (s & (1u << (i - 1))) q -= 2 * i;
        ++lambda[{std::popcount(s), q}];
    }
    r.add("H(End) equals Lambda(e_1*..e_k*)", hend == lambda, fmt_dims(lambda), fmt_dims(hend), Provenance::paper);
    DgAlgebra rnil = algebra_from_engine(nil, "R_k^nil", {});
    CohomologyRing hr(rnil);
    auto hrd = hr.dims();
    r.add("H(End) equals H(R_k^nil)", hend == hrd, fmt_dims(hrd), fmt_dims(hend), Provenance::paper);

    // rho_* injective on cohomology, bidegree by bidegree.
    bool hinj = true;
    std::map<Bidegree, std::vector<int>> by_deg;
    for (int x = 0; x < hr.dim(); ++x) by_deg[{hr.classes()[x].cell.cohdeg, hr.classes()[x].cell.qdeg}].push_back(x);
    for (const auto& [deg, xs] : by_deg) {
        auto [c, q] = deg;
        Echelon<PrimeOps> ech(PrimeOps{f});
        for (const auto& col : M.end_diff(c - 1, q).columns()) ech.insert(lift(PrimeOps{f}, col));
        std::size_t base = ech.rank();
        for (int x : xs) ech.insert(lift(PrimeOps{f}, rho_coords(hr.classes()[x].rep, c, q)));
        if (ech.rank() - base != xs.size()) hinj = false;
    }
    r.add("rho_* is injective on cohomology", hinj, "yes", hinj ? "yes" : "no", Provenance::paper);

    // Lowest q-degree and the volume form.
    int low = -k * (k + 1);
    int low_dim = 0, below = 0;
    for (int c = -k; c <= k; ++c) {
        low_dim += M.end_dim(c, low);
        for (int q = low - 2; q >= qcut; q -= 2) below += M.end_dim(c, q);
    }
    r.add("End is one-dimensional in its lowest q-degree " + std::to_string(low), low_dim == 1 && below == 0,
          "1 (and 0 below)", std::to_string(low_dim) + " (" + std::to_string(below) + " below)", Provenance::paper);
    SparseVec vol = unit_vector(nil.id(0, 0));
    for (int j = 1; j <= k; ++j) vol = nil.right_xi(vol, j);
    std::vector<int> rev(k);
    for (int a = 0; a < k; ++a) rev[a] = k - 1 - a;
    int w0 = nil.index_of(Perm(rev));
    vol = nil.product(vol, unit_vector(nil.id(w0, 0)));
    bool vol_ok = false;
    if (!vol.empty()) {
        SparseVec img = rho_coords(vol, k, low);
        Echelon<PrimeOps> ech(PrimeOps{f});
        for (const auto& col : M.end_diff(k - 1, low).columns()) ech.insert(lift(PrimeOps{f}, col));
        vol_ok = !ech.contains(lift(PrimeOps{f}, img));
    }
    r.add("rho(xi_1...xi_k s_w0) is a nonzero class", vol_ok, "nonzero", vol_ok ? "nonzero" : "zero", Provenance::paper);
    return r;
}

}  // namespace catdga
