#include "catdga/hecke.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <random>
#include <regex>
#include <sstream>
#include <stdexcept>

#include "catdga/cohomology.hpp"
#include "catdga/linalg.hpp"

namespace catdga {

Perm::Perm(std::vector<int> images) : w_(std::move(images)) {
    std::vector<char> seen(w_.size(), 0);
    for (int v : w_) {
        if (v < 0 || v >= size() || seen[v]) throw std::invalid_argument("not a permutation");
        seen[v] = 1;
    }
}

Perm Perm::identity(int k) {
    std::vector<int> w(k);
    std::iota(w.begin(), w.end(), 0);
    return Perm(std::move(w));
}

Perm Perm::from_word(int k, const std::vector<int>& word) {
    Perm p = identity(k);
    for (int i : word) p = p.left_swap(i);
    return p;
}

int Perm::length() const {
    int l = 0;
    for (int a = 0; a < size(); ++a)
        for (int b = a + 1; b < size(); ++b) l += w_[a] > w_[b];
    return l;
}

Perm Perm::inverse() const {
    std::vector<int> v(w_.size());
    for (int a = 0; a < size(); ++a) v[w_[a]] = a;
    return Perm(std::move(v));
}

Perm Perm::left_swap(int i) const {
    if (i < 1 || i >= size()) throw std::out_of_range("simple reflection index out of range");
    std::vector<int> v = w_;
    for (int& x : v) {
        if (x == i - 1)
            x = i;
        else if (x == i)
            x = i - 1;
    }
    return Perm(std::move(v));
}

bool Perm::left_swap_increases(int i) const {
    Perm inv = inverse();
    return inv(i - 1) < inv(i);
}

std::vector<int> Perm::lehmer_code() const {
    std::vector<int> c(w_.size(), 0);
    for (int a = 0; a < size(); ++a)
        for (int b = a + 1; b < size(); ++b) c[a] += w_[b] < w_[a];
    return c;
}

std::vector<int> Perm::reduced_word(bool lex_max) const {
    // w = s_{i_l} o ... o s_{i_1}; the first letter is a right descent of w.
    std::vector<int> word;
    std::vector<int> v = w_;
    for (;;) {
        int pick = -1;
        for (int i = 1; i < size(); ++i)
            if (v[i - 1] > v[i]) {
                pick = i;
                if (!lex_max) break;
            }
        if (pick < 0) break;
        word.push_back(pick);
        std::swap(v[pick - 1], v[pick]);
    }
    return word;
}

std::vector<Perm> all_perms(int k) {
    std::vector<Perm> out;
    std::vector<int> w(k);
    std::iota(w.begin(), w.end(), 0);
    do out.emplace_back(w);
    while (std::next_permutation(w.begin(), w.end()));
    return out;
}

HeckeExterior::HeckeExterior(int k, Field f, Scalar hbar, bool nil, bool alternate_words)
    : k_(k), f_(f), hbar_(nil ? 0 : f.reduce(hbar)), nil_(nil) {
    if (k < 0 || k > 8) throw std::invalid_argument("k out of supported range");
    if (!nil && hbar_ == 0) throw std::invalid_argument("hbar must be nonzero");
    perms_ = all_perms(k);
    int n = static_cast<int>(perms_.size());
    words_.resize(n);
    swap_.assign(n, std::vector<int>(std::max(0, k - 1)));
    increases_.assign(n, std::vector<char>(std::max(0, k - 1)));
    for (int p = 0; p < n; ++p) {
        words_[p] = perms_[p].reduced_word(alternate_words);
        for (int i = 1; i < k; ++i) {
            swap_[p][i - 1] = index_of(perms_[p].left_swap(i));
            increases_[p][i - 1] = perms_[p].left_swap_increases(i);
        }
    }
}

int HeckeExterior::index_of(const Perm& p) const {
    if (p.size() != k_) throw std::invalid_argument("permutation size mismatch");
    auto code = p.lehmer_code();
    int rank = 0;
    for (int a = 0; a < k_; ++a) rank = rank * (k_ - a) + code[a];
    return rank;
}

SparseVec HeckeExterior::right_T(const SparseVec& x, int i) const {
    if (i < 1 || i >= k_) throw std::out_of_range("T index out of range");
    const unsigned bi = 1u << (i - 1), bi1 = 1u << i;
    std::vector<Entry> raw;
    for (const auto& e : x) {
        int p = perm_index(e.index);
        unsigned m = mask(e.index);
        // sigma_i on the exterior monomial
        unsigned sm = m & ~(bi | bi1);
        if (m & bi) sm |= bi1;
        if (m & bi1) sm |= bi;
        Scalar c = ((m & bi) && (m & bi1)) ? f_.neg(e.value) : e.value;
        int q = swap_[p][i - 1];
        if (increases_[p][i - 1]) {
            raw.push_back({id(q, sm), c});
        } else if (!nil_) {
            raw.push_back({id(q, sm), c});
            raw.push_back({id(p, sm), f_.mul(c, hbar_)});
        }
        // hbar T_w D_i(xi_A), D_i(xi_A) = [i+1 in A](xi_A - [i not in A] xi_{A-(i+1)+i})
        if (!nil_ && (m & bi1)) {
            Scalar h = f_.mul(e.value, hbar_);
            raw.push_back({id(p, m), h});
            if (!(m & bi)) raw.push_back({id(p, (m & ~bi1) | bi), f_.neg(h)});
        }
    }
    return canonical(f_, std::move(raw));
}

SparseVec HeckeExterior::right_Tinv(const SparseVec& x, int i) const {
    SparseVec y = right_T(x, i);
    if (!nil_) axpy(f_, y, f_.neg(hbar_), x);
    return y;
}

SparseVec HeckeExterior::right_xi(const SparseVec& x, int j) const {
    if (j < 1 || j > k_) throw std::out_of_range("xi index out of range");
    const unsigned b = 1u << (j - 1);
    std::vector<Entry> raw;
    for (const auto& e : x) {
        unsigned m = mask(e.index);
        if (m & b) continue;
        int above = std::popcount(m >> j);
        raw.push_back({id(perm_index(e.index), m | b), (above & 1) ? f_.neg(e.value) : e.value});
    }
    return canonical(f_, std::move(raw));
}

SparseVec HeckeExterior::product(int a, int b) const {
    SparseVec x = unit_vector(a);
    for (int i : words_[perm_index(b)]) {
        x = right_T(x, i);
        if (x.empty()) return x;
    }
    unsigned m = mask(b);
    for (int j = 1; j <= k_ && !x.empty(); ++j)
        if (m & (1u << (j - 1))) x = right_xi(x, j);
    return x;
}

SparseVec HeckeExterior::product(const SparseVec& x, const SparseVec& y) const {
    SparseVec out;
    for (const auto& a : x)
        for (const auto& b : y) axpy(f_, out, f_.mul(a.value, b.value), product(a.index, b.index));
    return out;
}

SparseVec HeckeExterior::diff(int a) const {
    const auto& w = words_[perm_index(a)];
    SparseVec out;
    SparseVec prefix = unit_vector(id(0, 0));
    for (std::size_t p = 0; p < w.size(); ++p) {
        int i = w[p];
        SparseVec term = sub(f_, right_xi(prefix, i), right_xi(prefix, i + 1));
        for (std::size_t r = p + 1; r < w.size() && !term.empty(); ++r) term = right_T(term, w[r]);
        axpy(f_, out, 1, term);
        prefix = right_T(prefix, i);
    }
    unsigned m = mask(a);
    for (int j = 1; j <= k_ && !out.empty(); ++j)
        if (m & (1u << (j - 1))) out = right_xi(out, j);
    return out;
}

int HeckeExterior::cohdeg(int i) const { return std::popcount(mask(i)); }

int HeckeExterior::qdeg(int i) const { return -2 * (perms_[perm_index(i)].length() + cohdeg(i)); }

std::string HeckeExterior::label(int i) const {
    // Labels always use the lexicographically minimal word.
    auto w = perms_[perm_index(i)].reduced_word(false);
    unsigned m = mask(i);
    std::ostringstream os;
    if (!w.empty()) {
        os << (nil_ ? "s(" : "T(");
        for (std::size_t a = 0; a < w.size(); ++a) os << (a ? "," : "") << w[a];
        os << ")";
    }
    if (m) {
        os << "xi(";
        bool first = true;
        for (int j = 1; j <= k_; ++j)
            if (m & (1u << (j - 1))) {
                os << (first ? "" : ",") << j;
                first = false;
            }
        os << ")";
    }
    std::string s = os.str();
    return s.empty() ? "1" : s;
}

std::vector<HeckeSymbol> parse_hecke_word(const std::string& text) {
    static const std::regex tok(R"((T|t|x|xi|s)(\d+)(\^-1)?)");
    std::vector<HeckeSymbol> out;
    std::istringstream is(text);
    std::string t;
    while (is >> t) {
        std::smatch m;
        if (!std::regex_match(t, m, tok)) throw std::invalid_argument("bad word symbol '" + t + "'");
        std::string kind = m[1];
        int idx = std::stoi(m[2]);
        bool inv = m[3].matched;
        if (kind == "x" || kind == "xi") {
            if (inv) throw std::invalid_argument("xi is not invertible");
            out.push_back({HeckeSymbol::xi, idx});
        } else if (kind == "t" || inv) {
            out.push_back({HeckeSymbol::Tinv, idx});
        } else {
            out.push_back({HeckeSymbol::T, idx});
        }
    }
    return out;
}

SparseVec normal_form(const HeckeExterior& h, const std::vector<HeckeSymbol>& word) {
    SparseVec x = unit_vector(h.id(0, 0));
    for (const auto& s : word) {
        switch (s.kind) {
            case HeckeSymbol::T:
                if (s.index < 1 || s.index >= h.k()) throw std::invalid_argument("T index out of range");
                x = h.right_T(x, s.index);
                break;
            case HeckeSymbol::Tinv:
                if (s.index < 1 || s.index >= h.k()) throw std::invalid_argument("T index out of range");
                x = h.right_Tinv(x, s.index);
                break;
            case HeckeSymbol::xi:
                if (s.index < 1 || s.index > h.k()) throw std::invalid_argument("xi index out of range");
                x = h.right_xi(x, s.index);
                break;
        }
    }
    return x;
}

DgAlgebra algebra_from_engine(const HeckeExterior& h, const std::string& name, const BuildOptions& opt) {
    DgAlgebra a(name, h.field());
    if (!h.nil()) a.set_hbar(h.hbar());
    int n = h.dim();
    for (int i = 0; i < n; ++i) {
        BasisElement b{h.label(i), h.cohdeg(i), std::nullopt};
        if (h.nil()) b.qdeg = h.qdeg(i);
        a.add_basis(b, 0, 0);
    }
    a.add_idempotent({h.id(0, 0)});
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    if (opt.shuffle_seed) {
        std::mt19937_64 rng(*opt.shuffle_seed);
        std::shuffle(order.begin(), order.end(), rng);
    }
    for (int i : order) {
        for (int j : order) {
            SparseVec v = h.product(i, j);
            if (!v.empty()) a.set_product(i, j, std::move(v));
        }
        a.set_diff(i, h.diff(i));
    }
    return a;
}

DgAlgebra build_rk(int k, const Field& f, Scalar hbar, const BuildOptions& opt) {
    if (f.reduce(hbar) == 0) throw std::invalid_argument("hbar must be nonzero");
    HeckeExterior h(k, f, hbar, false, opt.alternate_words);
    return algebra_from_engine(h, "R_" + std::to_string(k), opt);
}

DgAlgebra build_rk_nil(int k, const Field& f, const BuildOptions& opt) {
    HeckeExterior h(k, f, 0, true, opt.alternate_words);
    return algebra_from_engine(h, "R_" + std::to_string(k) + "^nil", opt);
}

namespace {

SparseVec apply_diff(const HeckeExterior& h, const SparseVec& x) {
    SparseVec out;
    for (const auto& e : x) axpy(h.field(), out, e.value, h.diff(e.index));
    return out;
}

struct HCache {
    const HeckeExterior& h;
    std::map<std::pair<int, int>, SparseVec> memo;

    SparseVec get(int kk, int i) {
        if (kk < 1 || i <= 0 || i >= 2 * kk) return {};
        auto key = std::make_pair(kk, i);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        SparseVec r;
        if (kk == 1) {
            r = h.right_xi(unit_vector(h.id(0, 0)), 1);
        } else {
            const Field& F = h.field();
            int t = kk - 1;
            SparseVec Tinv = h.right_Tinv(unit_vector(h.id(0, 0)), t);
            r = get(t, i);
            axpy(F, r, F.neg(1), h.product(Tinv, get(t, i - 1)));
            axpy(F, r, 1, h.right_T(get(t, i - 1), t));
            axpy(F, r, F.neg(1), h.right_T(h.product(Tinv, get(t, i - 2)), t));
        }
        memo[key] = r;
        return r;
    }
};

}  // namespace

SparseVec h_element(const HeckeExterior& h, int kk, int i) {
    if (kk > h.k()) throw std::invalid_argument("h_{k,i} needs k at most the engine rank");
    HCache c{h, {}};
    return c.get(kk, i);
}

Report verify_h_closed(int k, const Field& f, Scalar hbar) {
    Report r;
    r.suite = "h_closed";
    r.parameters = {{"k", std::to_string(k)}, {"field", f.describe()}, {"hbar", f.format(f.reduce(hbar))}};
    HeckeExterior h(k, f, hbar, false);
    HCache c{h, {}};
    for (int i = 1; i <= k; ++i) {
        SparseVec d = apply_diff(h, c.get(k, i));
        r.add("d(h_{" + std::to_string(k) + "," + std::to_string(i) + "}) = 0", d.empty(), "0",
              d.empty() ? "0" : std::to_string(d.size()) + " nonzero terms", Provenance::paper);
    }
    SparseVec xk = k >= 1 ? h.right_xi(unit_vector(h.id(0, 0)), k) : SparseVec{};
    for (int i = 1; i <= 2 * k - 1; ++i) {
        SparseVec lhs = apply_diff(h, c.get(k, i));
        SparseVec prev = c.get(k, i - 1);
        SparseVec rhs = add(f, h.product(xk, prev), h.product(prev, xk));
        bool ok = lhs == rhs;
        r.add("d(h_{k," + std::to_string(i) + "}) = xi_k h_{k," + std::to_string(i - 1) + "} + h_{k," +
                  std::to_string(i - 1) + "} xi_k",
              ok, "equal", ok ? (lhs.empty() ? "equal (both 0)" : "equal (nonzero)") : "differ", Provenance::paper);
    }
    return r;
}

Report verify_formality_conjecture(int k, bool nil, const Field& f, Scalar hbar) {
    if (!f.is_prime()) throw std::invalid_argument("formality check runs over a prime field");
    if (f.characteristic() == 2) throw std::invalid_argument("formality check requires characteristic other than 2");
    Report r;
    r.suite = nil ? "formality_nil" : "formality";
    r.parameters = {{"k", std::to_string(k)}, {"field", f.describe()}};
    if (!nil) r.parameters.push_back({"hbar", f.format(f.reduce(hbar))});
    HeckeExterior h(k, f, hbar, nil);
    DgAlgebra a = algebra_from_engine(h, nil ? "R_k^nil" : "R_k", {});
    CohomologyRing ring(a);
    HCache c{h, {}};
    std::vector<SparseVec> hs(k + 1), cls(k + 1);
    for (int i = 1; i <= k; ++i) {
        hs[i] = c.get(k, i);
        cls[i] = ring.class_of(hs[i]);
    }
    // (a) monomials in the classes span H and are independent.
    std::vector<SparseVec> monos;
    for (unsigned s = 0; s < (1u << k); ++s) {
        SparseVec m = ring.class_of(a.unit());
        for (int i = 1; i <= k; ++i)
            if (s & (1u << (i - 1))) m = ring.product_of(m, cls[i]);
        monos.push_back(m);
    }
    std::size_t rank = mat_rank(SparseMatrix::from_columns(ring.dim(), monos), f);
    r.add("dim H", ring.dim() == (1 << k), std::to_string(1 << k), std::to_string(ring.dim()), Provenance::paper);
    r.add("monomials in [h_{k,i}] form a basis of H", static_cast<int>(rank) == ring.dim() && ring.dim() == (1 << k),
          std::to_string(1 << k), std::to_string(rank), Provenance::paper);
    bool ext = true;
    for (int i = 1; i <= k; ++i)
        for (int j = i; j <= k; ++j) {
            SparseVec s = add(f, ring.product_of(cls[i], cls[j]), ring.product_of(cls[j], cls[i]));
            if (!s.empty()) ext = false;
        }
    r.add("[h_i][h_j] + [h_j][h_i] = 0 in H", ext, "0", ext ? "0" : "nonzero", Provenance::paper);
    if (nil) {
        std::map<Bidegree, int> expect;
        for (unsigned s = 0; s < (1u << k); ++s) {
            int q = 0;
            for (int i = 1; i <= k; ++i)
                if (s & (1u << (i - 1))) q -= 2 * i;
            ++expect[{std::popcount(s), q}];
        }
        auto got = ring.dims();
        auto fmt = [](const std::map<Bidegree, int>& m) {
            std::ostringstream os;
            for (auto& [d, n] : m) os << "(" << d.first << "," << d.second << "):" << n << " ";
            return os.str();
        };
        r.add("bigraded dims of H", got == expect, fmt(expect), fmt(got), Provenance::paper);
    }
    // (b) chain level.
    bool sq = true, anti = true;
    for (int i = 1; i <= k; ++i) {
        if (!h.product(hs[i], hs[i]).empty()) sq = false;
        for (int j = i + 1; j <= k; ++j)
            if (!add(f, h.product(hs[i], hs[j]), h.product(hs[j], hs[i])).empty()) anti = false;
    }
    if (k <= 2 && !nil) {
        r.add("chain level h_{k,i}^2 = 0", sq, "0", sq ? "0" : "nonzero", Provenance::paper);
        r.add("chain level h_{k,i}h_{k,j} = -h_{k,j}h_{k,i}", anti, "0", anti ? "0" : "nonzero", Provenance::paper);
    } else {
        r.info("chain level h_{k,i}^2 = 0", sq ? "holds" : "fails");
        r.info("chain level h_{k,i}h_{k,j} = -h_{k,j}h_{k,i}", anti ? "holds" : "fails");
    }
    return r;
}

Report verify_filtration(int k, const Field& f, Scalar hbar) {
    Report r;
    r.suite = "filtration";
    r.parameters = {{"k", std::to_string(k)}, {"field", f.describe()}};
    HeckeExterior full(k, f, hbar, false), nil(k, f, 0, true);
    bool filtered = true, leading = true, dq = true;
    long long mismatches = 0;
    for (int a = 0; a < full.dim(); ++a) {
        for (int b = 0; b < full.dim(); ++b) {
            int q = nil.qdeg(a) + nil.qdeg(b);
            SparseVec lead;
            for (const auto& e : full.product(a, b)) {
                int qe = nil.qdeg(e.index);
                if (qe < q) filtered = false;
                if (qe == q) lead.push_back(e);
            }
            if (lead != nil.product(a, b)) {
                leading = false;
                ++mismatches;
            }
        }
        SparseVec dlead;
        for (const auto& e : full.diff(a)) {
            if (nil.qdeg(e.index) < nil.qdeg(a)) filtered = false;
            if (nil.qdeg(e.index) == nil.qdeg(a)) dlead.push_back(e);
        }
        if (dlead != nil.diff(a)) dq = false;
    }
    r.add("products lie in the q-filtration", filtered, "yes", filtered ? "yes" : "no", Provenance::paper);
    r.add("leading q-terms equal the nil table", leading, "0 mismatches", std::to_string(mismatches) + " mismatches",
          Provenance::derived);
    r.add("leading terms of d equal the nil differential", dq, "equal", dq ? "equal" : "differ", Provenance::paper);
    return r;
}

}  // namespace catdga
