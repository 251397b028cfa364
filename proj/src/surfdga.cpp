#include "catdga/surfdga.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <deque>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include "catdga/linalg.hpp"
#include "catdga/strands.hpp"

namespace catdga {

std::size_t WordHash::operator()(const Word& w) const {
    std::size_t h = w.size();
    for (int x : w) h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

int Presentation::add_vertex(std::string name) {
    vertices.push_back(std::move(name));
    return static_cast<int>(vertices.size()) - 1;
}

int Presentation::add_letter(Letter l) {
    letters.push_back(std::move(l));
    rank.push_back(static_cast<int>(rank.size()));
    differential.emplace_back();
    return static_cast<int>(letters.size()) - 1;
}

void Presentation::add_relation(std::vector<Word> terms, std::string tag) {
    relations.push_back(std::move(terms));
    relation_tags.push_back(std::move(tag));
}

namespace {

Word concat(const Word& a, const Word& b, const Word& c = {}) {
    Word w;
    w.reserve(a.size() + b.size() + c.size());
    w.insert(w.end(), a.begin(), a.end());
    w.insert(w.end(), b.begin(), b.end());
    w.insert(w.end(), c.begin(), c.end());
    return w;
}

bool contains_at(const Word& w, const Word& sub, std::size_t pos) {
    return pos + sub.size() <= w.size() && std::equal(sub.begin(), sub.end(), w.begin() + pos);
}

bool contains(const Word& w, const Word& sub) {
    if (sub.size() > w.size()) return false;
    for (std::size_t p = 0; p + sub.size() <= w.size(); ++p)
        if (contains_at(w, sub, p)) return true;
    return false;
}

}  // namespace

Rewriter::Rewriter(const Presentation& p, RewriteLimits lim, std::optional<std::uint64_t> shuffle_seed)
    : p_(&p), lim_(lim) {
    for (const auto& rel : p.relations)
        for (const auto& w : rel)
            for (std::size_t t = 0; t + 1 < w.size(); ++t)
                if (p.letters[w[t]].target != p.letters[w[t + 1]].source)
                    throw std::invalid_argument("relation term is not a path");
    complete(shuffle_seed);
}

bool Rewriter::less(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
        int ra = p_->rank[a[i]], rb = p_->rank[b[i]];
        if (ra != rb) return ra < rb;
    }
    return false;
}

std::optional<Rewriter::Match> Rewriter::find_match(const Word& w, int from) const {
    for (std::size_t pos = from; pos < w.size(); ++pos)
        for (const auto& [len, cnt] : lengths_) {
            if (pos + len > w.size()) break;
            Word sub(w.begin() + pos, w.begin() + pos + len);
            auto it = index_.find(sub);
            if (it != index_.end()) return Match{it->second, static_cast<int>(pos)};
        }
    return std::nullopt;
}

bool Rewriter::has_suffix_match(const Word& w) const {
    for (const auto& [len, cnt] : lengths_) {
        if (static_cast<std::size_t>(len) > w.size()) break;
        Word sub(w.end() - len, w.end());
        if (index_.count(sub)) return true;
    }
    return false;
}

Poly Rewriter::reduce(std::vector<Word> terms) const {
    auto cmp = [this](const Word& a, const Word& b) { return less(a, b); };
    std::set<Word, decltype(cmp)> work(cmp);
    auto toggle = [&](Word w) {
        auto [it, inserted] = work.insert(std::move(w));
        if (!inserted) work.erase(it);
    };
    for (auto& t : terms) toggle(std::move(t));
    Poly out;
    while (!work.empty()) {
        auto it = std::prev(work.end());
        Word w = *it;
        work.erase(it);
        auto m = find_match(w);
        if (!m) {
            out.push_back(std::move(w));
            continue;
        }
        const Word& lead = leads_[m->rule];
        Word pre(w.begin(), w.begin() + m->pos), post(w.begin() + m->pos + lead.size(), w.end());
        for (const auto& t : tails_[m->rule]) toggle(concat(pre, t, post));
    }
    return out;
}

void Rewriter::insert(Poly p, std::vector<Poly>& pending) {
    Poly r = reduce(std::move(p));
    if (r.empty()) return;
    Word lead = r.front();
    if (static_cast<int>(lead.size()) > lim_.max_word_length)
        throw std::runtime_error("rewriting did not terminate: leading word longer than the cap");
    Poly tail(r.begin() + 1, r.end());
    for (std::size_t q = 0; q < leads_.size(); ++q) {
        if (!alive_[q] || !contains(leads_[q], lead)) continue;
        alive_[q] = 0;
        index_.erase(leads_[q]);
        if (--lengths_[static_cast<int>(leads_[q].size())] == 0) lengths_.erase(static_cast<int>(leads_[q].size()));
        Poly back = tails_[q];
        back.insert(back.begin(), leads_[q]);
        pending.push_back(std::move(back));
    }
    index_[lead] = static_cast<int>(leads_.size());
    ++lengths_[static_cast<int>(lead.size())];
    leads_.push_back(std::move(lead));
    tails_.push_back(std::move(tail));
    alive_.push_back(1);
    if (static_cast<int>(index_.size()) > lim_.max_rules)
        throw std::runtime_error("rewriting did not terminate: rule count above the cap");
}

void Rewriter::complete(std::optional<std::uint64_t> seed) {
    std::vector<Poly> pending(p_->relations.begin(), p_->relations.end());
    std::mt19937_64 rng(seed.value_or(0));
    if (seed) std::shuffle(pending.begin(), pending.end(), rng);
    std::deque<std::pair<int, int>> pairs;
    std::size_t seen = 0;
    while (true) {
        while (!pending.empty()) {
            Poly p = std::move(pending.back());
            pending.pop_back();
            insert(std::move(p), pending);
        }
        // pairs for every rule added since the last round
        for (; seen < leads_.size(); ++seen) {
            std::vector<std::pair<int, int>> fresh;
            for (std::size_t q = 0; q <= seen; ++q) {
                fresh.push_back({static_cast<int>(seen), static_cast<int>(q)});
                if (q != seen) fresh.push_back({static_cast<int>(q), static_cast<int>(seen)});
            }
            if (seed) std::shuffle(fresh.begin(), fresh.end(), rng);
            pairs.insert(pairs.end(), fresh.begin(), fresh.end());
        }
        if (pairs.empty()) break;
        auto [a, b] = pairs.front();
        pairs.pop_front();
        if (!alive_[a] || !alive_[b]) continue;
        const Word& A = leads_[a];
        const Word& B = leads_[b];
        std::size_t lim = std::min(A.size(), B.size());
        for (std::size_t l = 1; l < lim; ++l) {
            if (!std::equal(A.end() - l, A.end(), B.begin())) continue;
            Word u(A.begin(), A.end() - l), v(B.begin() + l, B.end());
            std::vector<Word> s;
            for (const auto& t : tails_[a]) s.push_back(concat(t, v));
            for (const auto& t : tails_[b]) s.push_back(concat(u, t));
            Poly r = reduce(std::move(s));
            if (!r.empty()) pending.push_back(std::move(r));
        }
        if (!pending.empty()) continue;
    }
    for (std::size_t q = 0; q < leads_.size(); ++q)
        if (alive_[q]) tails_[q] = reduce(tails_[q]);
    // drop dead rules so that the rule list is the reduced basis
    std::vector<Word> L;
    std::vector<Poly> Tl;
    for (std::size_t q = 0; q < leads_.size(); ++q)
        if (alive_[q]) {
            L.push_back(leads_[q]);
            Tl.push_back(tails_[q]);
        }
    std::vector<int> order(L.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) { return less(L[x], L[y]); });
    leads_.clear();
    tails_.clear();
    alive_.assign(L.size(), 1);
    index_.clear();
    for (int q : order) {
        index_[L[q]] = static_cast<int>(leads_.size());
        leads_.push_back(L[q]);
        tails_.push_back(Tl[q]);
    }
}

std::vector<std::pair<Word, Poly>> Rewriter::rules() const {
    std::vector<std::pair<Word, Poly>> out;
    for (std::size_t q = 0; q < leads_.size(); ++q) out.push_back({leads_[q], tails_[q]});
    return out;
}

std::vector<std::pair<int, Word>> Rewriter::normal_words() const {
    int nv = static_cast<int>(p_->vertices.size());
    std::vector<std::vector<int>> out_letters(nv);
    for (int l = 0; l < static_cast<int>(p_->letters.size()); ++l) out_letters[p_->letters[l].source].push_back(l);
    for (auto& v : out_letters)
        std::sort(v.begin(), v.end(), [&](int x, int y) { return p_->rank[x] < p_->rank[y]; });
    std::vector<std::pair<int, Word>> out, frontier;
    for (int v = 0; v < nv; ++v) frontier.push_back({v, {}});
    out = frontier;
    while (!frontier.empty()) {
        std::vector<std::pair<int, Word>> next;
        for (const auto& [v, w] : frontier) {
            int end = w.empty() ? v : p_->letters[w.back()].target;
            for (int l : out_letters[end]) {
                Word nw = w;
                nw.push_back(l);
                if (has_suffix_match(nw)) continue;
                if (static_cast<int>(nw.size()) > lim_.max_word_length ||
                    static_cast<long long>(out.size()) >= lim_.max_normal_words)
                    throw std::runtime_error("normal words exceed the dimension cap");
                out.push_back({v, nw});
                next.push_back({v, std::move(nw)});
            }
        }
        frontier = std::move(next);
    }
    return out;
}

std::string PresentedAlgebra::word_label(int vertex, const Word& w) const {
    if (w.empty()) {
        const auto& name = pres.vertices[vertex];
        return name.empty() ? "1" : "1(" + name + ")";
    }
    std::string s;
    for (std::size_t t = 0; t < w.size(); ++t) {
        if (t) s += ' ';
        s += pres.letters[w[t]].name;
    }
    return s;
}

Element PresentedAlgebra::to_element(const Poly& p, int source) const {
    std::vector<Entry> raw;
    for (const auto& w : p) {
        if (w.empty()) {
            raw.push_back({vertex_unit.at(source), 1});
            continue;
        }
        auto it = word_index.find(w);
        if (it == word_index.end()) throw std::logic_error("word is not in normal form");
        raw.push_back({it->second, 1});
    }
    return canonical(Field::prime(2), std::move(raw));
}

Poly differential_of(const Presentation& p, const Rewriter& rw, const std::vector<Word>& terms) {
    std::vector<Word> raw;
    for (const auto& w : terms)
        for (std::size_t t = 0; t < w.size(); ++t) {
            Word pre(w.begin(), w.begin() + t), post(w.begin() + t + 1, w.end());
            for (const auto& x : p.differential[w[t]]) raw.push_back(concat(pre, x, post));
        }
    return rw.reduce(std::move(raw));
}

PresentedAlgebra build_presented(Presentation p, const std::string& name, const SurfaceOptions& opt) {
    for (std::size_t r = 0; r < p.relations.size(); ++r) {
        const auto& rel = p.relations[r];
        std::set<int> degs;
        for (const auto& w : rel) {
            int d = 0;
            for (int l : w) d += p.letters[l].cohdeg;
            degs.insert(d);
        }
        if (degs.size() > 1) throw std::invalid_argument("relation is not homogeneous: " + p.relation_tags[r]);
    }
    PresentedAlgebra out;
    out.pres = std::move(p);
    const Presentation& P = out.pres;
    Rewriter rw(P, opt.limits, opt.shuffle_seed);
    out.num_rules = rw.num_rules();
    out.words = rw.normal_words();
    DgAlgebra a(name, Field::prime(2));
    a.set_hbar(1);
    int nv = static_cast<int>(P.vertices.size());
    out.vertex_unit.assign(nv, -1);
    std::vector<int> target(out.words.size());
    for (std::size_t i = 0; i < out.words.size(); ++i) {
        const auto& [v, w] = out.words[i];
        int deg = 0;
        for (int l : w) deg += P.letters[l].cohdeg;
        target[i] = w.empty() ? v : P.letters[w.back()].target;
        int id = a.add_basis(BasisElement{out.word_label(v, w), deg, std::nullopt}, v, target[i]);
        if (w.empty())
            out.vertex_unit[v] = id;
        else
            out.word_index[w] = id;
    }
    for (int v = 0; v < nv; ++v) a.add_idempotent({out.vertex_unit[v]});
    int n = static_cast<int>(out.words.size());
    std::vector<std::vector<int>> starting(nv);
    for (int i = 0; i < n; ++i) starting[out.words[i].first].push_back(i);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    if (opt.shuffle_seed) {
        std::mt19937_64 rng(*opt.shuffle_seed ^ 0x5bd1e995ULL);
        std::shuffle(order.begin(), order.end(), rng);
    }
    for (int i : order) {
        const auto& [v, w] = out.words[i];
        for (int j : starting[target[i]]) {
            Poly r = rw.reduce({concat(w, out.words[j].second)});
            Element e = out.to_element(r, v);
            if (!e.empty()) a.set_product(i, j, std::move(e));
        }
        a.set_diff(i, out.to_element(differential_of(P, rw, {w}), v));
    }
    for (int l = 0; l < static_cast<int>(P.letters.size()); ++l) {
        out.letter_image.push_back(out.to_element(rw.reduce({{l}}), P.letters[l].source));
        out.letter_diff.push_back(out.to_element(differential_of(P, rw, {{l}}), P.letters[l].source));
    }
    out.algebra = std::move(a);
    return out;
}

// ---------------------------------------------------------------- annulus

Presentation annulus_presentation(int k) {
    if (k < 1) throw std::invalid_argument("annulus dga needs k >= 1");
    Presentation p;
    p.add_vertex("");
    std::vector<int> T(k), x(k + 1);
    for (int i = 1; i < k; ++i) T[i] = p.add_letter({"T" + std::to_string(i), 0, 0, 0, "crossing"});
    for (int j = 1; j <= k; ++j) x[j] = p.add_letter({"x" + std::to_string(j), 0, 0, 1, "dot"});
    int b = p.add_letter({"b", 0, 0, 1, "strand"});
    for (int i = 1; i < k; ++i) p.differential[T[i]] = {{x[i]}, {x[i + 1]}};

    for (int i = 1; i < k; ++i) {
        p.add_relation({{T[i], T[i]}, {}, {T[i]}}, "hecke");
        if (i + 1 < k) p.add_relation({{T[i], T[i + 1], T[i]}, {T[i + 1], T[i], T[i + 1]}}, "braid");
        for (int i2 = i + 2; i2 < k; ++i2) p.add_relation({{T[i], T[i2]}, {T[i2], T[i]}}, "far commutation");
    }
    for (int j = 1; j <= k; ++j) {
        p.add_relation({{x[j], x[j]}}, "xi square");
        for (int j2 = j + 1; j2 <= k; ++j2) p.add_relation({{x[j], x[j2]}, {x[j2], x[j]}}, "xi commute");
        for (int i = 1; i < k; ++i) {
            if (j == i)
                p.add_relation({{x[i], T[i]}, {T[i], x[i + 1]}}, "dot slide");
            else if (j == i + 1)  // x_{i+1} T_i = T_i x_i + x_i + x_{i+1} over F_2
                p.add_relation({{x[i + 1], T[i]}, {T[i], x[i]}, {x[i]}, {x[i + 1]}}, "dot slide");
            else
                p.add_relation({{x[j], T[i]}, {T[i], x[j]}}, "dot commute");
        }
        p.add_relation({{b, x[j]}, {x[j], b}}, "b xi");
    }
    p.add_relation({{b, b}}, "b square");
    for (int i = 1; i + 1 < k; ++i) p.add_relation({{b, T[i]}, {T[i], b}}, "b T");
    if (k >= 2) {
        int t = T[k - 1];
        // b T b T^{-1} = T b T^{-1} b with T^{-1} = T + 1
        p.add_relation({{b, t, b, t}, {b, t, b}, {t, b, t, b}, {t, b, b}}, "exchange");
    }
    return p;
}

PresentedAlgebra build_annulus_dga(int k, Scalar hbar, const SurfaceOptions& opt) {
    if (Field::prime(2).reduce(hbar) != 1) throw std::invalid_argument("annulus dga is defined over F_2 with hbar = 1");
    return build_presented(annulus_presentation(k), "R(A,0,a;" + std::to_string(k) + ")", opt);
}

AnnulusPbw::AnnulusPbw(int k) : k_(k), perms_(all_perms(k)) {
    if (k < 1 || k > 5) throw std::invalid_argument("PBW model supports 1 <= k <= 5");
    for (std::size_t i = 0; i < perms_.size(); ++i) perm_index_[perms_[i]] = static_cast<int>(i);
}

namespace {

unsigned swap_bits(unsigned m, int i) {
    unsigned bi = 1u << (i - 1), bi1 = 1u << i;
    unsigned s = m & ~(bi | bi1);
    if (m & bi) s |= bi1;
    if (m & bi1) s |= bi;
    return s;
}

// D_i on an exterior monomial over F_2.
std::vector<unsigned> twisted_derivation(unsigned m, int i) {
    unsigned bi = 1u << (i - 1), bi1 = 1u << i;
    if (!(m & bi1)) return {};
    std::vector<unsigned> out{m};
    if (!(m & bi)) out.push_back((m & ~bi1) | bi);
    return out;
}

}  // namespace

SparseVec AnnulusPbw::right_T(const SparseVec& x, int i) const {
    if (i < 1 || i >= k_) throw std::out_of_range("T index out of range");
    const Field F = Field::prime(2);
    const unsigned full = (1u << k_) - 1;
    std::vector<Entry> raw;
    for (const auto& e : x) {
        unsigned bm = static_cast<unsigned>(e.index) & full;
        unsigned xm = (static_cast<unsigned>(e.index) >> k_) & full;
        int p = e.index >> (2 * k_);
        unsigned sx = swap_bits(xm, i), sb = swap_bits(bm, i);
        const Perm& w = perms_[p];
        int q = perm_index_.at(w.left_swap(i));
        raw.push_back({id(q, sx, sb), 1});
        if (!w.left_swap_increases(i)) raw.push_back({id(p, sx, sb), 1});
        // D_i(xi^A b^B) = D_i(xi^A) sigma_i(b^B) + xi^A D_i(b^B)
        for (unsigned a : twisted_derivation(xm, i)) raw.push_back({id(p, a, sb), 1});
        for (unsigned c : twisted_derivation(bm, i)) raw.push_back({id(p, xm, c), 1});
    }
    return canonical(F, std::move(raw));
}

SparseVec AnnulusPbw::right_xi(const SparseVec& x, int j) const {
    std::vector<Entry> raw;
    unsigned bit = 1u << (j - 1 + k_);
    for (const auto& e : x)
        if (!(static_cast<unsigned>(e.index) & bit)) raw.push_back({static_cast<int>(static_cast<unsigned>(e.index) | bit), 1});
    return canonical(Field::prime(2), std::move(raw));
}

SparseVec AnnulusPbw::right_b(const SparseVec& x, int j) const {
    std::vector<Entry> raw;
    unsigned bit = 1u << (j - 1);
    for (const auto& e : x)
        if (!(static_cast<unsigned>(e.index) & bit)) raw.push_back({static_cast<int>(static_cast<unsigned>(e.index) | bit), 1});
    return canonical(Field::prime(2), std::move(raw));
}

SparseVec AnnulusPbw::image(const Presentation& p, const Word& w) const {
    auto trailing = [](const std::string& nm) {
        std::size_t e = nm.size();
        while (e > 0 && std::isdigit(static_cast<unsigned char>(nm[e - 1]))) --e;
        return std::stoi(nm.substr(e));
    };
    SparseVec v = unit();
    for (int l : w) {
        const auto& L = p.letters[l];
        if (L.kind == "strand")
            v = right_b(v, k_);
        else if (L.kind == "crossing")
            v = right_T(v, trailing(L.name));
        else if (L.kind == "dot")
            v = right_xi(v, trailing(L.name));
        else
            throw std::invalid_argument("no PBW image for letter " + L.name);
        if (v.empty()) break;
    }
    return v;
}

Report compare_annulus_with_pbw(const PresentedAlgebra& a, int k) {
    Report r;
    r.suite = "annulus-pbw";
    r.parameters = {{"k", std::to_string(k)}};
    AnnulusPbw m(k);
    const Field F = Field::prime(2);
    bool rel_ok = true;
    std::string bad;
    for (std::size_t q = 0; q < a.pres.relations.size(); ++q) {
        SparseVec s;
        for (const auto& w : a.pres.relations[q]) axpy(F, s, 1, m.image(a.pres, w));
        if (!s.empty() && rel_ok) {
            rel_ok = false;
            bad = a.pres.relation_tags[q];
        }
    }
    r.add("relations vanish in the PBW model", rel_ok, "all", rel_ok ? "all" : "fails: " + bad);
    std::vector<SparseVec> cols;
    for (const auto& [v, w] : a.words) cols.push_back(m.image(a.pres, w));
    auto rank = mat_rank(SparseMatrix::from_columns(m.dim(), cols), F);
    r.add("normal words map to a basis", rank == cols.size() && rank == static_cast<std::size_t>(m.dim()),
          std::to_string(m.dim()), std::to_string(rank) + " of " + std::to_string(cols.size()));
    return r;
}

namespace {

Poly times(const Poly& a, const Poly& b) {
    Poly out;
    for (const auto& x : a)
        for (const auto& y : b) out.push_back(concat(x, y));
    return out;
}

Poly letter_poly(int l) { return {{l}}; }
Poly inverse_poly(int l) { return {{l}, {}}; }  // T^{-1} = T + 1 over F_2

// Coordinates of a sum of words, evaluated through the algebra's products.
Element evaluate(const PresentedAlgebra& a, const Word& w) {
    const Field F = Field::prime(2);
    int src = w.empty() ? -1 : a.pres.letters[w.front()].source;
    if (src < 0) throw std::invalid_argument("cannot evaluate the empty word without a vertex");
    Element v = a.letter_image[w.front()];
    for (std::size_t t = 1; t < w.size() && !v.empty(); ++t) v = a.algebra.multiply(v, a.letter_image[w[t]]);
    return canonical(F, std::move(v));
}

// Leibniz extension of d on a word, evaluated in the algebra.
Element leibniz(const PresentedAlgebra& a, const Word& w) {
    const Field F = Field::prime(2);
    Element out;
    for (std::size_t t = 0; t < w.size(); ++t) {
        Element v;
        bool started = false;
        for (std::size_t u = 0; u < w.size(); ++u) {
            const Element& f = u == t ? a.letter_diff[w[u]] : a.letter_image[w[u]];
            v = started ? a.algebra.multiply(v, f) : f;
            started = true;
            if (v.empty()) break;
        }
        axpy(F, out, 1, v);
    }
    return out;
}

}  // namespace

Report check_annulus_examples(const Field& f) {
    Report r;
    r.suite = "annulus-examples";
    if (f.characteristic() != 2) throw std::invalid_argument("the annulus dga is defined over F_2");
    const Field F = Field::prime(2);

    auto a1 = build_annulus_dga(1);
    std::map<int, int> dims;
    for (const auto& b : a1.algebra.basis()) ++dims[b.cohdeg];
    r.add("k=1 dimension", a1.algebra.dim() == 4, "4", std::to_string(a1.algebra.dim()), Provenance::paper);
    std::string got = std::to_string(dims[0]) + "," + std::to_string(dims[1]) + "," + std::to_string(dims[2]);
    r.add("k=1 graded dimensions", got == "1,2,1", "1,2,1", got, Provenance::paper);
    const auto& P1 = a1.pres;
    auto find_letter = [](const Presentation& p, const std::string& name) {
        for (int l = 0; l < static_cast<int>(p.letters.size()); ++l)
            if (p.letters[l].name == name) return l;
        throw std::logic_error("missing letter " + name);
    };
    int b = find_letter(P1, "b"), x = find_letter(P1, "x1");
    Element bb = evaluate(a1, {b, b}), xx = evaluate(a1, {x, x});
    Element bx = evaluate(a1, {b, x}), xb = evaluate(a1, {x, b});
    bool ring = bb.empty() && xx.empty() && bx == xb && !bx.empty();
    r.add("k=1 ring F[b,xi]/(b^2, xi^2, b xi + xi b)", ring, "b^2=xi^2=0, b xi = xi b != 0",
          ring ? "b^2=xi^2=0, b xi = xi b != 0" : "differs", Provenance::paper);

    auto a2 = build_annulus_dga(2);
    const auto& P2 = a2.pres;
    int T = find_letter(P2, "T1"), b2 = find_letter(P2, "b");
    int dotless = 0;
    for (const auto& [v, w] : a2.words)
        if (std::none_of(w.begin(), w.end(), [&](int l) { return P2.letters[l].kind == "dot"; })) ++dotless;
    r.add("k=2 dotless normal words", dotless == 8, "8", std::to_string(dotless), Provenance::paper);
    // 1, T, b, Tb, bT^-1, TbT^-1, bTb, bTbT^-1
    std::vector<Poly> listed = {{{}},
                                {{T}},
                                {{b2}},
                                {{T, b2}},
                                times({{b2}}, inverse_poly(T)),
                                times({{T, b2}}, inverse_poly(T)),
                                {{b2, T, b2}},
                                times({{b2, T, b2}}, inverse_poly(T))};
    std::vector<SparseVec> cols;
    bool dot_free = true;
    for (const auto& poly : listed) {
        Element e;
        for (const auto& w : poly) axpy(F, e, 1, w.empty() ? unit_vector(a2.vertex_unit[0]) : evaluate(a2, w));
        for (const auto& t : e) {
            const auto& [v, w] = a2.words[t.index];
            if (std::any_of(w.begin(), w.end(), [&](int l) { return P2.letters[l].kind == "dot"; })) dot_free = false;
        }
        cols.push_back(e);
    }
    auto rank = mat_rank(SparseMatrix::from_columns(a2.algebra.dim(), cols), F);
    r.add("k=2 listed elements form a basis of the dotless part", rank == 8 && dot_free, "rank 8",
          "rank " + std::to_string(rank) + (dot_free ? "" : ", has dots"), Provenance::paper);
    r.add("k=2 dimension = 8 x 4", a2.algebra.dim() == 32, "32", std::to_string(a2.algebra.dim()));
    for (int k = 1; k <= 2; ++k) r.merge(compare_annulus_with_pbw(k == 1 ? a1 : a2, k), "k=" + std::to_string(k) + " ");
    return r;
}

// ---------------------------------------------------------------- arc diagrams

ArcDiagram ArcDiagram::make(std::vector<int> segments, std::vector<std::pair<int, int>> matching, int n_singular) {
    ArcDiagram d;
    d.segments = std::move(segments);
    d.matching = std::move(matching);
    d.n_singular = n_singular;
    if (n_singular < 0) throw std::invalid_argument("negative number of singular points");
    if (d.segments.empty()) throw std::invalid_argument("an arc diagram needs a segment");
    for (int c : d.segments)
        if (c < 1) throw std::invalid_argument("every segment carries a point");
    int total = d.num_points();
    if (total != n_singular + 2 * d.s()) throw std::invalid_argument("need n + 2s marked points");
    std::vector<int> seen(total + 1, 0);
    for (auto& [a, b] : d.matching) {
        if (a > b) std::swap(a, b);
        if (a <= n_singular || b > total || a == b) throw std::invalid_argument("matching must pair distinct points after the singular ones");
        if (seen[a]++ || seen[b]++) throw std::invalid_argument("matching is not 2-to-1");
    }
    int need = d.s() ? n_singular + 1 : n_singular;
    if (need > d.segments[0]) throw std::invalid_argument("the points a_1..a_{n+1} must lie on Z_1");
    return d;
}

int ArcDiagram::num_points() const { return std::accumulate(segments.begin(), segments.end(), 0); }

int ArcDiagram::segment_of(int point) const {
    int acc = 0;
    for (int z = 0; z < static_cast<int>(segments.size()); ++z) {
        acc += segments[z];
        if (point <= acc) return z + 1;
    }
    throw std::out_of_range("no such point");
}

int ArcDiagram::arc_of(int point) const {
    if (point < 1 || point > num_points()) throw std::out_of_range("no such point");
    if (point <= n_singular) return point;
    for (int j = 0; j < s(); ++j)
        if (matching[j].first == point || matching[j].second == point) return n_singular + j + 1;
    throw std::logic_error("unmatched point");
}

int ArcDiagram::degree_of(int point) const {
    if (point <= n_singular) return 0;
    return pair_of(arc_of(point) - n_singular).second == point ? 1 : 0;
}

std::pair<int, int> ArcDiagram::pair_of(int j) const { return matching.at(j - 1); }

std::vector<ArcDiagram::Primitive> ArcDiagram::primitives() const {
    std::vector<Primitive> out;
    for (int x = n_singular + 1; x < num_points(); ++x)
        if (segment_of(x) == segment_of(x + 1)) out.push_back({x, x + 1, degree_of(x + 1) - degree_of(x)});
    return out;
}

int ArcDiagram::arc_point_n1() const {
    if (s() == 0) throw std::logic_error("no matched points");
    return arc_of(n_singular + 1);
}

ArcDiagram ArcDiagram::annulus() { return make({2}, {{1, 2}}, 0); }
ArcDiagram ArcDiagram::torus() { return make({6}, {{3, 5}, {4, 6}}, 2); }
ArcDiagram ArcDiagram::disk(int n) { return make({n}, {}, n); }

std::vector<std::vector<int>> arc_states(const ArcDiagram& d, int k) {
    int arcs = d.num_arcs();
    std::vector<std::vector<int>> out;
    std::vector<int> seq;
    std::function<void(int)> rec = [&](int lo) {
        if (static_cast<int>(seq.size()) == k) {
            std::vector<int> e(arcs, 0);
            for (int a : seq) ++e[a - 1];
            out.push_back(e);
            return;
        }
        for (int a = lo; a <= arcs; ++a) {
            if (a <= d.n_singular && !seq.empty() && seq.back() == a) continue;
            seq.push_back(a);
            rec(a);
            seq.pop_back();
        }
    };
    if (k < 0) throw std::invalid_argument("negative k");
    rec(1);
    return out;
}

std::string state_label(const std::vector<int>& state) {
    std::string s;
    for (std::size_t a = 0; a < state.size(); ++a) {
        if (!state[a]) continue;
        s += "a" + std::to_string(a + 1);
        if (state[a] > 1) s += "^" + std::to_string(state[a]);
    }
    return s.empty() ? "1" : s;
}

// ---------------------------------------------------------------- surface

namespace {

// Copies of each matched arc, bottom to top, tagged by strand.
struct Config {
    int state;
    std::vector<std::vector<int>> stacks;
};

class SurfaceBuilder {
public:
    struct RInfo {
        int st, g, to;
        bool arrives;
    };

    SurfaceBuilder(const ArcDiagram& d, int k) : d_(d), n_(d.n_singular), s_(d.s()), k_(k) {
        if (k < 0) throw std::invalid_argument("negative k");
        prims_ = d.primitives();
        j0_ = s_ ? d.arc_point_n1() - n_ - 1 : -1;
        states_ = arc_states(d, k);
        for (std::size_t i = 0; i < states_.size(); ++i) {
            state_id_[states_[i]] = static_cast<int>(i);
            p.add_vertex(state_label(states_[i]));
        }
        add_letters();
        add_relations();
    }

    Presentation p;

private:
    int copies(int st, int jj) const { return states_[st][n_ + jj]; }
    Subset sing(int st) const {
        Subset S;
        for (int a = 0; a < n_; ++a)
            if (states_[st][a]) S.push_back(a + 1);
        return S;
    }
    int shifted(int st, int minus_arc, int plus_arc) const {
        auto v = states_[st];
        --v[minus_arc];
        ++v[plus_arc];
        return state_id_.at(v);
    }
    int prim_arc(int point) const { return d_.arc_of(point) - n_ - 1; }

    const StrandAlgebra& strands(int K) {
        auto it = rnk_.find(K);
        if (it == rnk_.end()) it = rnk_.emplace(K, build_rnk(n_ + 1, K, Field::prime(2), StrandOptions{1, std::nullopt})).first;
        return it->second;
    }

    int T(int st, int jj, int t) const { return T_.at({st, jj, t}); }
    int X(int st, int jj, int t) const { return X_.at({st, jj, t}); }

    void add_letters() {
        int ns = static_cast<int>(states_.size());
        std::string arcs;
        for (int st = 0; st < ns; ++st)
            for (int jj = 0; jj < s_; ++jj)
                for (int t = 1; t < copies(st, jj); ++t)
                    T_[{st, jj, t}] = p.add_letter({"T(" + p.vertices[st] + ";a" + std::to_string(n_ + jj + 1) + ")_" + std::to_string(t),
                                                    st, st, 0, "crossing"});
        for (int st = 0; st < ns; ++st)
            for (int jj = 0; jj < s_; ++jj)
                for (int t = 1; t <= copies(st, jj); ++t)
                    X_[{st, jj, t}] = p.add_letter({"xi(" + p.vertices[st] + ";a" + std::to_string(n_ + jj + 1) + ")_" + std::to_string(t),
                                                    st, st, 1, "dot"});
        for (int st = 0; st < ns; ++st)
            for (int q = 0; q < static_cast<int>(prims_.size()); ++q) {
                int jj = prim_arc(prims_[q].from), jt = prim_arc(prims_[q].to);
                if (!copies(st, jj)) continue;
                int to = shifted(st, n_ + jj, n_ + jt);
                B_[{st, q}] = p.add_letter({"b(" + p.vertices[st] + "," + p.vertices[to] + ")_p" + std::to_string(q + 1), st, to,
                                            prims_[q].degree, "strand"});
            }
        for (int st = 0; st < ns; ++st) {
            Subset S = sing(st);
            if (S.empty()) continue;
            const auto& A = strands(static_cast<int>(S.size()));
            for (int g = 0; g < static_cast<int>(A.gens.size()); ++g) {
                const auto& G = A.gens[g];
                if (G.bij.S != S || G.bij.T == S) continue;
                bool arrives = G.bij.T.back() == n_ + 1;
                if (arrives && !s_) continue;
                auto v = states_[st];
                for (int a : S) v[a - 1] = 0;
                for (int a : G.bij.T)
                    if (a <= n_) v[a - 1] = 1;
                if (arrives) ++v[n_ + j0_];
                int to = state_id_.at(v);
                std::string lab = "r(" + p.vertices[st] + "," + p.vertices[to] + ")" + G.label();
                R_[{st, g}] = p.add_letter({lab, st, to, G.cohdeg(), "singular"});
                rinfo_.push_back({st, g, to, arrives});
            }
        }
        for (const auto& [key, l] : T_) {
            auto [st, jj, t] = key;
            p.differential[l] = {{X(st, jj, t)}, {X(st, jj, t + 1)}};
        }
        for (const auto& ri : rinfo_) {
            const auto& A = strands(static_cast<int>(sing(ri.st).size()));
            for (const auto& e : A.algebra.diff(ri.g)) p.differential[R_.at({ri.st, ri.g})].push_back({R_.at({ri.st, e.index})});
        }
    }

    Config initial(int st) const {
        Config c{st, std::vector<std::vector<int>>(s_)};
        int label = 0;
        for (int jj = 0; jj < s_; ++jj)
            for (int t = 0; t < copies(st, jj); ++t) c.stacks[jj].push_back(label++);
        return c;
    }

    static std::pair<int, int> locate(const Config& c, int label) {
        for (int jj = 0; jj < static_cast<int>(c.stacks.size()); ++jj)
            for (int t = 0; t < static_cast<int>(c.stacks[jj].size()); ++t)
                if (c.stacks[jj][t] == label) return {jj, t + 1};
        throw std::logic_error("strand lost");
    }

    // Move the copy at `pos` of arc jj along primitive q: raise it to the
    // top with T's, apply b, and lower it back when it stays on the arc.
    Poly move(Config& c, int jj, int pos, int q) const {
        Poly w{{}};
        int cnt = static_cast<int>(c.stacks[jj].size());
        int jt = prim_arc(prims_[q].to);
        for (int u = pos; u < cnt; ++u) {
            int t = T(c.state, jj, u);
            w = times(w, letter_poly(t));
            std::swap(c.stacks[jj][u - 1], c.stacks[jj][u]);
        }
        w = times(w, letter_poly(B_.at({c.state, q})));
        int lab = c.stacks[jj].back();
        c.stacks[jj].pop_back();
        c.stacks[jt].push_back(lab);
        c.state = shifted(c.state, n_ + jj, n_ + jt);
        if (jt == jj)
            for (int u = cnt - 1; u >= pos; --u) {
                w = times(w, inverse_poly(T(c.state, jj, u)));
                std::swap(c.stacks[jj][u - 1], c.stacks[jj][u]);
            }
        return w;
    }

    void rel(Poly a, const Poly& b, const std::string& tag) {
        a.insert(a.end(), b.begin(), b.end());
        p.add_relation(std::move(a), tag);
    }

    void add_relations() {
        int ns = static_cast<int>(states_.size());
        for (int st = 0; st < ns; ++st) hecke_relations(st);
        for (const auto& [key, l] : B_) strand_relations(key.first, key.second, l);
        for (const auto& ri : rinfo_) singular_relations(ri);
        for (int st = 0; st < ns; ++st) pair_relations(st);
        for (int st = 0; st < ns; ++st) double_arrivals(st);
    }

    void hecke_relations(int st) {
        for (int jj = 0; jj < s_; ++jj) {
            int c = copies(st, jj);
            for (int t = 1; t < c; ++t) {
                int a = T(st, jj, t);
                rel({{a, a}, {}, {a}}, {}, "hecke");
                if (t + 1 < c) rel({{a, T(st, jj, t + 1), a}}, {{T(st, jj, t + 1), a, T(st, jj, t + 1)}}, "braid");
                for (int u = t + 2; u < c; ++u) rel({{a, T(st, jj, u)}}, {{T(st, jj, u), a}}, "far commutation");
            }
            for (int t = 1; t <= c; ++t) {
                int x = X(st, jj, t);
                rel({{x, x}}, {}, "two dots");
                for (int u = 1; u < c; ++u) {
                    int a = T(st, jj, u);
                    if (t == u)
                        rel({{x, a}}, {{a, X(st, jj, u + 1)}}, "dot slide");
                    else if (t == u + 1)
                        rel({{x, a}}, {{a, X(st, jj, u)}, {X(st, jj, u)}, {x}}, "dot slide");
                    else
                        rel({{x, a}}, {{a, x}}, "disjoint");
                }
            }
            // other arcs
            for (int j2 = jj + 1; j2 < s_; ++j2) {
                int c2 = copies(st, j2);
                for (int t = 1; t <= c; ++t)
                    for (int u = 1; u <= c2; ++u) {
                        rel({{X(st, jj, t), X(st, j2, u)}}, {{X(st, j2, u), X(st, jj, t)}}, "disjoint");
                        if (t < c && u < c2) rel({{T(st, jj, t), T(st, j2, u)}}, {{T(st, j2, u), T(st, jj, t)}}, "disjoint");
                    }
            }
            for (int j2 = 0; j2 < s_; ++j2) {
                if (j2 == jj) continue;
                for (int t = 1; t <= c; ++t)
                    for (int u = 1; u < copies(st, j2); ++u) rel({{X(st, jj, t), T(st, j2, u)}}, {{T(st, j2, u), X(st, jj, t)}}, "disjoint");
            }
            for (int t = 1; t <= c; ++t)
                for (int t2 = t + 1; t2 <= c; ++t2) rel({{X(st, jj, t), X(st, jj, t2)}}, {{X(st, jj, t2), X(st, jj, t)}}, "disjoint");
        }
    }

    // Copies untouched by b keep their index; the moved copy carries its dot.
    void strand_relations(int st, int q, int b) {
        int jj = prim_arc(prims_[q].from), jt = prim_arc(prims_[q].to);
        int to = shifted(st, n_ + jj, n_ + jt);
        int c = copies(st, jj);
        for (int j2 = 0; j2 < s_; ++j2) {
            int keep = j2 == jj ? c - 1 : copies(st, j2);
            for (int t = 1; t < keep; ++t) rel({{T(st, j2, t), b}}, {{b, T(to, j2, t)}}, "disjoint");
            for (int t = 1; t <= keep; ++t) rel({{X(st, j2, t), b}}, {{b, X(to, j2, t)}}, "disjoint");
        }
        rel({{X(st, jj, c), b}}, {{b, X(to, jt, copies(to, jt))}}, "dot slide");
        for (int q2 = 0; q2 < static_cast<int>(prims_.size()); ++q2)
            if (prim_arc(prims_[q2].from) == jt && prims_[q2].from != prims_[q].to)
                rel({{b, B_.at({to, q2})}}, {}, "broken strand");
    }

    int Rl(int st, int g) const { return R_.at({st, g}); }

    // Element of R(n+1;K) as letters at `st`.
    Poly r_poly(int st, const Element& e) const {
        Poly out;
        for (const auto& t : e) out.push_back({Rl(st, t.index)});
        return out;
    }

    // r with a horizontal strand added at n+1 (above all other strands).
    int with_top(const StrandAlgebra& big, const StrandGenerator& g) const {
        NondecBij b = g.bij;
        b.S.push_back(n_ + 1);
        b.T.push_back(n_ + 1);
        b.phi.push_back(static_cast<int>(b.phi.size()));
        auto id = big.find(b, g.dots);
        if (!id) throw std::logic_error("no strand element with a top strand");
        return *id;
    }

    void singular_relations(const RInfo& ri) {
        int st = ri.st, to = ri.to, r = Rl(st, ri.g);
        int K = static_cast<int>(sing(st).size());
        const auto& A = strands(K);
        const auto& G = A.gens[ri.g];
        // crossings and dots on matched arcs commute past r; an arriving
        // strand becomes copy 1 of its arc
        for (int jj = 0; jj < s_; ++jj) {
            int sh = ri.arrives && jj == j0_ ? 1 : 0;
            for (int t = 1; t < copies(st, jj); ++t) rel({{T(st, jj, t), r}}, {{r, T(to, jj, t + sh)}}, "disjoint");
            for (int t = 1; t <= copies(st, jj); ++t) rel({{X(st, jj, t), r}}, {{r, X(to, jj, t + sh)}}, "disjoint");
        }
        if (ri.arrives) {
            Subset D = G.dots;
            if (std::find(D.begin(), D.end(), n_ + 1) != D.end()) {
                rel({{r, X(to, j0_, 1)}}, {}, "two dots");
            } else {
                D.push_back(n_ + 1);
                auto id = A.find(G.bij, D);
                rel({{r, X(to, j0_, 1)}}, {{Rl(st, *id)}}, "dot slide");
            }
            for (int q = 0; q < static_cast<int>(prims_.size()); ++q) {
                if (prim_arc(prims_[q].from) != j0_ || prims_[q].from == n_ + 1) continue;
                Config c = initial(to);
                rel(times(letter_poly(r), move(c, j0_, 1, q)), {}, "broken strand");
            }
        }
        // b commutes with r
        for (int q = 0; q < static_cast<int>(prims_.size()); ++q) {
            int jj = prim_arc(prims_[q].from), jt = prim_arc(prims_[q].to);
            if (!copies(st, jj)) continue;
            int st2 = shifted(st, n_ + jj, n_ + jt);
            auto g2 = R_.find({st2, ri.g});
            int to2 = shifted(to, n_ + jj, n_ + jt);
            rel({{B_.at({st, q}), g2->second}}, {{r, B_.at({to, q})}}, "disjoint");
            (void)to2;
        }
        // products with a following r
        Subset S2 = sing(to);
        if (S2.empty()) return;
        const auto& A2 = strands(static_cast<int>(S2.size()));
        for (const auto& rj : rinfo_) {
            if (rj.st != to) continue;
            int r2 = Rl(to, rj.g);
            if (ri.arrives && rj.arrives) continue;  // double arrivals
            Element prod;
            if (ri.arrives)
                prod = A.algebra.multiply(unit_vector(ri.g), unit_vector(with_top(A, A2.gens[rj.g])));
            else
                prod = A.algebra.multiply(unit_vector(ri.g), unit_vector(rj.g));
            rel({{r, r2}}, r_poly(st, prod), "strand product");
        }
    }

    // Moves of two different strands commute; when both land on the same arc
    // the second order carries T^{-1} to restore the landing order.
    void pair_relations(int st) {
        Config c0 = initial(st);
        for (int jj = 0; jj < s_; ++jj) {
            int c = copies(st, jj);
            if (!c) continue;
            std::vector<std::pair<int, int>> ys;
            for (int j2 = jj + 1; j2 < s_; ++j2)
                if (copies(st, j2)) ys.push_back({j2, copies(st, j2)});
            if (c >= 2) ys.push_back({jj, c - 1});
            for (int q = 0; q < static_cast<int>(prims_.size()); ++q) {
                if (prim_arc(prims_[q].from) != jj) continue;
                for (auto [yj, yp] : ys)
                    for (int q2 = 0; q2 < static_cast<int>(prims_.size()); ++q2) {
                        if (prim_arc(prims_[q2].from) != yj) continue;
                        int xl = c0.stacks[jj][c - 1], yl = c0.stacks[yj][yp - 1];
                        Config a = c0;
                        Poly lhs = move(a, jj, c, q);
                        auto [ya, yb] = locate(a, yl);
                        lhs = times(lhs, move(a, ya, yb, q2));
                        Config b = c0;
                        Poly rhs = move(b, yj, yp, q2);
                        auto [xa, xb] = locate(b, xl);
                        rhs = times(rhs, move(b, xa, xb, q));
                        if (a.state != b.state) throw std::logic_error("moves end in different states");
                        for (int j3 = 0; j3 < s_; ++j3) {
                            if (a.stacks[j3] == b.stacks[j3]) continue;
                            auto& u = a.stacks[j3];
                            auto& v = b.stacks[j3];
                            int pos = -1;
                            for (std::size_t t = 0; t + 1 < u.size(); ++t)
                                if (u[t] == v[t + 1] && u[t + 1] == v[t]) pos = static_cast<int>(t) + 1;
                            if (pos < 0) throw std::logic_error("moves differ by more than one swap");
                            std::swap(v[pos - 1], v[pos]);
                            if (u != v) throw std::logic_error("moves differ by more than one swap");
                            rhs = times(rhs, inverse_poly(T(b.state, j3, pos)));
                        }
                        rel(std::move(lhs), rhs, "exchange");
                    }
            }
        }
    }

    // Two strands arriving at a_{n+1} one after the other: relations are the
    // kernel of the map to R_K, where copy 1 and copy 2 are the top strands.
    void double_arrivals(int st) {
        if (!s_) return;
        Subset S = sing(st);
        int K = static_cast<int>(S.size());
        if (K < 2) return;
        const auto& A = strands(K);
        const auto& A2 = strands(K - 1);
        HeckeExterior h(K, Field::prime(2), 1, false);
        auto engine = [&](const StrandGenerator& g) {
            unsigned mask = 0;
            for (int t : g.dots) mask |= 1u << (std::find(g.bij.T.begin(), g.bij.T.end(), t) - g.bij.T.begin());
            return h.id(h.index_of(g.bij.as_perm()), mask);
        };
        std::map<int, std::vector<std::pair<Word, SparseVec>>> groups;
        for (const auto& ri : rinfo_) {
            if (ri.st != st || !ri.arrives) continue;
            for (const auto& rj : rinfo_) {
                if (rj.st != ri.to || !rj.arrives) continue;
                const auto& g2 = A2.gens[rj.g];
                std::vector<int> phi = g2.bij.phi;
                phi.push_back(K - 1);
                unsigned mask = 0;
                for (int t : g2.dots) mask |= 1u << (std::find(g2.bij.T.begin(), g2.bij.T.end(), t) - g2.bij.T.begin());
                int e2 = h.id(h.index_of(Perm(phi)), mask);
                SparseVec v = h.product(unit_vector(engine(A.gens[ri.g])), unit_vector(e2));
                Word w{Rl(st, ri.g), Rl(ri.to, rj.g)};
                groups[rj.to].push_back({w, v});
                groups[rj.to].push_back({concat(w, {T(rj.to, j0_, 1)}), h.right_T(v, K - 1)});
            }
        }
        for (const auto& [to, words] : groups) {
            std::vector<SparseVec> cols;
            for (const auto& wv : words) cols.push_back(wv.second);
            for (const auto& kv : kernel_basis(SparseMatrix::from_columns(h.dim(), cols), Field::prime(2))) {
                Poly r;
                for (const auto& e : kv) r.push_back(words[e.index].first);
                rel(std::move(r), {}, "double arrival");
            }
        }
    }

private:
    const ArcDiagram& d_;
    int n_, s_, k_, j0_;
    std::vector<ArcDiagram::Primitive> prims_;
    std::vector<std::vector<int>> states_;
    std::map<std::vector<int>, int> state_id_;
    std::map<int, StrandAlgebra> rnk_;
    std::map<std::tuple<int, int, int>, int> T_, X_;
    std::map<std::pair<int, int>, int> B_, R_;
    std::vector<RInfo> rinfo_;
};

}  // namespace

Presentation surface_presentation(const ArcDiagram& d, int k, const Field& f) {
    if (f.characteristic() != 2) throw std::invalid_argument("surface dgas are defined over F_2");
    return SurfaceBuilder(d, k).p;
}

PresentedAlgebra build_surface_dga(const ArcDiagram& d, int k, const SurfaceOptions& opt) {
    if (k > opt.max_k) throw std::invalid_argument("k = " + std::to_string(k) + " is above the cap " + std::to_string(opt.max_k));
    return build_presented(surface_presentation(d, k), "R(S," + std::to_string(d.n_singular) + ",a;" + std::to_string(k) + ")", opt);
}

Report verify_surface_well_defined(const PresentedAlgebra& a) {
    Report r;
    r.suite = "surface-well-defined";
    r.parameters = {{"name", a.algebra.name()}, {"dim", std::to_string(a.algebra.dim())}};
    r.merge(verify_dga(a.algebra));
    const Field F = Field::prime(2);
    int holds = 0, preserved = 0;
    std::string bad_rel, bad_d;
    auto vertex_of = [&](const Word& w) { return a.pres.letters[w.front()].source; };
    for (std::size_t q = 0; q < a.pres.relations.size(); ++q) {
        const auto& rel = a.pres.relations[q];
        int src = -1;
        for (const auto& w : rel)
            if (!w.empty()) src = vertex_of(w);
        if (src < 0) continue;
        Element v, dv;
        for (const auto& w : rel) {
            if (w.empty()) {
                axpy(F, v, 1, unit_vector(a.vertex_unit[src]));
                continue;
            }
            axpy(F, v, 1, evaluate(a, w));
            axpy(F, dv, 1, leibniz(a, w));
        }
        if (v.empty())
            ++holds;
        else if (bad_rel.empty())
            bad_rel = a.pres.relation_tags[q];
        if (dv.empty())
            ++preserved;
        else if (bad_d.empty())
            bad_d = a.pres.relation_tags[q] + ": " + a.algebra.format(dv);
    }
    std::string total = std::to_string(a.pres.relations.size());
    r.add("defining relations hold", bad_rel.empty(), total, std::to_string(holds) + (bad_rel.empty() ? "" : ", fails " + bad_rel));
    r.add("d preserves every defining relation", bad_d.empty(), total,
          std::to_string(preserved) + (bad_d.empty() ? "" : ", fails " + bad_d));
    return r;
}

long long diagram_count(const ArcDiagram& d, const std::vector<int>& from, const std::vector<int>& to) {
    int n = d.n_singular, arcs = d.num_arcs(), pts = d.num_points();
    struct Option {
        int arc;  // 1-based target arc
        bool dot;
    };
    std::vector<std::vector<Option>> strands;
    for (int a = 1; a <= arcs; ++a)
        for (int c = 0; c < from[a - 1]; ++c) {
            std::vector<Option> o;
            std::vector<int> starts;
            if (a <= n) {
                o.push_back({a, false});
                starts = {a};
            } else {
                o.push_back({a, false});
                o.push_back({a, true});
                auto pr = d.pair_of(a - n);
                starts = {pr.first, pr.second};
            }
            for (int x : starts)
                for (int y = x + 1; y <= pts && d.segment_of(y) == d.segment_of(x); ++y) {
                    o.push_back({d.arc_of(y), false});
                    o.push_back({d.arc_of(y), true});
                }
            strands.push_back(std::move(o));
        }
    long long total = 0;
    std::vector<int> got(arcs, 0);
    std::function<void(std::size_t)> rec = [&](std::size_t t) {
        if (t == strands.size()) {
            if (got != to) return;
            long long f = 1;
            for (int a = n + 1; a <= arcs; ++a)
                for (int m = 2; m <= got[a - 1]; ++m) f *= m;
            total += f;
            return;
        }
        for (const auto& o : strands[t]) {
            if (o.arc <= n && got[o.arc - 1]) continue;
            ++got[o.arc - 1];
            rec(t + 1);
            --got[o.arc - 1];
        }
    };
    rec(0);
    return total;
}

std::vector<CensusRow> generator_census(const ArcDiagram& d, int k) {
    auto p = surface_presentation(d, k);
    std::vector<std::string> kinds = k >= 2 ? std::vector<std::string>{"idempotent", "crossing", "dot", "strand", "singular"}
                                            : std::vector<std::string>{"idempotent", "dot", "strand", "singular"};
    std::vector<CensusRow> rows;
    for (std::size_t t = 0; t < kinds.size(); ++t) rows.push_back({kinds[t], static_cast<int>(t) + 1, 0, {}, {}});
    for (const auto& v : p.vertices) {
        ++rows[0].count;
        rows[0].labels.push_back("1(" + v + ")");
        rows[0].degrees.push_back(0);
    }
    for (const auto& L : p.letters)
        for (auto& row : rows)
            if (row.kind == L.kind) {
                ++row.count;
                row.labels.push_back(L.name);
                row.degrees.push_back(L.cohdeg);
            }
    return rows;
}

namespace {

const CensusRow& census_row(const std::vector<CensusRow>& rows, const std::string& kind) {
    for (const auto& r : rows)
        if (r.kind == kind) return r;
    throw std::logic_error("no census row " + kind);
}

// First slice whose dimension differs from the diagram count, or "".
std::string slice_mismatch(const ArcDiagram& d, int k, const PresentedAlgebra& a, long long& expected_total) {
    std::map<std::pair<int, int>, long long> dims;
    for (int i = 0; i < a.algebra.dim(); ++i) ++dims[{a.algebra.left_idem(i), a.algebra.right_idem(i)}];
    auto st = arc_states(d, k);
    int nv = static_cast<int>(st.size());
    std::string first;
    expected_total = 0;
    for (int x = 0; x < nv; ++x)
        for (int y = 0; y < nv; ++y) {
            long long want = diagram_count(d, st[x], st[y]);
            expected_total += want;
            long long got = dims.count({x, y}) ? dims[{x, y}] : 0;
            if (want != got && first.empty())
                first = "1(" + a.pres.vertices[x] + ") A 1(" + a.pres.vertices[y] + "): " + std::to_string(got) + " vs " +
                        std::to_string(want);
        }
    return first;
}

// Slices of the disk dga against the blocks 1_S R(n+1;k) 1_T with S, T in [n].
std::string disk_mismatch(int n, int k, const PresentedAlgebra& a) {
    auto R = build_rnk(n + 1, k, Field::prime(2));
    auto st = arc_states(ArcDiagram::disk(n), k);
    std::map<std::pair<int, int>, int> dims;
    for (int i = 0; i < a.algebra.dim(); ++i) ++dims[{a.algebra.left_idem(i), a.algebra.right_idem(i)}];
    auto subset = [&](const std::vector<int>& v) {
        Subset S;
        for (int t = 0; t < n; ++t)
            if (v[t]) S.push_back(t + 1);
        return S;
    };
    for (std::size_t x = 0; x < st.size(); ++x)
        for (std::size_t y = 0; y < st.size(); ++y) {
            int e = R.idempotent_of(subset(st[x])), f = R.idempotent_of(subset(st[y]));
            int want = static_cast<int>(R.algebra.block(e, f).size());
            int got = dims.count({static_cast<int>(x), static_cast<int>(y)}) ? dims[{static_cast<int>(x), static_cast<int>(y)}] : 0;
            if (want != got) return a.pres.vertices[x] + " -> " + a.pres.vertices[y] + ": " + std::to_string(got) + " vs " + std::to_string(want);
        }
    return "";
}

}  // namespace

Report check_surface_examples() {
    Report r;
    r.suite = "surface-examples";
    auto torus = ArcDiagram::torus();

    auto c1 = generator_census(torus, 1);
    const auto& idem = census_row(c1, "idempotent");
    r.add("torus k=1 idempotents", idem.count == 4, "4", std::to_string(idem.count), Provenance::paper);
    const auto& dots = census_row(c1, "dot");
    bool dot_ok = dots.count == 2 && dots.degrees == std::vector<int>{1, 1};
    r.add("torus k=1 dot generators xi(3), xi(4) of degree 1", dot_ok, "2 of degree 1", std::to_string(dots.count), Provenance::paper);
    auto prims = torus.primitives();
    std::string st;
    for (const auto& q : prims)
        st += "a" + std::to_string(torus.arc_of(q.from)) + "->a" + std::to_string(torus.arc_of(q.to)) + ":" + std::to_string(q.degree) + " ";
    r.add("torus primitive strands St(a3,a4)={p1,p3}, St(a4,a3)={p2}", st == "a3->a4:0 a4->a3:1 a3->a4:0 ",
          "a3->a4:0 a4->a3:1 a3->a4:0 ", st, Provenance::paper);
    const auto& bs = census_row(c1, "strand");
    r.add("torus k=1 strand generators", bs.count == 3, "3", std::to_string(bs.count), Provenance::paper);
    const auto& rs = census_row(c1, "singular");
    r.add("torus k=1 has r-generators from R(3;1)", rs.count > 0, "> 0", std::to_string(rs.count), Provenance::paper);

    auto c2 = generator_census(torus, 2);
    const auto& idem2 = census_row(c2, "idempotent");
    std::string labs;
    for (const auto& l : idem2.labels) labs += l + " ";
    std::string want = "1(a1a2) 1(a1a3) 1(a1a4) 1(a2a3) 1(a2a4) 1(a3^2) 1(a3a4) 1(a4^2) ";
    r.add("torus k=2 has eight idempotents S^2(a)", labs == want, want, labs, Provenance::paper);

    auto ca = generator_census(ArcDiagram::annulus(), 1);
    bool ann = census_row(ca, "dot").count > 0 && census_row(ca, "strand").count > 0 && census_row(ca, "singular").count == 0;
    r.add("annulus k=1 census: idempotent, dot, strand; no r", ann, "present, present, absent", ann ? "present, present, absent" : "differs",
          Provenance::trivial);
    // With s = 0 no strand can reach a_{n+1}, so R(2;1) has no non-identity
    // element between subsets of {1}: kind (5) is empty here.
    auto cd = generator_census(ArcDiagram::disk(1), 1);
    bool disk = census_row(cd, "dot").count == 0 && census_row(cd, "strand").count == 0;
    r.add("disk n=1 k=1 census: no dot or strand generators", disk, "none", disk ? "none" : "differs", Provenance::trivial);
    r.info("disk n=1 k=1 singular generators", std::to_string(census_row(cd, "singular").count), Provenance::trivial);

    for (int n = 1; n <= 3; ++n)
        for (int k = 1; k <= n; ++k) {
            auto a = build_surface_dga(ArcDiagram::disk(n), k);
            auto bad = disk_mismatch(n, k, a);
            r.add("disk n=" + std::to_string(n) + " k=" + std::to_string(k) + " slices match R(n+1;k)", bad.empty(), "equal",
                  bad.empty() ? "equal" : bad);
        }

    for (int k = 1; k <= 2; ++k) {
        auto a = build_surface_dga(ArcDiagram::annulus(), k);
        auto b = build_annulus_dga(k);
        std::string tag = "annulus diagram k=" + std::to_string(k) + " ";
        r.add(tag + "dimension equals the annulus dga", a.algebra.dim() == b.algebra.dim(), std::to_string(b.algebra.dim()),
              std::to_string(a.algebra.dim()));
        r.merge(compare_annulus_with_pbw(a, k), tag);
    }

    for (int k = 1; k <= 2; ++k) {
        auto a = build_surface_dga(torus, k);
        std::string tag = "torus k=" + std::to_string(k) + " ";
        auto v = verify_surface_well_defined(a);
        r.add(tag + "well defined", v.passed(), "pass", v.passed() ? "pass" : v.summary(), k == 1 ? Provenance::trivial : Provenance::derived);
        long long want = 0;
        auto bad = slice_mismatch(torus, k, a, want);
        if (k == 1)
            r.add(tag + "slice dimensions match the diagram count", bad.empty(), std::to_string(want),
                  bad.empty() ? std::to_string(a.algebra.dim()) : bad);
        else
            r.info(tag + "dimension (diagram count " + std::to_string(want) + ")", std::to_string(a.algebra.dim()));
    }
    return r;
}

}  // namespace catdga
