#include "catdga/dga.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace catdga {

namespace {
const Element kZero;
}

int DgAlgebra::add_basis(BasisElement b, int left_idem, int right_idem) {
    if (label_index_.count(b.label)) throw std::invalid_argument("duplicate basis label '" + b.label + "'");
    if (basis_.empty()) has_qdeg_ = b.qdeg.has_value();
    if (b.qdeg.has_value() != has_qdeg_) throw std::invalid_argument("q-grading must be given for all or no basis elements");
    int id = dim();
    label_index_[b.label] = id;
    basis_.push_back(std::move(b));
    left_.push_back(left_idem);
    right_.push_back(right_idem);
    rows_.emplace_back();
    diff_.emplace_back();
    blocks_valid_ = false;
    return id;
}

std::optional<int> DgAlgebra::find_label(const std::string& label) const {
    auto it = label_index_.find(label);
    if (it == label_index_.end()) return std::nullopt;
    return it->second;
}

int DgAlgebra::add_idempotent(std::vector<int> members) {
    std::sort(members.begin(), members.end());
    idempotents_.push_back(std::move(members));
    blocks_valid_ = false;
    return num_idempotents() - 1;
}

Element DgAlgebra::idempotent_element(int e) const {
    Element v;
    for (int i : idempotents_.at(e)) v.push_back({i, 1});
    return v;
}

Element DgAlgebra::unit() const {
    std::vector<Entry> raw;
    for (const auto& e : idempotents_)
        for (int i : e) raw.push_back({i, 1});
    return canonical(field_, std::move(raw));
}

void DgAlgebra::ensure_blocks() const {
    if (blocks_valid_) return;
    int m = num_idempotents();
    blocks_.assign(static_cast<std::size_t>(m) * m, {});
    for (int i = 0; i < dim(); ++i) {
        if (left_[i] < 0 || left_[i] >= m || right_[i] < 0 || right_[i] >= m)
            throw std::logic_error("basis element " + basis_[i].label + " has no valid idempotent block");
        blocks_[static_cast<std::size_t>(left_[i]) * m + right_[i]].push_back(i);
    }
    blocks_valid_ = true;
}

const std::vector<int>& DgAlgebra::block(int e, int f) const {
    ensure_blocks();
    return blocks_.at(static_cast<std::size_t>(e) * num_idempotents() + f);
}

std::vector<int> DgAlgebra::left_slice(int e) const {
    std::vector<int> out;
    for (int i = 0; i < dim(); ++i)
        if (left_[i] == e) out.push_back(i);
    return out;
}

void DgAlgebra::set_product(int i, int j, Element v) {
    auto& row = rows_.at(i);
    auto it = std::lower_bound(row.begin(), row.end(), j, [](const auto& p, int jj) { return p.first < jj; });
    if (it != row.end() && it->first == j) {
        if (v.empty())
            row.erase(it);
        else
            it->second = std::move(v);
    } else if (!v.empty()) {
        row.insert(it, {j, std::move(v)});
    }
}

const Element& DgAlgebra::product(int i, int j) const {
    const auto& row = rows_[i];
    auto it = std::lower_bound(row.begin(), row.end(), j, [](const auto& p, int jj) { return p.first < jj; });
    if (it != row.end() && it->first == j) return it->second;
    return kZero;
}

void DgAlgebra::set_diff(int i, Element v) { diff_.at(i) = std::move(v); }

Element DgAlgebra::multiply(const Element& x, const Element& y) const {
    std::vector<Entry> raw;
    for (const auto& a : x)
        for (const auto& b : y) {
            const auto& p = product(a.index, b.index);
            if (p.empty()) continue;
            Scalar c = field_.mul(a.value, b.value);
            for (const auto& t : p) raw.push_back({t.index, field_.mul(c, t.value)});
        }
    return canonical(field_, std::move(raw));
}

Element DgAlgebra::d(const Element& x) const {
    std::vector<Entry> raw;
    for (const auto& a : x)
        for (const auto& t : diff_[a.index]) raw.push_back({t.index, field_.mul(a.value, t.value)});
    return canonical(field_, std::move(raw));
}

int DgAlgebra::cohdeg_of(const Element& x) const {
    if (x.empty()) throw std::invalid_argument("degree of zero element");
    int c = basis_[x.front().index].cohdeg;
    for (const auto& e : x)
        if (basis_[e.index].cohdeg != c) throw std::invalid_argument("element is not homogeneous");
    return c;
}

std::optional<int> DgAlgebra::qdeg_of(const Element& x) const {
    if (!has_qdeg_ || x.empty()) return std::nullopt;
    int q = *basis_[x.front().index].qdeg;
    for (const auto& e : x)
        if (*basis_[e.index].qdeg != q) throw std::invalid_argument("element is not q-homogeneous");
    return q;
}

std::string DgAlgebra::format(const Element& x) const {
    if (x.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& e : x) {
        if (!first) os << " + ";
        first = false;
        if (e.value != 1) os << field_.format(e.value) << "*";
        os << basis_[e.index].label;
    }
    return os.str();
}

namespace {

std::string count_str(long long n) { return std::to_string(n); }

// Collects failures with a short witness; keeps the first few only.
struct FailLog {
    long long count = 0;
    std::string first;
    void note(const std::string& what) {
        if (count++ == 0) first = what;
    }
    std::string got() const { return count == 0 ? "0 failures" : count_str(count) + " failures, first: " + first; }
};

void check_structure(const DgAlgebra& a, Report& r) {
    const Field& f = a.field();
    int m = a.num_idempotents();
    // Idempotent system: e e' = delta e, sum = unit.
    FailLog idem;
    for (int e = 0; e < m; ++e)
        for (int g = 0; g < m; ++g) {
            auto p = a.multiply(a.idempotent_element(e), a.idempotent_element(g));
            auto want = e == g ? a.idempotent_element(e) : Element{};
            if (p != want) idem.note("e" + std::to_string(e) + "*e" + std::to_string(g));
        }
    r.add("orthogonal idempotents", idem.count == 0, "0 failures", idem.got(), Provenance::trivial);

    // Block consistency: 1_e x 1_f = x for the declared block.
    FailLog blocks;
    for (int i = 0; i < a.dim(); ++i) {
        Element x = unit_vector(i);
        auto lx = a.multiply(a.idempotent_element(a.left_idem(i)), x);
        auto xr = a.multiply(x, a.idempotent_element(a.right_idem(i)));
        if (lx != x || xr != x) blocks.note(a.basis(i).label);
        for (const auto& t : a.diff(i))
            if (a.left_idem(t.index) != a.left_idem(i) || a.right_idem(t.index) != a.right_idem(i))
                blocks.note("d(" + a.basis(i).label + ") leaves its block");
    }
    for (int i = 0; i < a.dim(); ++i)
        for (const auto& [j, v] : a.product_row(i)) {
            if (a.right_idem(i) != a.left_idem(j)) blocks.note(a.basis(i).label + "*" + a.basis(j).label + " stored across blocks");
            for (const auto& t : v)
                if (a.left_idem(t.index) != a.left_idem(i) || a.right_idem(t.index) != a.right_idem(j))
                    blocks.note(a.basis(i).label + "*" + a.basis(j).label + " leaves its block");
        }
    r.add("idempotent blocks", blocks.count == 0, "0 failures", blocks.got(), Provenance::trivial);
    (void)f;
}

void check_unit(const DgAlgebra& a, Report& r) {
    FailLog log;
    Element u = a.unit();
    for (int i = 0; i < a.dim(); ++i) {
        Element x = unit_vector(i);
        if (a.multiply(u, x) != x || a.multiply(x, u) != x) log.note(a.basis(i).label);
    }
    r.add("unit", log.count == 0, "0 failures", log.got(), Provenance::trivial);
}

void check_grading(const DgAlgebra& a, Report& r) {
    FailLog coh, q, dcoh, dq;
    for (int i = 0; i < a.dim(); ++i) {
        int ej = a.right_idem(i);
        for (int ek = 0; ek < a.num_idempotents(); ++ek)
            for (int j : a.block(ej, ek)) {
                for (const auto& t : a.product(i, j)) {
                    if (a.basis(t.index).cohdeg != a.basis(i).cohdeg + a.basis(j).cohdeg)
                        coh.note(a.basis(i).label + "*" + a.basis(j).label);
                    if (a.has_qdeg() && *a.basis(t.index).qdeg != *a.basis(i).qdeg + *a.basis(j).qdeg)
                        q.note(a.basis(i).label + "*" + a.basis(j).label);
                }
            }
        for (const auto& t : a.diff(i)) {
            if (a.basis(t.index).cohdeg != a.basis(i).cohdeg + 1) dcoh.note("d(" + a.basis(i).label + ")");
            if (a.has_qdeg() && *a.basis(t.index).qdeg != *a.basis(i).qdeg) dq.note("d(" + a.basis(i).label + ")");
        }
    }
    r.add("cohdeg additive", coh.count == 0, "0 failures", coh.got(), Provenance::trivial);
    if (a.has_qdeg()) r.add("qdeg additive", q.count == 0, "0 failures", q.got(), Provenance::trivial);
    r.add("d raises cohdeg by 1", dcoh.count == 0, "0 failures", dcoh.got(), Provenance::trivial);
    if (a.has_qdeg()) r.add("d preserves qdeg", dq.count == 0, "0 failures", dq.got(), Provenance::trivial);
}

void check_dsq(const DgAlgebra& a, Report& r) {
    FailLog log;
    for (int i = 0; i < a.dim(); ++i)
        if (!a.d(a.diff(i)).empty()) log.note(a.basis(i).label);
    r.add("d^2 = 0", log.count == 0, "0 failures", log.got(), Provenance::trivial);
}

void check_leibniz(const DgAlgebra& a, Report& r) {
    const Field& f = a.field();
    FailLog log;
    long long pairs = 0;
    for (int i = 0; i < a.dim(); ++i) {
        Element x = unit_vector(i);
        Element dx = a.diff(i);
        Scalar sign = f.pow_sign(a.basis(i).cohdeg);
        for (int ek = 0; ek < a.num_idempotents(); ++ek)
            for (int j : a.block(a.right_idem(i), ek)) {
                ++pairs;
                Element lhs = a.d(a.product(i, j));
                Element rhs = a.multiply(dx, unit_vector(j));
                axpy(f, rhs, sign, a.multiply(x, a.diff(j)));
                if (lhs != rhs) log.note(a.basis(i).label + " , " + a.basis(j).label);
            }
    }
    r.add("Leibniz rule (" + count_str(pairs) + " pairs)", log.count == 0, "0 failures", log.got(), Provenance::trivial);
}

long long composable_triples(const DgAlgebra& a) {
    int m = a.num_idempotents();
    long long total = 0;
    std::vector<long long> bs(static_cast<std::size_t>(m) * m);
    for (int e = 0; e < m; ++e)
        for (int g = 0; g < m; ++g) bs[e * m + g] = static_cast<long long>(a.block(e, g).size());
    for (int e = 0; e < m; ++e)
        for (int g = 0; g < m; ++g) {
            if (!bs[e * m + g]) continue;
            for (int h = 0; h < m; ++h) {
                if (!bs[g * m + h]) continue;
                long long s = 0;
                for (int l = 0; l < m; ++l) s += bs[h * m + l];
                total += bs[e * m + g] * bs[g * m + h] * s;
            }
        }
    return total;
}

// (x y) z == x (y z) for x in xs-range, y composable, z in zs (or all).
void check_assoc_range(const DgAlgebra& a, const std::vector<int>* zs, FailLog& log, long long& triples) {
    const Field& f = a.field();
    Accumulator acc1(f, a.dim()), acc2(f, a.dim());
    for (int i = 0; i < a.dim(); ++i) {
        for (int ek = 0; ek < a.num_idempotents(); ++ek)
            for (int j : a.block(a.right_idem(i), ek)) {
                const Element& xy = a.product(i, j);
                auto run_z = [&](int k) {
                    ++triples;
                    for (const auto& t : xy) acc1.add(t.value, a.product(t.index, k));
                    for (const auto& t : a.product(j, k)) acc2.add(t.value, a.product(i, t.index));
                    auto l = acc1.take();
                    auto rr = acc2.take();
                    if (l != rr) log.note(a.basis(i).label + " , " + a.basis(j).label + " , " + a.basis(k).label);
                };
                if (zs) {
                    for (int k : *zs)
                        if (a.left_idem(k) == ek) run_z(k);
                } else {
                    for (int el = 0; el < a.num_idempotents(); ++el)
                        for (int k : a.block(ek, el)) run_z(k);
                }
            }
    }
}

void check_generic(const DgAlgebra& a, const VerifyOptions& opt, Report& r) {
    check_structure(a, r);
    if (opt.unit) check_unit(a, r);
    if (opt.grading) check_grading(a, r);
    if (opt.dsq) check_dsq(a, r);
    if (opt.leibniz) check_leibniz(a, r);
}

}  // namespace

Report verify_dga(const DgAlgebra& a, const VerifyOptions& opt) {
    Report r;
    r.suite = "verify_dga";
    r.parameters.push_back({"algebra", a.name()});
    r.parameters.push_back({"dim", std::to_string(a.dim())});
    check_generic(a, opt, r);
    if (opt.assoc) {
        long long n = composable_triples(a);
        if (n > opt.full_assoc_limit) {
            r.add("associativity", false, "full triple check", "skipped: " + count_str(n) + " triples exceed limit; supply a generator certificate");
        } else {
            FailLog log;
            long long triples = 0;
            check_assoc_range(a, nullptr, log, triples);
            r.add("associativity (" + count_str(triples) + " triples)", log.count == 0, "0 failures", log.got(), Provenance::trivial);
        }
    }
    return r;
}

Report verify_dga(const DgAlgebra& a, const GeneratorCertificate& cert, const VerifyOptions& opt) {
    Report r;
    r.suite = "verify_dga";
    r.parameters.push_back({"algebra", a.name()});
    r.parameters.push_back({"dim", std::to_string(a.dim())});
    check_generic(a, opt, r);
    if (opt.assoc) {
        // Certificate: basis element i equals the left-normed product of its word.
        FailLog cert_log;
        if (static_cast<int>(cert.words.size()) != a.dim()) cert_log.note("word list size mismatch");
        std::vector<char> is_idem(a.dim(), 0);
        for (int e = 0; e < a.num_idempotents(); ++e)
            if (a.idempotent(e).size() == 1) is_idem[a.idempotent(e)[0]] = 1;
        for (int i = 0; i < a.dim() && i < static_cast<int>(cert.words.size()); ++i) {
            const auto& w = cert.words[i];
            if (w.empty()) {
                if (!is_idem[i]) cert_log.note(a.basis(i).label + " has empty word but is not an idempotent");
                continue;
            }
            Element v = unit_vector(w[0]);
            for (std::size_t t = 1; t < w.size(); ++t) v = a.multiply(v, unit_vector(w[t]));
            if (v != unit_vector(i)) cert_log.note(a.basis(i).label);
            for (int g : w)
                if (std::find(cert.generators.begin(), cert.generators.end(), g) == cert.generators.end())
                    cert_log.note(a.basis(i).label + " uses a non-generator");
        }
        r.add("generator words reproduce basis", cert_log.count == 0, "0 failures", cert_log.got(), Provenance::derived);
        FailLog log;
        long long triples = 0;
        check_assoc_range(a, &cert.generators, log, triples);
        r.add("associativity against generators (" + count_str(triples) + " triples)", log.count == 0, "0 failures",
              log.got(), Provenance::derived);
    }
    return r;
}

}  // namespace catdga
