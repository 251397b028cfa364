#include "catdga/complexes.hpp"

#include <sstream>
#include <stdexcept>

namespace catdga {

LaurentPoly LaurentPoly::monomial(long long c, int power) {
    LaurentPoly p;
    p.add_term(power, c);
    return p;
}

long long LaurentPoly::coeff(int power) const {
    auto it = terms_.find(power);
    return it == terms_.end() ? 0 : it->second;
}

void LaurentPoly::add_term(int power, long long c) {
    if (c == 0) return;
    long long& v = terms_[power];
    v += c;
    if (v == 0) terms_.erase(power);
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    for (const auto& [p, c] : o.terms_) add_term(p, c);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    for (const auto& [p, c] : o.terms_) add_term(p, -c);
    return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    for (const auto& [p, c] : a.terms_)
        for (const auto& [p2, c2] : b.terms_) r.add_term(p + p2, c * c2);
    return r;
}

LaurentPoly LaurentPoly::divide_exact(const LaurentPoly& d) const {
    if (d.is_zero()) throw std::domain_error("division by zero Laurent polynomial");
    if (is_zero()) return {};
    LaurentPoly rem = *this, quo;
    auto [dlow, dc] = *d.terms_.begin();
    int top = terms_.rbegin()->first - d.terms_.rbegin()->first;
    while (!rem.is_zero()) {
        auto [rlow, rc] = *rem.terms_.begin();
        if (rlow - dlow > top || rc % dc != 0) throw std::domain_error("Laurent division is not exact");
        LaurentPoly t = monomial(rc / dc, rlow - dlow);
        quo += t;
        rem -= t * d;
    }
    return quo;
}

std::string LaurentPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        auto [p, c] = *it;
        long long ac = c < 0 ? -c : c;
        if (first)
            os << (c < 0 ? "-" : "");
        else
            os << (c < 0 ? " - " : " + ");
        first = false;
        if (p == 0) {
            os << ac;
            continue;
        }
        if (ac != 1) os << ac << "*";
        os << "q";
        if (p != 1) os << "^" << p;
    }
    return os.str();
}

Report complex_verify(const ProjectiveComplex& c, const DgAlgebra& a) {
    Report r;
    r.suite = "complex_verify";
    const Field& F = a.field();
    int n = static_cast<int>(c.objects.size());
    bool ok_deg = true;
    std::string bad;
    for (const auto& e : c.entries) {
        if (e.source < 0 || e.source >= n || e.target < 0 || e.target >= n) throw std::invalid_argument("entry references unknown object");
        const auto& s = c.objects[e.source];
        const auto& t = c.objects[e.target];
        for (const auto& term : e.x) {
            const auto& b = a.basis(term.index);
            bool block = a.left_idem(term.index) == t.idem && a.right_idem(term.index) == s.idem;
            bool coh = b.cohdeg == 1 + t.a - s.a;
            bool q = !a.has_qdeg() || (*b.qdeg + t.b == s.b);
            if (!(block && coh && q)) {
                ok_deg = false;
                if (bad.empty()) bad = s.label + " -> " + t.label + " term " + b.label;
            }
        }
    }
    r.add("entries consistent with blocks and shifts", ok_deg, "all entries", ok_deg ? "all entries" : "violation at " + bad,
          Provenance::trivial);
    // For each pair (o, o''): sum over paths x_{o'o''} x_{oo'} + (-1)^{a_o''} d(x_{oo''}) = 0.
    std::map<std::pair<int, int>, Element> total;
    for (const auto& e : c.entries) {
        auto key = std::make_pair(e.source, e.target);
        axpy(F, total[key], F.pow_sign(c.objects[e.target].a), a.d(e.x));
    }
    for (const auto& e1 : c.entries)
        for (const auto& e2 : c.entries)
            if (e1.target == e2.source) axpy(F, total[{e1.source, e2.target}], 1, a.multiply(e2.x, e1.x));
    bool ok_sq = true;
    for (const auto& [key, v] : total)
        if (!v.empty()) {
            ok_sq = false;
            if (bad.empty() || ok_deg) bad = c.objects[key.first].label + " -> " + c.objects[key.second].label;
            break;
        }
    r.add("total differential squares to zero", ok_sq, "0", ok_sq ? "0" : "nonzero at " + bad, Provenance::trivial);
    return r;
}

ExpandedComplex expand(const ProjectiveComplex& c, const DgAlgebra& a) {
    ExpandedComplex ex;
    ex.complex.field = a.field();
    std::vector<std::map<int, int>> index(c.objects.size());
    for (int o = 0; o < static_cast<int>(c.objects.size()); ++o) {
        const auto& ob = c.objects[o];
        for (int id : a.left_slice(ob.idem)) {
            index[o][id] = ex.complex.size();
            ex.obj.push_back(o);
            ex.alg.push_back(id);
            ex.complex.cohdeg.push_back(a.basis(id).cohdeg - ob.a);
            ex.complex.qdeg.push_back((a.has_qdeg() ? *a.basis(id).qdeg : 0) + ob.b);
        }
    }
    const Field& F = a.field();
    ex.complex.diff.resize(ex.complex.size());
    for (int t = 0; t < ex.complex.size(); ++t) {
        int o = ex.obj[t];
        std::vector<Entry> raw;
        Scalar sign = F.pow_sign(c.objects[o].a);
        for (const auto& e : a.diff(ex.alg[t])) raw.push_back({index[o].at(e.index), F.mul(sign, e.value)});
        for (const auto& en : c.entries) {
            if (en.source != o) continue;
            Element y = a.multiply(en.x, unit_vector(ex.alg[t]));
            for (const auto& e : y) raw.push_back({index[en.target].at(e.index), e.value});
        }
        ex.complex.diff[t] = canonical(F, std::move(raw));
    }
    return ex;
}

std::map<Bidegree, int> total_complex_cohomology(const ProjectiveComplex& c, const DgAlgebra& a) {
    return cohomology_dims(expand(c, a).complex);
}

std::map<int, LaurentPoly> euler_char_q(const ProjectiveComplex& c) {
    std::map<int, LaurentPoly> out;
    for (const auto& o : c.objects) {
        out[o.idem] += LaurentPoly::monomial((o.a % 2 == 0) ? 1 : -1, o.b);
        if (out[o.idem].is_zero()) out.erase(o.idem);
    }
    return out;
}

LaurentPoly euler_char(const std::map<Bidegree, int>& dims) {
    LaurentPoly p;
    for (const auto& [deg, n] : dims) p += LaurentPoly::monomial((deg.first % 2 == 0) ? n : -n, deg.second);
    return p;
}

}  // namespace catdga
