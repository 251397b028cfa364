#include "catdga/serialize.hpp"

#include <set>

namespace catdga {

using nlohmann::json;

namespace {

json vec_to_json(const Field& f, const SparseVec& v) {
    json out = json::array();
    for (const auto& e : v) out.push_back(json::array({e.index, f.format(e.value)}));
    return out;
}

void require(bool ok, const std::string& what) {
    if (!ok) throw DocumentError(what);
}

int as_index(const json& j, int bound, const std::string& what) {
    require(j.is_number_integer(), what + ": expected an integer");
    auto v = j.get<long long>();
    require(v >= 0 && v < bound, what + ": index " + std::to_string(v) + " out of range");
    return static_cast<int>(v);
}

SparseVec vec_from_json(const Field& f, const json& j, int dim, const std::string& what) {
    require(j.is_array(), what + ": expected a list of [index, coefficient]");
    std::vector<Entry> raw;
    std::set<int> seen;
    for (const auto& t : j) {
        require(t.is_array() && t.size() == 2, what + ": expected [index, coefficient]");
        int k = as_index(t[0], dim, what);
        require(seen.insert(k).second, what + ": repeated index");
        require(t[1].is_string(), what + ": coefficients are decimal strings");
        Scalar c;
        try {
            c = f.parse(t[1].get<std::string>());
        } catch (const std::exception& e) {
            throw DocumentError(what + ": " + e.what());
        }
        raw.push_back({k, c});
    }
    auto v = canonical(f, std::move(raw));
    require(v.size() == j.size(), what + ": zero coefficient");
    return v;
}

}  // namespace

json algebra_to_json(const DgAlgebra& a) {
    const Field& f = a.field();
    json j;
    j["name"] = a.name();
    j["field"] = f.is_rational() ? json("rational") : json(f.characteristic());
    j["hbar"] = a.hbar() ? json(f.format(*a.hbar())) : json(nullptr);
    json basis = json::array();
    for (int i = 0; i < a.dim(); ++i) {
        const auto& b = a.basis(i);
        json e{{"id", i}, {"label", b.label}, {"cohdeg", b.cohdeg}, {"left", a.left_idem(i)}, {"right", a.right_idem(i)}};
        if (b.qdeg) e["qdeg"] = *b.qdeg;
        basis.push_back(std::move(e));
    }
    j["basis"] = std::move(basis);
    json idem = json::array();
    for (int e = 0; e < a.num_idempotents(); ++e) idem.push_back(a.idempotent(e));
    j["idempotents"] = std::move(idem);
    json mult = json::array();
    for (int i = 0; i < a.dim(); ++i)
        for (const auto& [k, v] : a.product_row(i)) mult.push_back(json::array({i, k, vec_to_json(f, v)}));
    j["mult"] = std::move(mult);
    json diff = json::array();
    for (int i = 0; i < a.dim(); ++i)
        if (!a.diff(i).empty()) diff.push_back(json::array({i, vec_to_json(f, a.diff(i))}));
    j["diff"] = std::move(diff);
    return j;
}

DgAlgebra algebra_from_json(const json& j) {
    require(j.is_object(), "algebra document must be an object");
    for (const char* key : {"name", "field", "basis", "idempotents", "mult", "diff"})
        require(j.contains(key), std::string("algebra document lacks '") + key + "'");
    Field f = Field::prime(2);
    const auto& fj = j["field"];
    if (fj.is_string()) {
        require(fj.get<std::string>() == "rational", "field must be a prime or \"rational\"");
        f = Field::rational();
    } else {
        require(fj.is_number_integer(), "field must be a prime or \"rational\"");
        auto p = fj.get<long long>();
        require(is_prime_number(p), "field characteristic " + std::to_string(p) + " is not prime");
        f = Field::prime(p);
    }
    require(j["name"].is_string(), "name must be a string");
    DgAlgebra a(j["name"].get<std::string>(), f);
    if (j.contains("hbar") && !j["hbar"].is_null()) {
        require(j["hbar"].is_string(), "hbar is a decimal string");
        a.set_hbar(f.parse(j["hbar"].get<std::string>()));
    }
    const auto& idem = j["idempotents"];
    require(idem.is_array(), "idempotents must be a list");
    int m = static_cast<int>(idem.size());
    const auto& basis = j["basis"];
    require(basis.is_array(), "basis must be a list");
    int dim = static_cast<int>(basis.size());
    for (int i = 0; i < dim; ++i) {
        const auto& b = basis[i];
        std::string what = "basis[" + std::to_string(i) + "]";
        require(b.is_object() && b.contains("id") && b.contains("label") && b.contains("cohdeg") && b.contains("left") &&
                    b.contains("right"),
                what + ": needs id, label, cohdeg, left, right");
        require(as_index(b["id"], dim, what) == i, what + ": ids must be 0..dim-1 in order");
        require(b["label"].is_string() && b["cohdeg"].is_number_integer(), what + ": bad label or cohdeg");
        BasisElement e{b["label"].get<std::string>(), b["cohdeg"].get<int>(), std::nullopt};
        if (b.contains("qdeg")) {
            require(b["qdeg"].is_number_integer(), what + ": bad qdeg");
            e.qdeg = b["qdeg"].get<int>();
        }
        try {
            a.add_basis(std::move(e), as_index(b["left"], m, what), as_index(b["right"], m, what));
        } catch (const std::invalid_argument& ex) {
            throw DocumentError(what + ": " + ex.what());
        }
    }
    std::set<int> used;
    for (int e = 0; e < m; ++e) {
        require(idem[e].is_array(), "idempotent entries are lists of basis ids");
        std::vector<int> members;
        for (const auto& x : idem[e]) {
            int i = as_index(x, dim, "idempotent " + std::to_string(e));
            require(used.insert(i).second, "basis element in two idempotents");
            require(a.left_idem(i) == e && a.right_idem(i) == e, "idempotent member outside its block");
            members.push_back(i);
        }
        a.add_idempotent(std::move(members));
    }
    require(j["mult"].is_array() && j["diff"].is_array(), "mult and diff must be lists");
    std::set<std::pair<int, int>> seen;
    for (const auto& t : j["mult"]) {
        require(t.is_array() && t.size() == 3, "mult entries are [i, j, terms]");
        int x = as_index(t[0], dim, "mult"), y = as_index(t[1], dim, "mult");
        require(seen.insert({x, y}).second, "repeated product entry");
        a.set_product(x, y, vec_from_json(f, t[2], dim, "mult"));
    }
    std::set<int> dseen;
    for (const auto& t : j["diff"]) {
        require(t.is_array() && t.size() == 2, "diff entries are [i, terms]");
        int x = as_index(t[0], dim, "diff");
        require(dseen.insert(x).second, "repeated diff entry");
        a.set_diff(x, vec_from_json(f, t[1], dim, "diff"));
    }
    return a;
}

json report_to_json(const Report& r) {
    json j;
    j["suite"] = r.suite;
    json params = json::object();
    for (const auto& [k, v] : r.parameters) params[k] = v;
    j["parameters"] = std::move(params);
    json checks = json::array();
    for (const auto& c : r.checks)
        checks.push_back({{"check", c.name},
                          {"status", to_string(c.status)},
                          {"expected", c.expected},
                          {"got", c.got},
                          {"provenance", to_string(c.provenance)}});
    j["checks"] = std::move(checks);
    j["passed"] = r.passed();
    return j;
}

json diagram_to_json(const ArcDiagram& d) {
    json m = json::array();
    for (const auto& [a, b] : d.matching) m.push_back(json::array({a, b}));
    return {{"segments", d.segments}, {"matching", m}, {"n_singular", d.n_singular}};
}

ArcDiagram diagram_from_json(const json& j) {
    require(j.is_object() && j.contains("segments") && j.contains("matching") && j.contains("n_singular"),
            "diagram needs segments, matching, n_singular");
    require(j["segments"].is_array() && j["matching"].is_array() && j["n_singular"].is_number_integer(), "bad diagram fields");
    std::vector<int> seg;
    for (const auto& s : j["segments"]) {
        require(s.is_number_integer(), "segment counts are integers");
        seg.push_back(s.get<int>());
    }
    std::vector<std::pair<int, int>> match;
    for (const auto& p : j["matching"]) {
        require(p.is_array() && p.size() == 2 && p[0].is_number_integer() && p[1].is_number_integer(), "matching entries are [i, j]");
        match.push_back({p[0].get<int>(), p[1].get<int>()});
    }
    try {
        return ArcDiagram::make(seg, match, j["n_singular"].get<int>());
    } catch (const std::invalid_argument& e) {
        throw DocumentError(std::string("invalid diagram: ") + e.what());
    }
}

std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

json parse_document(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw DocumentError(std::string("malformed JSON: ") + e.what());
    }
}

}  // namespace catdga
