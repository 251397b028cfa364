#include <doctest.h>

#include "catdga/hecke.hpp"
#include "catdga/serialize.hpp"
#include "catdga/strands.hpp"

using namespace catdga;
using nlohmann::json;

namespace {

bool same_tables(const DgAlgebra& x, const DgAlgebra& y) {
    if (x.dim() != y.dim() || x.num_idempotents() != y.num_idempotents()) return false;
    for (int i = 0; i < x.dim(); ++i) {
        if (x.diff(i) != y.diff(i) || x.basis(i).label != y.basis(i).label || x.basis(i).qdeg != y.basis(i).qdeg) return false;
        for (int j = 0; j < x.dim(); ++j)
            if (x.product(i, j) != y.product(i, j)) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("algebra documents round trip") {
    for (const auto& a : {build_rk(2, Field::prime(3), 1), build_rk_nil(2, Field::prime(5)), build_rnk(3, 2, Field::prime(3)).algebra,
                          build_rk(2, Field::rational(), 1)}) {
        std::string text = canonical_dump(algebra_to_json(a));
        auto b = algebra_from_json(parse_document(text));
        CHECK(same_tables(a, b));
        CHECK(canonical_dump(algebra_to_json(b)) == text);
        CHECK(verify_dga(b).passed());
    }
}

TEST_CASE("coefficients are decimal strings and keys are sorted") {
    auto j = algebra_to_json(build_rk(2, Field::prime(3), 1));
    CHECK(j["field"] == 3);
    CHECK(j["hbar"] == "1");
    for (const auto& t : j["mult"])
        for (const auto& e : t[2]) CHECK(e[1].is_string());
    std::string text = canonical_dump(j);
    CHECK(text.find("\"basis\"") < text.find("\"diff\""));
    CHECK(text.find("\"diff\"") < text.find("\"field\""));
}

TEST_CASE("bad documents are rejected") {
    auto good = algebra_to_json(build_rk(1, Field::prime(3), 1));
    auto broken = [&](auto edit) {
        json j = good;
        edit(j);
        CHECK_THROWS_AS(algebra_from_json(j), DocumentError);
    };
    broken([](json& j) { j.erase("basis"); });
    broken([](json& j) { j["field"] = 4; });
    broken([](json& j) { j["field"] = "reals"; });
    broken([](json& j) { j["basis"][0]["id"] = 5; });
    broken([](json& j) { j["basis"][1]["label"] = j["basis"][0]["label"]; });
    broken([](json& j) { j["mult"].push_back(json::array({0, 9, json::array()})); });
    broken([](json& j) { j["mult"].push_back(j["mult"][0]); });
    broken([](json& j) { j["diff"].push_back(json::array({0, json::array({json::array({1, 2})})})); });
    broken([](json& j) { j["diff"].push_back(json::array({0, json::array({json::array({1, "0"})})})); });
    broken([](json& j) { j["idempotents"][0].push_back(j["idempotents"][0][0]); });
    CHECK_THROWS_AS(parse_document("{\"a\": "), DocumentError);
}

TEST_CASE("arc diagram documents") {
    auto t = ArcDiagram::torus();
    auto j = diagram_to_json(t);
    CHECK(j["segments"] == json::array({6}));
    CHECK(j["n_singular"] == 2);
    auto u = diagram_from_json(j);
    CHECK(u.matching == t.matching);
    CHECK_THROWS_AS(diagram_from_json(json{{"segments", {3}}, {"matching", {{1, 2}, {2, 3}}}, {"n_singular", 0}}), DocumentError);
    CHECK_THROWS_AS(diagram_from_json(json{{"segments", {3}}}), DocumentError);
}

TEST_CASE("reports carry status and provenance") {
    Report r;
    r.suite = "s";
    r.add("a", true, "1", "1", Provenance::paper);
    r.add("b", false, "1", "2", Provenance::derived);
    r.info("c", "x", Provenance::trivial);
    auto j = report_to_json(r);
    CHECK(j["checks"].size() == 3);
    CHECK(j["checks"][0]["provenance"] == "PAPER");
    CHECK(j["checks"][1]["status"] == "fail");
    CHECK(j["checks"][2]["status"] == "info");
    CHECK(j["passed"] == false);
}
