#include "helpers.hpp"

using namespace th;

namespace {

Json run(const std::string& group, const std::string& q, int g = 1, int n = 0, std::optional<long> d = 0) {
    ComputeRequest r;
    r.group = group;
    r.quantity = q;
    r.g = g;
    r.n = n;
    r.delta = d;
    return compute(r);
}

std::string kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return "none";
}

}  // namespace

TEST_CASE("envelopes for the documented commands") {
    Json a = run("GL:4", "coker-ev-tilde", 2, 0, 1);
    CHECK(a["result"]["group"]["invariant_factors"].empty());
    CHECK(a["result"]["group"]["order"] == 1);

    Json b = run("Spin:8", "coker-omega", 1, 1, 0);
    CHECK(b["result"]["group"]["invariant_factors"] == Json::array({2, 2}));

    Json c = run("torus:1", "coker-gamma-bar", 3, 0, 0);
    CHECK(c["result"]["group"]["invariant_factors"] == Json::array({2}));
    CHECK_FALSE(c["theorems"].empty());
}

TEST_CASE("envelope shape") {
    Json e = run("SL:4/mu:2", "pi1");
    std::vector<std::string> keys;
    for (auto& [k, v] : e.items()) keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"input", "quantity", "result", "assumptions", "theorems", "checks", "notes"});
    CHECK(e["result"]["pi1"]["text"] == "Z/2");
    CHECK(envelope_markdown(e).find("pi1") != std::string::npos);
    Json f = run("GL:2", "rpic", 2, 1, 1);
    CHECK(f["result"]["free_rank"] == 1 * 2 + 1 + 1);
    // invariant factors stay ascending
    Json g = run("SO:8", "coker-ev-tilde", 1, 0, 0);
    CHECK(g["result"]["group"]["invariant_factors"] == Json::array({2}));
}

TEST_CASE("errors and exit codes") {
    CHECK(kind_of([] { run("SL:4/mu:3", "pi1"); }) == "InvalidIsogeny");
    CHECK(kind_of([] { run("SL:2", "nonsense"); }) == "ParseError");
    CHECK(kind_of([] { run("SL:2", "genus0", 1, 1); }) == "GenusOutOfRange");
    CHECK(kind_of([] { run("SL:2", "genus0", 0, 0); }) == "NeedsMarkedPoint");
    CHECK(kind_of([] { run("torus:1 x SL:2", "pi1", 1, 0, 1); }) == "IncompatibleDelta");
    CHECK(kind_of([] {
              ComputeRequest r;
              r.group = "PGL:2";
              r.delta_vec = "1/3";
              compute(r);
          }) == "NotInLattice");
    CHECK(kind_of([] { run("SL:3", "multiplier-even"); }) == "none");
    CHECK(exit_code_for("ParseError") == 2);
    CHECK(exit_code_for("NotInLattice") == 2);
    CHECK(exit_code_for("GenusOutOfRange") == 3);
    CHECK(exit_code_for("NeedsMarkedPoint") == 3);
    CHECK(exit_code_for("InternalConsistency") == 1);
}

TEST_CASE("family tables") {
    TableOptions o;
    o.family = "FG";
    auto rows = family_table(o, 1);
    CHECK(rows.size() == 2);
    for (const auto& r : rows) CHECK(r.ok);
    o.family = "tori";
    o.dim = 1, o.g = 3, o.dmax = 4;
    rows = family_table(o, 1);
    CHECK(rows.size() == 9);
    for (const auto& r : rows) CHECK(r.ok);
    Json j = table_json("tori", rows);
    CHECK(j["all_agree"] == true);
    CHECK(table_markdown("tori", rows).find("ERROR") == std::string::npos);
}

TEST_CASE("parallel_for covers every index once") {
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i]++; });
    for (int h : hits) CHECK(h == 1);
}
