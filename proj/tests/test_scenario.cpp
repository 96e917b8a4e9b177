#include <doctest.h>

#include <set>

#include "defdyn/scenario.hpp"

using namespace defdyn;

namespace {
  RunOutcome run(char const* text, bool oracle = false) {
    return run_scenario_text(text, {oracle});
  }
}  // namespace

TEST_CASE("minimal subflows report") {
  auto const r = run(R"({"group": "integers", "level": 4, "tasks": ["minimal-subflows"]})");
  CHECK(r.exit_code == kExitOk);
  CHECK(r.report["status"] == "ok");
  CHECK(r.report["results"][0]["result"]["count"] == 2);
  CHECK(r.report["results"][0].contains("timing_ms"));
}

TEST_CASE("pestov certificate report") {
  auto const r = run(R"({"group": "integers", "tasks": [{"pestov-check": {"moduli": 4}}]})");
  CHECK(r.exit_code == kExitOk);
  auto const& cert = r.report["results"][0]["result"]["certificate"];
  CHECK(set_from_json(GroupContext::integers(), cert["set"]) == evens());
}

TEST_CASE("schema errors") {
  CHECK(run(R"({"group": "integers", "tasks": [)").exit_code == kExitSchemaError);
  CHECK(run(R"([1, 2])").exit_code == kExitSchemaError);
  CHECK(run(R"({"tasks": []})").exit_code == kExitSchemaError);
  CHECK(run(R"({"group": "nope", "tasks": []})").exit_code == kExitSchemaError);
  CHECK(run(R"({"group": "integers", "tasks": ["no-such-task"]})").exit_code == kExitSchemaError);
  CHECK(run(R"({"group": "integers", "tasks": [{"star": {"p": 1}}]})").exit_code == kExitSchemaError);
  CHECK(run(R"({"group": "integers", "tasks": [{"compose": {"g": 1, "h": 2, "x": 3}}]})").exit_code
        == kExitSchemaError);
  CHECK(run(R"({"group": "integers", "tasks": ["minimal-subflows"]})").exit_code == kExitSchemaError);
  CHECK(run(R"({"group": "integers", "level": 0, "tasks": []})").exit_code == kExitSchemaError);
  CHECK(run(R"({"group": "integers", "schema": 9, "tasks": []})").exit_code == kExitSchemaError);
  CHECK(run(R"({"group": {"table": [[0, 1], [1, 1]]}, "tasks": []})").exit_code == kExitSchemaError);
  // schema problems stop the run before any task executes
  auto const late = run(R"({"group": "integers", "tasks": [{"compose": {"g": 1, "h": 2}}, "bad"]})");
  CHECK(late.exit_code == kExitSchemaError);
  CHECK(late.report["results"].empty());
}

TEST_CASE("task errors produce partial reports") {
  auto const r = run(R"({"group": "integers", "level": 4, "tasks": [
      {"universal-ambit-morphism": {"flow": {"rotation": 6}}},
      "minimal-subflows"]})");
  CHECK(r.exit_code == kExitTaskError);
  CHECK(r.report["status"] == "partial");
  CHECK(r.report["results"][0]["error_kind"] == "level-too-coarse");
  CHECK(r.report["results"][1]["result"]["count"] == 2);
}

TEST_CASE("levels list") {
  auto const r = run(R"({"group": "integers", "levels": [1, 2, 3], "tasks": ["fixed-points"]})");
  auto const& per = r.report["results"][0]["result"]["per_level"];
  REQUIRE(per.size() == 3);
  CHECK(per[0]["result"]["fixed_points"].size() == 2);
  CHECK(per[1]["result"]["fixed_points"].empty());
}

TEST_CASE("task spellings") {
  auto const a = run(R"({"group": "integers", "tasks": [{"compose": {"g": 3, "h": 4}}]})");
  auto const b = run(R"({"group": "integers", "tasks": [{"op": "compose", "g": 3, "h": 4}]})");
  CHECK(a.report["results"][0]["result"] == b.report["results"][0]["result"]);
  CHECK(a.report["results"][0]["result"]["result"] == 7);
}

TEST_CASE("oracle agreement fields") {
  auto const r = run(R"({"group": "integers", "level": 6, "tasks": [
      "minimal-subflows", "find-idempotents",
      {"star": {"p": {"kind": "limit", "sign": "-", "res": 1, "mod": 6},
                "q": {"kind": "limit", "sign": "+", "res": 5, "mod": 6}}},
      {"difference-set": {"set": {"at_least": 0}}},
      {"is-left-generic": {"set": "odds"}}]})",
                     true);
  REQUIRE(r.exit_code == kExitOk);
  for (auto const& res : r.report["results"]) {
    CHECK(res["result"]["oracle"]["agrees"] == true);
  }
}

TEST_CASE("determinism and round trip") {
  auto const text = R"({"group": "integers", "level": 4, "tasks": [
      "universal-minimal-flow", "invariant-measure",
      {"acting-set": {"point": {"kind": "limit", "sign": "+", "res": 1, "mod": 4}, "set": {"at_least": 3}}},
      {"pestov-check": {"moduli": 3}}]})";
  auto const a = run(text);
  auto const b = run(text);
  CHECK(strip_timings(a.report).dump() == strip_timings(b.report).dump());

  auto const zz  = GroupContext::integers();
  auto const& u  = a.report["results"][0]["result"];
  auto const  p0 = point_from_json(zz, u["idempotent"]);
  CHECK(to_json(p0) == u["idempotent"]);
  auto const& s  = a.report["results"][2]["result"]["result"];
  CHECK(to_json(set_from_json(zz, s)) == s);
}

TEST_CASE("capabilities") {
  auto const c = list_capabilities();
  std::set<std::string> names;
  for (auto const& t : c["tasks"]) {
    names.insert(t["name"].get<std::string>());
  }
  CHECK(names.count("star") == 1);
  CHECK(names.count("universal-minimal-flow") == 1);
  CHECK(names.count("pestov-check") == 1);
  CHECK(Json::parse(c.dump()) == c);
  CHECK(list_capabilities() == c);
}

TEST_CASE("text rendering") {
  auto const r = run(R"({"group": "C3", "tasks": ["g00"]})");
  auto const t = render_text(r.report);
  CHECK(t.find("[1] g00") != std::string::npos);
  CHECK(t.find("status: ok") != std::string::npos);
}

TEST_CASE("json forms") {
  auto const zz = GroupContext::integers();
  CHECK(set_from_json(zz, Json::parse(R"({"class": [1, 3]})")) == residue_class(1, 3));
  CHECK(set_from_json(zz, Json::parse(R"({"interval": [-2, 2]})")) == interval(-2, 2));
  CHECK(set_from_json(zz, Json::parse(R"("odds")")) == odds());
  CHECK_THROWS_AS(set_from_json(zz, Json::parse(R"({"mod": 0, "up": []})")), SchemaError);
  auto const g = group_from_json(Json::parse(R"({"cyclic": 5})"));
  CHECK(g.order() == 5);
  auto const p = group_from_json(Json::parse(R"({"product": ["integers", "C2"]})"));
  CHECK(p.is_product());
  CHECK(to_json(element_from_json(p, Json::parse("[3, 1]"))) == Json::parse("[3, 1]"));
  CHECK_THROWS_AS(element_from_json(GroupContext::cyclic(3), Json(5)), SchemaError);
}
