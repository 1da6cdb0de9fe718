#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "avmod/commands.hpp"
#include "avmod/module_io.hpp"
#include "avmod/zoo.hpp"

using namespace avmod;
using nlohmann::json;

namespace {

json forms2_by_hand() {
  // D_{i,e_k} has a single 1 in row k, column i.
  auto unit = [](int row, int col) {
    json m = json::array({json::array({"0", "0"}), json::array({"0", "0"})});
    m[row][col] = "1";
    return m;
  };
  return {{"name", "hand-forms"},
          {"dim", 2},
          {"rank", 2},
          {"order", 1},
          {"terms", json::array({
                        {{"i", 1}, {"alpha", {1, 0}}, {"matrix", unit(0, 0)}},
                        {{"i", 1}, {"alpha", {0, 1}}, {"matrix", unit(1, 0)}},
                        {{"i", 2}, {"alpha", {1, 0}}, {"matrix", unit(0, 1)}},
                        {{"i", 2}, {"alpha", {0, 1}}, {"matrix", unit(1, 1)}},
                    })}};
}

std::filesystem::path write_temp(const std::string& name, const json& j) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << j.dump(2);
  return path;
}

RunConfig quick_config() {
  RunConfig c;
  c.dims = {1, 2};
  c.trials = 3;
  c.p_max = 2;
  c.max_degree = 3;
  return c;
}

}  // namespace

TEST_CASE("every zoo module round-trips through JSON") {
  for (const AVModule& m : zoo_catalog()) {
    const json j = module_to_json(m.data());
    const AVModule back = AVModule::create(module_from_json(json::parse(j.dump())));
    CHECK_MESSAGE(back == m, m.name());
    CHECK(back.name() == m.name());
  }
}

TEST_CASE("a hand-encoded forms module validates and equals the zoo one") {
  const AVModule m = AVModule::create(module_from_json(forms2_by_hand()));
  CHECK(m.order() == 1);
  CHECK(lie_map_order(m) == 1);
  CHECK(m == differential_forms(2));
  const auto path = write_temp("avmod_test_forms2.json", forms2_by_hand());
  CHECK(load_module_file(path) == differential_forms(2));
  std::filesystem::remove(path);
}

TEST_CASE("schema errors") {
  json j = forms2_by_hand();
  j["order"] = 0;  // |α| = 1 exceeds the declared order
  CHECK_THROWS_AS(module_from_json(j), SchemaError);
  j = forms2_by_hand();
  j["rank"] = 3;
  CHECK_THROWS_AS(module_from_json(j), SchemaError);
  j = forms2_by_hand();
  j["terms"][0]["i"] = 3;
  CHECK_THROWS_AS(module_from_json(j), SchemaError);
  j = forms2_by_hand();
  j["terms"][0]["alpha"] = {1};
  CHECK_THROWS_AS(module_from_json(j), SchemaError);
  j = forms2_by_hand();
  j["terms"].push_back(j["terms"][0]);
  CHECK_THROWS_AS(module_from_json(j), SchemaError);
  j = forms2_by_hand();
  j.erase("terms");
  CHECK_THROWS_AS(module_from_json(j), SchemaError);
  j = forms2_by_hand();
  j["terms"][0]["matrix"][0][0] = "x1 +* 2";
  CHECK_THROWS_AS(module_from_json(j), ParseError);
  CHECK_THROWS_AS(module_from_json(json::array()), SchemaError);
  CHECK_THROWS_AS(load_module_file("/nonexistent/module.json"), SchemaError);
}

TEST_CASE("an incompatible module file fails validation") {
  json j = forms2_by_hand();
  j["terms"].erase(3);
  const auto path = write_temp("avmod_test_broken.json", j);
  CHECK_THROWS_AS(load_module_file(path), InvalidModule);
  const CommandResult r = cmd_validate({path.string(), {}});
  CHECK(r.exit_status == 1);
  CHECK(r.report["results"][0]["status"] == "fail");
  std::filesystem::remove(path);
}

TEST_CASE("verify reports are deterministic and echo the seed") {
  RunConfig c = quick_config();
  c.seed = 77;
  const CommandResult a = cmd_verify(c, {"lemma3", "lemma4", "localize"});
  const CommandResult b = cmd_verify(c, {"lemma3", "lemma4", "localize"});
  CHECK(a.exit_status == 0);
  CHECK(a.report.dump() == b.report.dump());
  CHECK(a.report["config"]["seed"] == 77);
  CHECK(a.report["tool"] == kToolName);
  CHECK(a.report["summary"]["failed"] == 0);
  CHECK(a.report["summary"]["checks"].get<int>() > 0);
  c.seed = 78;
  CHECK(cmd_verify(c, {"lemma3", "lemma4", "localize"}).report.dump() != a.report.dump());
}

TEST_CASE("verify exit statuses") {
  RunConfig c = quick_config();
  CHECK(cmd_verify(c, {"lemma2"}).exit_status == 0);
  CHECK(cmd_verify(c, {"lemma3-commutator"}).exit_status == 0);
  c.inject_fault = true;
  const CommandResult bad = cmd_verify(c, {"lemma3"});
  CHECK(bad.exit_status == 1);
  CHECK(bad.report["summary"]["failed"].get<int>() > 0);
  CHECK(bad.report["results"][0]["failures"][0].contains("witness"));
  c.inject_fault = false;
  CHECK(cmd_verify(c, {"no-such-suite"}).exit_status == 2);
  CHECK(cmd_verify(c, {}).exit_status == 2);
  c.trials = 0;
  const CommandResult usage = cmd_verify(c, {"lemma3"});
  CHECK(usage.exit_status == 2);
  CHECK(usage.report.contains("error"));
  c = quick_config();
  c.dims = {9};
  CHECK(cmd_verify(c, {"lemma3"}).exit_status == 2);
}

TEST_CASE("module commands") {
  ModuleSpec jets{"zoo:jets", {}};
  jets.params.n = 2;
  const CommandResult order = cmd_order(jets, std::nullopt);
  CHECK(order.exit_status == 0);
  CHECK(order.report["results"][0]["lie_map_order"] == 2);
  CHECK(order.report["results"][0]["oracle_order"] == 2);
  CHECK(order.report["results"][0]["bound"] == 9);

  const CommandResult ann = cmd_annihilator({"zoo:forms", {}}, "x1", "d1");
  CHECK(ann.exit_status == 0);
  CHECK(ann.report["results"][0]["min_annihilating_order"] == 2);
  const CommandResult constant = cmd_annihilator({"zoo:forms", {}}, "5", "d1");
  CHECK(constant.report["results"][0]["min_annihilating_order"] == 1);
  CHECK(constant.report["results"][0].contains("note"));
  CHECK(cmd_annihilator({"zoo:forms", {}}, "x1 +", "d1").exit_status == 2);
  CHECK(cmd_annihilator({"zoo:forms", {}}, "x3", "d1").exit_status == 2);

  CHECK(cmd_validate({"zoo:adjoint", {}}).exit_status == 0);
  CHECK(cmd_validate({"zoo:moebius", {}}).exit_status == 2);
  CHECK(cmd_order({"/nonexistent.json", {}}, std::nullopt).exit_status == 2);

  const CommandResult exported = cmd_export({"zoo:forms", {2, 1, 1, 1}});
  CHECK(exported.exit_status == 0);
  CHECK(AVModule::create(module_from_json(exported.report["module"])) == differential_forms(2));
}

TEST_CASE("text rendering derives from the JSON") {
  const CommandResult r = cmd_validate({"zoo:forms", {}});
  const std::string text = render_text(r.report);
  CHECK(text.find("tool: avtool") != std::string::npos);
  CHECK(text.find("results[0].status: pass") != std::string::npos);
  CHECK(text.find("exit_status: 0") != std::string::npos);
}
