// Harness plumbing: the TOML-subset parser, schema validation with embedded
// defaults, report writers, and scenario determinism. Scenario math is
// covered by the other suites; here the contract is parsing, rejection,
// byte-identical reruns, and the failed-row path for internal errors.
#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include <json.hpp>

#include "hadamard/config.hpp"
#include "hadamard/report.hpp"
#include "hadamard/scenarios.hpp"

using namespace hadamard;

TEST_CASE("config parser handles the supported value kinds") {
  Config cfg = parse_config(
      "# top comment\n"
      "scenario = \"gromov-angle\"  # trailing comment\n"
      "seed = 7\n"
      "flag = true\n"
      "name = \"with \\\"quotes\\\" and #hash\"\n"
      "big = 1_000.5\n"
      "\n"
      "[params]\n"
      "alphas_deg = [30, 45, 60]\n"
      "labels = [\"a\", \"b\"]\n"
      "tolerance = 1e-3\n");
  CHECK(cfg.get_string("scenario") == "gromov-angle");
  CHECK(cfg.get_int("seed") == 7);
  CHECK(cfg.get_bool("flag"));
  CHECK(cfg.get_string("name") == "with \"quotes\" and #hash");
  CHECK(cfg.get_number("big") == Catch::Approx(1000.5));
  CHECK(cfg.get_numbers("params.alphas_deg") == std::vector<double>{30.0, 45.0, 60.0});
  CHECK(cfg.at("params.labels").str_list == std::vector<std::string>{"a", "b"});
  CHECK(cfg.get_number("params.tolerance") == Catch::Approx(1e-3));
  // Table keys record their source line for error messages.
  CHECK(cfg.at("params.tolerance").line == 11);
}

TEST_CASE("config parser rejects malformed input with line numbers") {
  auto fails_with = [](const std::string& text, const std::string& needle) {
    try {
      parse_config(text);
      FAIL("expected ConfigError for: " << text);
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  fails_with("a = 1\nb 2\n", "line 2");
  fails_with("a = \"open\n", "line 1");
  fails_with("a = [1, [2]]\n", "nested");
  fails_with("a = 1\na = 2\n", "duplicate key 'a'");
  fails_with("a = maybe\n", "cannot parse value");
  fails_with("[params\n", "unterminated table");
  fails_with("a = [1, \"x\"]\n", "bad array number");
  fails_with("2b! = 1\n", "bad key");
}

TEST_CASE("config type accessors reject mismatched kinds") {
  Config cfg = parse_config("n = 3.5\ns = \"x\"\n");
  CHECK_THROWS_AS(cfg.get_string("n"), ConfigError);
  CHECK_THROWS_AS(cfg.get_number("s"), ConfigError);
  CHECK_THROWS_AS(cfg.get_int("n"), ConfigError);  // non-integral number
  CHECK_THROWS_AS(cfg.at("missing"), ConfigError);
}

TEST_CASE("overrides use the value grammar with a raw-string fallback") {
  Config cfg = parse_config("scenario = \"gromov-angle\"\n");
  apply_override(cfg, "seed=99");
  apply_override(cfg, "params.tolerance=1e-2");
  apply_override(cfg, "params.alphas_deg=[10, 20]");
  apply_override(cfg, "note=plain words");
  CHECK(cfg.get_int("seed") == 99);
  CHECK(cfg.get_number("params.tolerance") == Catch::Approx(1e-2));
  CHECK(cfg.get_numbers("params.alphas_deg") == std::vector<double>{10.0, 20.0});
  CHECK(cfg.get_string("note") == "plain words");
  CHECK_THROWS_AS(apply_override(cfg, "no_equals"), ConfigError);
  CHECK_THROWS_AS(apply_override(cfg, "bad key=1"), ConfigError);
}

TEST_CASE("validation merges defaults and rejects unknown keys") {
  Config raw = parse_config("scenario = \"gromov-angle\"\n[params]\ntolerance = 1e-2\n");
  Config cfg = validate_config(raw);
  // Explicit value kept, defaults merged and echoed.
  CHECK(cfg.get_number("params.tolerance") == Catch::Approx(1e-2));
  CHECK(cfg.get_int("seed") == 2026);
  CHECK(cfg.get_string("out_dir") == "reports");
  CHECK(cfg.get_number("params.curvature") == Catch::Approx(-1.0));
  CHECK(cfg.get_numbers("params.alphas_deg").size() == 8);

  CHECK_THROWS_AS(validate_config(parse_config("seed = 1\n")), ConfigError);
  CHECK_THROWS_AS(validate_config(parse_config("scenario = \"nope\"\n")), ConfigError);
  // Unknown key: message carries the offending line.
  try {
    validate_config(parse_config("scenario = \"gromov-angle\"\n[params]\nbogus = 1\n"));
    FAIL("expected rejection of unknown key");
  } catch (const ConfigError& e) {
    std::string msg = e.what();
    CHECK(msg.find("bogus") != std::string::npos);
    CHECK(msg.find("line 3") != std::string::npos);
  }
  // Type mismatch and integrality are schema errors, not runtime failures.
  CHECK_THROWS_AS(
      validate_config(parse_config("scenario = \"gromov-angle\"\nseed = \"x\"\n")),
      ConfigError);
  CHECK_THROWS_AS(validate_config(parse_config("scenario = \"gromov-angle\"\nseed = 1.5\n")),
                  ConfigError);
}

TEST_CASE("identical config and seed give a byte-identical CSV") {
  Config raw = parse_config("scenario = \"crossratio-invariance\"\n[params]\n"
                            "base_pairs = 2\nquadruples = 5\n");
  Config cfg = validate_config(raw);
  ScenarioReport a = run_scenario(cfg);
  ScenarioReport b = run_scenario(cfg);
  CHECK(a.all_pass());
  CHECK(a.rows.size() == 10);
  CHECK(to_csv(a) == to_csv(b));  // wall time lives in the JSON provenance only
  CHECK(to_csv(a).rfind("scenario,case_id,base_dist,quad,computed,expected,"
                        "abs_residual,tolerance,pass\n", 0) == 0);
}

TEST_CASE("scenario-internal errors become failed rows, not crashes") {
  // Positive curvature is schema-valid but rejected by the model constructor.
  Config cfg = validate_config(parse_config(
      "scenario = \"gromov-angle\"\n[params]\ncurvature = 1.0\n"));
  ScenarioReport rep = run_scenario(cfg);
  REQUIRE(rep.rows.size() == 1);
  CHECK_FALSE(rep.all_pass());
  CHECK_FALSE(rep.rows[0].pass);
  CHECK(rep.rows[0].inputs[0].rfind("error: ", 0) == 0);
}

TEST_CASE("json mirror carries rows, summary and provenance") {
  Config cfg = validate_config(parse_config(
      "scenario = \"gromov-angle\"\nseed = 5\n[params]\nalphas_deg = [90, 120]\n"));
  ScenarioReport rep = run_scenario(cfg);
  nlohmann::json j = to_json(rep);
  CHECK(j["scenario"] == "gromov-angle");
  CHECK(j["rows"].size() == 2);
  CHECK(j["summary"]["cases"] == 2);
  CHECK(j["summary"]["passed"] == 2);
  CHECK(j["summary"]["all_pass"] == true);
  CHECK(j["provenance"]["config"]["seed"] == 5.0);
  CHECK(j["provenance"]["config"]["params"]["curvature"] == -1.0);
  CHECK(j["provenance"]["version"].get<std::string>().size() > 0);
  CHECK(j["rows"][0]["inputs"]["alpha_rad"].is_string());
}

TEST_CASE("csv cells with separators are quoted") {
  ScenarioReport rep;
  rep.scenario = "x";
  rep.input_columns = {"note"};
  CaseRow r;
  r.inputs = {"a,b \"c\""};
  r.pass = true;
  rep.rows.push_back(r);
  std::string csv = to_csv(rep);
  CHECK(csv.find("\"a,b \"\"c\"\"\"") != std::string::npos);
}

TEST_CASE("svg chart is emitted with both series") {
  Config cfg = validate_config(parse_config("scenario = \"gromov-angle\"\n"));
  ScenarioReport rep = run_scenario(cfg);
  std::string svg = to_svg(rep);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("polyline") != std::string::npos);
  CHECK(svg.find("alpha_rad") != std::string::npos);  // numeric first column on the axis
}

TEST_CASE("registry exposes the nine scenarios by name") {
  const auto& reg = scenario_registry();
  REQUIRE(reg.size() == 9);
  for (const auto& s : reg) {
    CAPTURE(s.name);
    CHECK(find_scenario(s.name) == &s);
    CHECK_FALSE(s.input_columns.empty());
    CHECK_FALSE(s.summary.empty());
  }
  CHECK(find_scenario("gromov-angle") != nullptr);
  CHECK(find_scenario("no-such") == nullptr);
}
