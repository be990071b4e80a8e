// hadamard-kit: scenario runner CLI. Subcommands:
//   run <config.toml> [--out DIR] [--plots] [--seed N] [--set key=value]...
//   list-scenarios
//   validate <config.toml>
// Exit codes: 0 all rows pass, 1 any row fails, 2 config or usage error.
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hadamard/config.hpp"
#include "hadamard/report.hpp"
#include "hadamard/scenarios.hpp"

using namespace hadamard;

namespace {

// Load, override and validate a config; prints the error and returns false on
// any config problem (the caller exits 2).
bool load_config(const std::string& path, const std::vector<std::string>& sets,
                 const int* seed, Config* out) {
  try {
    Config raw = parse_config_file(path);
    for (const auto& kv : sets) apply_override(raw, kv);
    if (seed) raw.set("seed", ConfigValue::number(*seed));
    *out = validate_config(raw);
    return true;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "%s: config error: %s\n", path.c_str(), e.what());
    return false;
  }
}

int cmd_run(const std::string& path, const std::vector<std::string>& sets, const int* seed,
            const std::string& out_flag, bool plots) {
  Config cfg;
  if (!load_config(path, sets, seed, &cfg)) return 2;
  if (!out_flag.empty()) cfg.set("out_dir", ConfigValue::string(out_flag));

  ScenarioReport rep = run_scenario(cfg);
  std::vector<std::string> files;
  try {
    files = write_reports(rep, cfg.get_string("out_dir"), plots);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "report error: %s\n", e.what());
    return 2;
  }

  for (const auto& r : rep.rows) {
    if (r.pass) continue;
    std::string in;
    for (const auto& s : r.inputs) in += (in.empty() ? "" : ", ") + s;
    std::printf("FAIL case %d [%s]: computed %s, expected %s, residual %s > tol %s\n",
                r.case_id, in.c_str(), format_double(r.computed).c_str(),
                format_double(r.expected).c_str(), format_double(r.abs_residual).c_str(),
                format_double(r.tolerance).c_str());
  }
  std::printf("%s: %zu cases, %d passed, %d failed, max residual %s, %.2f s\n",
              rep.scenario.c_str(), rep.rows.size(), rep.passed(), rep.failed(),
              format_double(rep.max_residual()).c_str(), rep.wall_seconds);
  for (const auto& f : files) std::printf("wrote %s\n", f.c_str());
  return rep.all_pass() ? 0 : 1;
}

int cmd_validate(const std::string& path) {
  Config cfg;
  if (!load_config(path, {}, nullptr, &cfg)) return 2;
  std::printf("OK: scenario '%s'\n", cfg.get_string("scenario").c_str());
  for (const auto& [key, v] : cfg.entries()) {
    if (key == "scenario") continue;
    std::string shown;
    switch (v.kind) {
      case ConfigValue::kString: shown = "\"" + v.str + "\""; break;
      case ConfigValue::kNumber: shown = format_double(v.num); break;
      case ConfigValue::kBool: shown = v.flag ? "true" : "false"; break;
      case ConfigValue::kNumberList:
        shown = "[";
        for (double d : v.num_list) shown += (shown.size() > 1 ? ", " : "") + format_double(d);
        shown += "]";
        break;
      case ConfigValue::kStringList:
        shown = "[";
        for (const auto& s : v.str_list)
          shown += (shown.size() > 1 ? ", \"" : "\"") + s + "\"";
        shown += "]";
        break;
    }
    std::printf("  %s = %s\n", key.c_str(), shown.c_str());
  }
  return 0;
}

int cmd_list() {
  for (const auto& s : scenario_registry())
    std::printf("%-24s %s\n", s.name.c_str(), s.summary.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hadamard-kit: boundary-map scenario runner"};
  app.require_subcommand(1);

  std::string run_config, out_dir;
  std::vector<std::string> sets;
  int seed = 0;
  bool plots = false;
  CLI::App* run = app.add_subcommand("run", "run a scenario config and write reports");
  run->add_option("config", run_config, "TOML config file")->required();
  run->add_option("--out", out_dir, "output directory (overrides out_dir)");
  run->add_flag("--plots", plots, "also write an SVG chart");
  CLI::Option* seed_opt = run->add_option("--seed", seed, "override the random seed");
  run->add_option("--set", sets, "override a config key (key=value, repeatable)");

  std::string val_config;
  CLI::App* val = app.add_subcommand("validate", "parse and schema-check a config");
  val->add_option("config", val_config, "TOML config file")->required();

  CLI::App* list = app.add_subcommand("list-scenarios", "list registered scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // CLI11 prints help/errors itself; anything but a clean help exit is a
    // usage problem, which this tool reports as a config error.
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (run->parsed())
    return cmd_run(run_config, sets, seed_opt->count() > 0 ? &seed : nullptr, out_dir, plots);
  if (val->parsed()) return cmd_validate(val_config);
  if (list->parsed()) return cmd_list();
  return 2;
}
