// Report assembly and writers for scenario runs. Fixed CSV column order:
// scenario, case_id, <scenario input columns...>, computed, expected,
// abs_residual, tolerance, pass. The JSON mirror adds summary and provenance
// blocks (config echo, version, wall time); the SVG plot charts residual and
// tolerance per case on a log scale.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hadamard/config.hpp"

namespace hadamard {

// Shortest decimal form that round-trips to the same double.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  if (std::strtod(buf, nullptr) != v) std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// One checked case. Two-sided checks use |computed - expected|; one-sided
// checks store the shortfall/overshoot. Either way the residual is kept
// nonnegative and finite so every row reads the same.
struct CaseRow {
  int case_id = 0;
  std::vector<std::string> inputs;  // formatted, one per scenario input column
  double computed = 0.0;
  double expected = 0.0;
  double abs_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct ScenarioReport {
  std::string scenario;
  std::vector<std::string> input_columns;
  std::vector<CaseRow> rows;
  Config config;        // validated config with defaults merged in
  std::string version;  // toolkit version string for provenance
  double wall_seconds = 0.0;

  int passed() const {
    int n = 0;
    for (const auto& r : rows) n += r.pass ? 1 : 0;
    return n;
  }
  int failed() const { return static_cast<int>(rows.size()) - passed(); }
  bool all_pass() const { return failed() == 0 && !rows.empty(); }
  double max_residual() const {
    double m = 0.0;
    for (const auto& r : rows) m = std::max(m, r.abs_residual);
    return m;
  }
};

namespace detail {

inline std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace detail

inline std::string to_csv(const ScenarioReport& rep) {
  std::string out = "scenario,case_id";
  for (const auto& c : rep.input_columns) out += "," + detail::csv_cell(c);
  out += ",computed,expected,abs_residual,tolerance,pass\n";
  for (const auto& r : rep.rows) {
    out += detail::csv_cell(rep.scenario) + "," + std::to_string(r.case_id);
    for (const auto& in : r.inputs) out += "," + detail::csv_cell(in);
    out += "," + format_double(r.computed) + "," + format_double(r.expected) + "," +
           format_double(r.abs_residual) + "," + format_double(r.tolerance) + "," +
           (r.pass ? "true" : "false") + "\n";
  }
  return out;
}

inline nlohmann::json config_json(const Config& cfg) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [key, v] : cfg.entries()) {
    nlohmann::json* slot = &j;
    std::size_t dot = key.find('.');
    std::string leaf = key;
    if (dot != std::string::npos) {
      slot = &j[key.substr(0, dot)];
      leaf = key.substr(dot + 1);
    }
    switch (v.kind) {
      case ConfigValue::kString: (*slot)[leaf] = v.str; break;
      case ConfigValue::kNumber: (*slot)[leaf] = v.num; break;
      case ConfigValue::kBool: (*slot)[leaf] = v.flag; break;
      case ConfigValue::kNumberList: (*slot)[leaf] = v.num_list; break;
      case ConfigValue::kStringList: (*slot)[leaf] = v.str_list; break;
    }
  }
  return j;
}

inline nlohmann::json to_json(const ScenarioReport& rep) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : rep.rows) {
    nlohmann::json in = nlohmann::json::object();
    for (std::size_t i = 0; i < rep.input_columns.size() && i < r.inputs.size(); ++i)
      in[rep.input_columns[i]] = r.inputs[i];
    rows.push_back({{"case_id", r.case_id},
                    {"inputs", in},
                    {"computed", r.computed},
                    {"expected", r.expected},
                    {"abs_residual", r.abs_residual},
                    {"tolerance", r.tolerance},
                    {"pass", r.pass}});
  }
  return {{"scenario", rep.scenario},
          {"rows", rows},
          {"summary",
           {{"cases", rep.rows.size()},
            {"passed", rep.passed()},
            {"failed", rep.failed()},
            {"max_abs_residual", rep.max_residual()},
            {"all_pass", rep.all_pass()}}},
          {"provenance",
           {{"version", rep.version},
            {"wall_time_seconds", rep.wall_seconds},
            {"config", config_json(rep.config)}}}};
}

namespace detail {

// Map a value to plot coordinates on a clamped log10 axis.
struct LogAxis {
  double lo = -18.0, hi = 0.0;  // log10 range
  double y0 = 0.0, y1 = 0.0;    // pixel range (y0 bottom, y1 top)
  double to_pixel(double v) const {
    double l = std::log10(std::max(v, 1e-18));
    l = std::min(std::max(l, lo), hi);
    return y0 + (y1 - y0) * (l - lo) / (hi - lo);
  }
};

inline void svg_text(std::string& out, double x, double y, const std::string& s,
                     const char* anchor, int size) {
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "<text x=\"%.1f\" y=\"%.1f\" font-size=\"%d\" font-family=\"sans-serif\" "
                "text-anchor=\"%s\">%s</text>\n",
                x, y, size, anchor, s.c_str());
  out += buf;
}

}  // namespace detail

// Static line chart: abs_residual (solid, dots) and tolerance (dashed) per
// case, log10 vertical scale. The horizontal axis uses the first input column
// when it is numeric on every row, otherwise the case index.
inline std::string to_svg(const ScenarioReport& rep) {
  const double W = 720, H = 440, L = 70, R = 24, T = 44, B = 52;
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
                "viewBox=\"0 0 %.0f %.0f\">\n",
                W, H, W, H);
  out += buf;
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  detail::svg_text(out, W / 2, T - 18, rep.scenario + " \xE2\x80\x94 residual vs tolerance",
                   "middle", 15);

  // Horizontal values: first input column if numeric everywhere, else index.
  std::vector<double> xs;
  std::string x_label = "case";
  bool numeric = !rep.rows.empty() && !rep.input_columns.empty();
  for (const auto& r : rep.rows) {
    if (!numeric) break;
    char* end = nullptr;
    if (r.inputs.empty()) {
      numeric = false;
      break;
    }
    double v = std::strtod(r.inputs[0].c_str(), &end);
    if (end == r.inputs[0].c_str() || *end != '\0') {
      numeric = false;
      break;
    }
    xs.push_back(v);
  }
  if (numeric) {
    x_label = rep.input_columns[0];
  } else {
    xs.clear();
    for (std::size_t i = 0; i < rep.rows.size(); ++i) xs.push_back(static_cast<double>(i));
  }
  double xmin = xs.empty() ? 0.0 : *std::min_element(xs.begin(), xs.end());
  double xmax = xs.empty() ? 1.0 : *std::max_element(xs.begin(), xs.end());
  if (xmax - xmin < 1e-300) xmax = xmin + 1.0;
  auto px = [&](double v) { return L + (W - L - R) * (v - xmin) / (xmax - xmin); };

  // Vertical log range from the data, one decade of padding each side.
  double vmax = 1e-18, vmin = 1.0;
  for (const auto& r : rep.rows) {
    vmax = std::max({vmax, r.abs_residual, r.tolerance});
    if (r.abs_residual > 0.0) vmin = std::min(vmin, r.abs_residual);
    if (r.tolerance > 0.0) vmin = std::min(vmin, r.tolerance);
  }
  detail::LogAxis ay;
  ay.lo = std::floor(std::log10(std::max(vmin, 1e-18))) - 1.0;
  ay.hi = std::ceil(std::log10(vmax)) + 1.0;
  if (ay.hi - ay.lo < 2.0) ay.hi = ay.lo + 2.0;
  ay.y0 = H - B;
  ay.y1 = T;

  // Gridlines and decade labels (at most ~12 labelled decades).
  int span = static_cast<int>(ay.hi - ay.lo);
  int stride = span > 12 ? (span + 11) / 12 : 1;
  for (int d = 0; d <= span; d += stride) {
    double lv = ay.lo + d;
    double y = ay.to_pixel(std::pow(10.0, lv));
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"#ddd\"/>\n", L,
                  y, W - R, y);
    out += buf;
    std::snprintf(buf, sizeof buf, "1e%+03d", static_cast<int>(lv));
    detail::svg_text(out, L - 6, y + 4, buf, "end", 11);
  }

  // Axes.
  std::snprintf(buf, sizeof buf,
                "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n"
                "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n",
                L, T, L, H - B, L, H - B, W - R, H - B);
  out += buf;
  detail::svg_text(out, (L + W - R) / 2, H - 14, x_label, "middle", 12);
  detail::svg_text(out, L, H - 14, format_double(xmin), "start", 11);
  detail::svg_text(out, W - R, H - 14, format_double(xmax), "end", 11);

  auto polyline = [&](const char* style, double (*pick)(const CaseRow&)) {
    std::string pts;
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
      char p[64];
      std::snprintf(p, sizeof p, "%.1f,%.1f ", px(xs[i]), ay.to_pixel(pick(rep.rows[i])));
      pts += p;
    }
    out += "<polyline fill=\"none\" " + std::string(style) + " points=\"" + pts + "\"/>\n";
  };
  polyline("stroke=\"#c44\" stroke-dasharray=\"6 4\"",
           [](const CaseRow& r) { return r.tolerance; });
  polyline("stroke=\"#246\" stroke-width=\"1.5\"",
           [](const CaseRow& r) { return r.abs_residual; });
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    std::snprintf(buf, sizeof buf,
                  "<circle cx=\"%.1f\" cy=\"%.1f\" r=\"2.5\" fill=\"%s\"/>\n", px(xs[i]),
                  ay.to_pixel(rep.rows[i].abs_residual), rep.rows[i].pass ? "#246" : "#c00");
    out += buf;
  }
  detail::svg_text(out, W - R, T + 14, "residual", "end", 11);
  detail::svg_text(out, W - R, T + 28, "tolerance (dashed)", "end", 11);
  out += "</svg>\n";
  return out;
}

// Write <out_dir>/<scenario>.csv and .json (and .svg when plots is set);
// returns the list of files written.
inline std::vector<std::string> write_reports(const ScenarioReport& rep,
                                              const std::string& out_dir, bool plots) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  std::vector<std::string> written;
  auto emit = [&](const char* ext, const std::string& body) {
    fs::path p = fs::path(out_dir) / (rep.scenario + ext);
    std::ofstream f(p);
    if (!f) throw std::runtime_error("cannot write report file " + p.string());
    f << body;
    written.push_back(p.string());
  };
  emit(".csv", to_csv(rep));
  emit(".json", to_json(rep).dump(2) + "\n");
  if (plots) emit(".svg", to_svg(rep));
  return written;
}

}  // namespace hadamard
