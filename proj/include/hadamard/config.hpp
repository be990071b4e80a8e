// Scenario run configuration: a flat TOML subset (comments, one level of
// [table] headers, strings, numbers, booleans, flat arrays) parsed into an
// ordered key/value list. Keys inside [table] are stored dotted ("params.x").
// Errors carry 1-based line numbers; schema checks live with the scenarios.
#pragma once

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hadamard {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigValue {
  enum Kind { kString, kNumber, kBool, kNumberList, kStringList };
  Kind kind = kNumber;
  std::string str;
  double num = 0.0;
  bool flag = false;
  std::vector<double> num_list;
  std::vector<std::string> str_list;
  int line = 0;  // source line, 0 for programmatic values

  static ConfigValue string(std::string s) {
    ConfigValue v;
    v.kind = kString;
    v.str = std::move(s);
    return v;
  }
  static ConfigValue number(double d) {
    ConfigValue v;
    v.kind = kNumber;
    v.num = d;
    return v;
  }
  static ConfigValue boolean(bool b) {
    ConfigValue v;
    v.kind = kBool;
    v.flag = b;
    return v;
  }
  static ConfigValue numbers(std::vector<double> xs) {
    ConfigValue v;
    v.kind = kNumberList;
    v.num_list = std::move(xs);
    return v;
  }
  static ConfigValue strings(std::vector<std::string> xs) {
    ConfigValue v;
    v.kind = kStringList;
    v.str_list = std::move(xs);
    return v;
  }

  static const char* kind_name(Kind k) {
    switch (k) {
      case kString: return "string";
      case kNumber: return "number";
      case kBool: return "boolean";
      case kNumberList: return "number list";
      case kStringList: return "string list";
    }
    return "?";
  }
  const char* kind_name() const { return kind_name(kind); }
};

// Ordered key -> value map; insertion order is preserved so provenance echoes
// read like the source file. Lookups are linear (configs are tiny).
class Config {
 public:
  bool has(const std::string& key) const { return find(key) != nullptr; }

  const ConfigValue* find(const std::string& key) const {
    for (const auto& e : entries_)
      if (e.first == key) return &e.second;
    return nullptr;
  }

  // Insert or overwrite, keeping the original position on overwrite.
  void set(const std::string& key, ConfigValue v) {
    for (auto& e : entries_)
      if (e.first == key) {
        e.second = std::move(v);
        return;
      }
    entries_.emplace_back(key, std::move(v));
  }

  const ConfigValue& at(const std::string& key) const {
    const ConfigValue* v = find(key);
    if (!v) throw ConfigError("missing key '" + key + "'");
    return *v;
  }

  std::string get_string(const std::string& key) const {
    return expect(key, ConfigValue::kString).str;
  }
  double get_number(const std::string& key) const {
    return expect(key, ConfigValue::kNumber).num;
  }
  int get_int(const std::string& key) const {
    double d = get_number(key);
    int i = static_cast<int>(d);
    if (static_cast<double>(i) != d)
      throw ConfigError("key '" + key + "' must be an integer");
    return i;
  }
  bool get_bool(const std::string& key) const {
    return expect(key, ConfigValue::kBool).flag;
  }
  std::vector<double> get_numbers(const std::string& key) const {
    return expect(key, ConfigValue::kNumberList).num_list;
  }

  const std::vector<std::pair<std::string, ConfigValue>>& entries() const { return entries_; }

 private:
  const ConfigValue& expect(const std::string& key, ConfigValue::Kind k) const {
    const ConfigValue& v = at(key);
    if (v.kind != k)
      throw ConfigError("key '" + key + "' has type " + std::string(v.kind_name()) +
                        ", expected " + ConfigValue::kind_name(k));
    return v;
  }

  std::vector<std::pair<std::string, ConfigValue>> entries_;
};

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Strip a trailing comment, honoring quoted strings.
inline std::string strip_comment(const std::string& s) {
  bool in_str = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (in_str) {
      if (c == '\\') ++i;
      else if (c == '"') in_str = false;
    } else if (c == '"') {
      in_str = true;
    } else if (c == '#') {
      return s.substr(0, i);
    }
  }
  return s;
}

inline bool valid_bare_key(const std::string& k) {
  if (k.empty()) return false;
  for (char c : k)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') return false;
  return true;
}

inline std::string parse_basic_string(const std::string& s, int line) {
  if (s.size() < 2 || s.front() != '"' || s.back() != '"')
    throw ConfigError("line " + std::to_string(line) + ": unterminated string");
  std::string out;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    char c = s[i];
    if (c != '\\') {
      out += c;
      continue;
    }
    ++i;  // the escaped character; must not be the closing quote
    if (i + 1 >= s.size())
      throw ConfigError("line " + std::to_string(line) + ": dangling escape");
    char e = s[i];
    switch (e) {
      case '"': out += '"'; break;
      case '\\': out += '\\'; break;
      case 'n': out += '\n'; break;
      case 't': out += '\t'; break;
      default:
        throw ConfigError("line " + std::to_string(line) + ": unsupported escape \\" +
                          std::string(1, e));
    }
  }
  return out;
}

inline bool parse_number(const std::string& s, double* out) {
  if (s.empty()) return false;
  // TOML permits readability underscores between digits.
  std::string t;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '_') {
      bool digits = i > 0 && i + 1 < s.size() &&
                    std::isdigit(static_cast<unsigned char>(s[i - 1])) &&
                    std::isdigit(static_cast<unsigned char>(s[i + 1]));
      if (!digits) return false;
      continue;
    }
    t += s[i];
  }
  const char* p = t.c_str();
  char* end = nullptr;
  double d = std::strtod(p, &end);
  if (end != p + t.size() || t.size() == 0) return false;
  *out = d;
  return true;
}

// Split a [...] body at top-level commas (no nested arrays in this subset).
inline std::vector<std::string> split_array_items(const std::string& body, int line) {
  std::vector<std::string> items;
  std::string cur;
  bool in_str = false;
  for (std::size_t i = 0; i < body.size(); ++i) {
    char c = body[i];
    if (in_str) {
      if (c == '\\' && i + 1 < body.size()) {
        cur += c;
        cur += body[++i];
        continue;
      }
      if (c == '"') in_str = false;
      cur += c;
    } else if (c == '"') {
      in_str = true;
      cur += c;
    } else if (c == '[' || c == ']') {
      throw ConfigError("line " + std::to_string(line) + ": nested arrays are not supported");
    } else if (c == ',') {
      items.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (in_str) throw ConfigError("line " + std::to_string(line) + ": unterminated string");
  std::string last = trim(cur);
  if (!last.empty()) items.push_back(last);
  return items;
}

inline ConfigValue parse_value(const std::string& raw, int line) {
  std::string s = trim(raw);
  if (s.empty()) throw ConfigError("line " + std::to_string(line) + ": missing value");
  ConfigValue v;
  v.line = line;
  if (s.front() == '"') {
    v.kind = ConfigValue::kString;
    v.str = parse_basic_string(s, line);
    return v;
  }
  if (s == "true" || s == "false") {
    v.kind = ConfigValue::kBool;
    v.flag = (s == "true");
    return v;
  }
  if (s.front() == '[') {
    if (s.back() != ']')
      throw ConfigError("line " + std::to_string(line) + ": unterminated array");
    std::vector<std::string> items = split_array_items(s.substr(1, s.size() - 2), line);
    if (items.empty()) {
      v.kind = ConfigValue::kNumberList;  // empty arrays default to numeric
      return v;
    }
    if (items.front().front() == '"') {
      v.kind = ConfigValue::kStringList;
      for (const auto& it : items) {
        if (it.empty() || it.front() != '"')
          throw ConfigError("line " + std::to_string(line) + ": mixed array element types");
        v.str_list.push_back(parse_basic_string(it, line));
      }
      return v;
    }
    v.kind = ConfigValue::kNumberList;
    for (const auto& it : items) {
      double d = 0.0;
      if (!parse_number(it, &d))
        throw ConfigError("line " + std::to_string(line) + ": bad array number '" + it + "'");
      v.num_list.push_back(d);
    }
    return v;
  }
  double d = 0.0;
  if (parse_number(s, &d)) {
    v.kind = ConfigValue::kNumber;
    v.num = d;
    return v;
  }
  throw ConfigError("line " + std::to_string(line) + ": cannot parse value '" + s + "'");
}

}  // namespace detail

inline Config parse_config(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string raw;
  std::string table;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = detail::trim(detail::strip_comment(raw));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']')
        throw ConfigError("line " + std::to_string(line) + ": unterminated table header");
      table = detail::trim(s.substr(1, s.size() - 2));
      if (!detail::valid_bare_key(table))
        throw ConfigError("line " + std::to_string(line) + ": bad table name '" + table + "'");
      continue;
    }
    std::size_t eq = s.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line) + ": expected 'key = value'");
    std::string key = detail::trim(s.substr(0, eq));
    if (!detail::valid_bare_key(key))
      throw ConfigError("line " + std::to_string(line) + ": bad key '" + key + "'");
    if (!table.empty()) key = table + "." + key;
    if (cfg.has(key))
      throw ConfigError("line " + std::to_string(line) + ": duplicate key '" + key + "'");
    cfg.set(key, detail::parse_value(s.substr(eq + 1), line));
  }
  return cfg;
}

inline Config parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

// CLI override "key=value" or "table.key=value". The value uses the file
// grammar; anything that fails to parse as a scalar/array is taken as a raw
// string so shells do not need TOML quoting (--set params.profile=example2).
inline void apply_override(Config& cfg, const std::string& keyval) {
  std::size_t eq = keyval.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ConfigError("override '" + keyval + "' is not of the form key=value");
  std::string key = detail::trim(keyval.substr(0, eq));
  std::size_t dot = key.find('.');
  bool ok = dot == std::string::npos
                ? detail::valid_bare_key(key)
                : detail::valid_bare_key(key.substr(0, dot)) &&
                      detail::valid_bare_key(key.substr(dot + 1));
  if (!ok)
    throw ConfigError("override key '" + key + "' is not a bare or table.key name");
  std::string val = detail::trim(keyval.substr(eq + 1));
  ConfigValue v;
  try {
    v = detail::parse_value(val, 0);
  } catch (const ConfigError&) {
    v = ConfigValue::string(val);
  }
  cfg.set(key, std::move(v));
}

}  // namespace hadamard
