#include "covert/params.hpp"

#include <yaml-cpp/yaml.h>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <variant>

namespace covert {

namespace {

using FieldPtr = std::variant<double ScenarioConfig::*, int ScenarioConfig::*>;

struct FieldDesc {
  const char* name;
  FieldPtr ptr;
};

const std::vector<FieldDesc>& fields() {
  static const std::vector<FieldDesc> table = {
      {"p_a_dbw", &ScenarioConfig::p_a_dbw},
      {"g_a_db", &ScenarioConfig::g_a_db},
      {"g_b_db", &ScenarioConfig::g_b_db},
      {"g_w_db", &ScenarioConfig::g_w_db},
      {"k0", &ScenarioConfig::k0},
      {"eta_db", &ScenarioConfig::eta_db},
      {"m_bits", &ScenarioConfig::m_bits},
      {"sigma_w_dbm", &ScenarioConfig::sigma_w_dbm},
      {"sigma_b_dbm", &ScenarioConfig::sigma_b_dbm},
      {"delta", &ScenarioConfig::delta},
      {"l_s", &ScenarioConfig::l_s},
      {"u", &ScenarioConfig::u},
      {"d_ab", &ScenarioConfig::d_ab},
      {"h_w", &ScenarioConfig::h_w},
      {"v_w", &ScenarioConfig::v_w},
      {"r_a_proj", &ScenarioConfig::r_a_proj},
      {"r_w_proj", &ScenarioConfig::r_w_proj},
      {"alpha_los", &ScenarioConfig::alpha_los},
      {"alpha_nlos", &ScenarioConfig::alpha_nlos},
      {"t_c_minutes", &ScenarioConfig::t_c_minutes},
      {"lambda_per_min", &ScenarioConfig::lambda_per_min},
      {"beta_slots", &ScenarioConfig::beta_slots},
  };
  return table;
}

const FieldDesc* find_field(std::string_view key) {
  for (const auto& f : fields()) {
    if (key == f.name) return &f;
  }
  return nullptr;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

double parse_double(std::string_view key, std::string_view text) {
  const std::string t = trim(text);
  double value = 0.0;
  const auto* begin = t.data();
  const auto* end = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (t.empty() || ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw ConfigError(std::string(key), std::string(key) + ": expected a finite number, got '" + t + "'");
  }
  return value;
}

int parse_int(std::string_view key, std::string_view text) {
  const std::string t = trim(text);
  int value = 0;
  const auto* begin = t.data();
  const auto* end = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (t.empty() || ec != std::errc() || ptr != end) {
    // Accept integral values written in floating-point form ("600.0", "1e3").
    const double d = parse_double(key, t);
    if (d != std::floor(d) || std::abs(d) > 2.0e9) {
      throw ConfigError(std::string(key), std::string(key) + ": expected an integer, got '" + t + "'");
    }
    return static_cast<int>(d);
  }
  return value;
}

std::string format_value(const ScenarioConfig& cfg, const FieldDesc& f) {
  return std::visit(
      [&](auto ptr) -> std::string {
        char buf[64];
        if constexpr (std::is_same_v<decltype(ptr), int ScenarioConfig::*>) {
          std::snprintf(buf, sizeof buf, "%d", cfg.*ptr);
        } else {
          std::snprintf(buf, sizeof buf, "%.17g", cfg.*ptr);
        }
        return buf;
      },
      f.ptr);
}

void flatten(const YAML::Node& node, std::map<std::string, std::string>& out) {
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    const YAML::Node& value = kv.second;
    if (value.IsMap()) {
      flatten(value, out);
    } else if (value.IsScalar()) {
      if (out.contains(key)) {
        throw ConfigError(key, "duplicate key '" + key + "'");
      }
      out[key] = value.as<std::string>();
    } else {
      throw ConfigError(key, "key '" + key + "' must hold a scalar value");
    }
  }
}

}  // namespace

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double linear_to_db(double linear) { return 10.0 * std::log10(linear); }
double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

ScenarioConfig table1_defaults() { return ScenarioConfig{}; }

const std::vector<std::string>& field_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& f : fields()) v.emplace_back(f.name);
    return v;
  }();
  return names;
}

void set_field(ScenarioConfig& cfg, std::string_view key, std::string_view value) {
  const FieldDesc* f = find_field(key);
  if (f == nullptr) {
    throw ConfigError(std::string(key), "unknown config key '" + std::string(key) + "'");
  }
  std::visit(
      [&](auto ptr) {
        if constexpr (std::is_same_v<decltype(ptr), int ScenarioConfig::*>) {
          cfg.*ptr = parse_int(key, value);
        } else {
          cfg.*ptr = parse_double(key, value);
        }
      },
      f->ptr);
}

void validate(const ScenarioConfig& c) {
  auto require = [](bool ok, const char* field, const char* msg) {
    if (!ok) throw ConfigError(field, msg);
  };
  require(c.u > 0.0, "u", "u must be positive");
  require(c.d_ab > 0.0, "d_ab", "d_ab must be positive");
  require(c.h_w >= 0.0, "h_w", "h_w must be non-negative");
  require(c.v_w > 0.0, "v_w", "v_w must be positive");
  require(c.m_bits >= 1, "m_bits", "m_bits must be at least 1");
  require(c.l_s >= 0, "l_s", "l_s must be non-negative");
  require(c.delta > 0.0 && c.delta < 1.0, "delta", "delta must lie in (0,1)");
  require(c.r_a_proj >= 0.0, "r_a_proj", "r_a_proj must be non-negative");
  require(c.r_w_proj > c.r_a_proj, "r_w_proj", "r_w_proj must exceed r_a_proj");
  require(c.r_w_proj < std::sqrt(2.0) * c.u, "r_w_proj", "r_w_proj must be below sqrt(2)*u");
  require(c.k0 >= 0.0, "k0", "k0 must be non-negative");
  require(c.alpha_los > 0.0, "alpha_los", "alpha_los must be positive");
  require(c.alpha_nlos > 0.0, "alpha_nlos", "alpha_nlos must be positive");
  require(c.t_c_minutes > 0.0, "t_c_minutes", "t_c_minutes must be positive");
  require(c.lambda_per_min > 0.0, "lambda_per_min", "lambda_per_min must be positive");
  require(c.beta_slots >= 1, "beta_slots", "beta_slots must be at least 1");
}

ScenarioConfig load_config(std::string_view document) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(document));
  } catch (const YAML::Exception& e) {
    throw ConfigError("", std::string("malformed config document: ") + e.what());
  }
  std::map<std::string, std::string> entries;
  if (root.IsMap()) {
    flatten(root, entries);
  } else if (!root.IsNull()) {
    throw ConfigError("", "config document must be a key/value mapping");
  }

  bool use_defaults = false;
  if (auto it = entries.find("defaults"); it != entries.end()) {
    if (trim(it->second) != "table1") {
      throw ConfigError("defaults", "unsupported defaults directive '" + it->second + "'");
    }
    use_defaults = true;
    entries.erase(it);
  }

  ScenarioConfig cfg = table1_defaults();
  for (const auto& f : fields()) {
    auto it = entries.find(f.name);
    if (it == entries.end()) {
      if (!use_defaults) {
        throw ConfigError(f.name, std::string("missing required key '") + f.name + "' (add 'defaults: table1' to fill unspecified keys)");
      }
      continue;
    }
    set_field(cfg, f.name, it->second);
    entries.erase(it);
  }
  if (!entries.empty()) {
    const auto& key = entries.begin()->first;
    throw ConfigError(key, "unknown config key '" + key + "'");
  }
  validate(cfg);
  return cfg;
}

ScenarioConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_config(ss.str());
}

void apply_override(ScenarioConfig& cfg, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError("", "override '" + std::string(assignment) + "' is not of the form key=value");
  }
  const std::string key = trim(assignment.substr(0, eq));
  set_field(cfg, key, assignment.substr(eq + 1));
  validate(cfg);
}

LinearConstants to_linear(const ScenarioConfig& cfg) {
  return LinearConstants{
      .p_a_w = db_to_linear(cfg.p_a_dbw),
      .g_a = db_to_linear(cfg.g_a_db),
      .g_b = db_to_linear(cfg.g_b_db),
      .g_w = db_to_linear(cfg.g_w_db),
      .eta = db_to_linear(cfg.eta_db),
      .sigma_w2_w = dbm_to_watts(cfg.sigma_w_dbm),
      .sigma_b2_w = dbm_to_watts(cfg.sigma_b_dbm),
  };
}

std::vector<std::pair<std::string, std::string>> describe(const ScenarioConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> out;
  out.reserve(fields().size());
  for (const auto& f : fields()) out.emplace_back(f.name, format_value(cfg, f));
  return out;
}

std::uint64_t config_hash(const ScenarioConfig& cfg) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& [name, value] : describe(cfg)) {
    for (char c : name + "=" + value + ";") {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

std::string config_hash_hex(const ScenarioConfig& cfg) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(config_hash(cfg)));
  return buf;
}

}  // namespace covert
