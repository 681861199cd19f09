#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace covert {

/// Raised for malformed or invalid scenario configurations. `field()` names
/// the offending key when one can be identified.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error(what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Scenario parameters in their declared units (dB, dBm, meters, symbols).
///
/// Defaults are the baseline simulation table: 0 dBW transmit power,
/// G_a = 0 dB, G_b = 18 dB, G_w = -40 dB, K0 = 5, eta = -10 dB, M = 600 bits,
/// sigma_w^2 = -90 dBm, sigma_b^2 = -110 dBm, delta = 0.05, l_s = 20 symbols,
/// u = 1000 m, d_ab = 500 km, H_w = 150 m, v_w = 15 m/s, r_a' = 100 m,
/// r_w' = 150 m. The case-study block uses t_c = 10 min, beta = 100 slots.
struct ScenarioConfig {
  double p_a_dbw = 0.0;
  double g_a_db = 0.0;
  double g_b_db = 18.0;
  double g_w_db = -40.0;
  double k0 = 5.0;
  double eta_db = -10.0;
  int m_bits = 600;
  double sigma_w_dbm = -90.0;
  double sigma_b_dbm = -110.0;
  double delta = 0.05;
  int l_s = 20;
  double u = 1000.0;
  double d_ab = 5.0e5;
  double h_w = 150.0;
  double v_w = 15.0;
  double r_a_proj = 100.0;
  double r_w_proj = 150.0;
  double alpha_los = 1.0;
  double alpha_nlos = 1.5;
  double t_c_minutes = 10.0;
  double lambda_per_min = 0.1;
  int beta_slots = 100;

  bool operator==(const ScenarioConfig&) const = default;
};

/// Linear-scale constants derived once from a ScenarioConfig.
struct LinearConstants {
  double p_a_w;       // watts
  double g_a;
  double g_b;
  double g_w;
  double eta;
  double sigma_w2_w;  // watts
  double sigma_b2_w;  // watts
};

double db_to_linear(double db);
double dbm_to_watts(double dbm);
double linear_to_db(double linear);
double watts_to_dbm(double watts);

/// Default scenario parameters.
ScenarioConfig table1_defaults();

/// Parses a YAML key/value document. Nested mappings are flattened and
/// their leaf keys must be field names. Every field is required unless the
/// document carries `defaults: table1`.
ScenarioConfig load_config(std::string_view document);

/// Reads and parses a config file.
ScenarioConfig load_config_file(const std::string& path);

/// Applies a single `key=value` override and re-validates.
void apply_override(ScenarioConfig& cfg, std::string_view assignment);

/// Sets one field by name from its textual value (no validation).
void set_field(ScenarioConfig& cfg, std::string_view key, std::string_view value);

/// Throws ConfigError naming the first violated invariant.
void validate(const ScenarioConfig& cfg);

LinearConstants to_linear(const ScenarioConfig& cfg);

/// Field names in declaration order.
const std::vector<std::string>& field_names();

/// (name, value) pairs with values printed at full precision.
std::vector<std::pair<std::string, std::string>> describe(const ScenarioConfig& cfg);

/// Stable 64-bit FNV-1a hash of the canonical field listing.
std::uint64_t config_hash(const ScenarioConfig& cfg);

std::string config_hash_hex(const ScenarioConfig& cfg);

}  // namespace covert
