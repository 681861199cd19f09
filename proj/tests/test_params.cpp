#include <doctest.h>

#include <cmath>
#include <string>

#include "covert/params.hpp"

using namespace covert;

namespace {

ConfigError expect_config_error(const std::string& doc) {
  try {
    load_config(doc);
  } catch (const ConfigError& e) {
    return e;
  }
  FAIL("expected ConfigError for: " << doc);
  return ConfigError("", "");
}

}  // namespace

TEST_CASE("table1 defaults document") {
  const ScenarioConfig c = load_config("defaults: table1\n");
  CHECK(c == table1_defaults());
  CHECK(c.u == 1000.0);
  CHECK(c.m_bits == 600);
  CHECK(c.delta == 0.05);
  CHECK(c.l_s == 20);
  CHECK(c.h_w == 150.0);
  CHECK(c.v_w == 15.0);
  CHECK(c.r_a_proj == 100.0);
  CHECK(c.r_w_proj == 150.0);
}

TEST_CASE("overrides on top of defaults, nested sections flatten") {
  const ScenarioConfig c = load_config(
      "defaults: table1\n"
      "geometry:\n"
      "  u: 1200\n"
      "  r_a_proj: 80\n"
      "m_bits: 300\n");
  CHECK(c.u == 1200.0);
  CHECK(c.r_a_proj == 80.0);
  CHECK(c.m_bits == 300);
  CHECK(c.h_w == 150.0);
}

TEST_CASE("invariant violations name the rule") {
  const auto radii = expect_config_error("defaults: table1\nr_a_proj: 200\nr_w_proj: 150\n");
  CHECK(std::string(radii.what()).find("r_w_proj must exceed r_a_proj") != std::string::npos);
  const auto delta = expect_config_error("defaults: table1\ndelta: 0\n");
  CHECK(std::string(delta.what()).find("delta must lie in (0,1)") != std::string::npos);
  CHECK(delta.field() == "delta");
}

TEST_CASE("structural errors") {
  expect_config_error("defaults: table1\nbogus_key: 1\n");
  expect_config_error("defaults: table1\nu: 1000\nu: 900\n");
  expect_config_error("u: 1000\n");  // incomplete without defaults
  expect_config_error("defaults: table1\nm_bits: 12.5\n");
  expect_config_error("defaults: table1\nu: abc\n");
  expect_config_error("defaults: nope\n");
}

TEST_CASE("a complete document needs no defaults key") {
  std::string doc;
  for (const auto& [k, v] : describe(table1_defaults())) doc += k + ": " + v + "\n";
  CHECK(load_config(doc) == table1_defaults());
}

TEST_CASE("apply_override validates") {
  ScenarioConfig c = table1_defaults();
  apply_override(c, "m_bits=300");
  CHECK(c.m_bits == 300);
  CHECK_THROWS_AS(apply_override(c, "delta=1"), ConfigError);
  CHECK_THROWS_AS(apply_override(c, "no_equals"), ConfigError);
  CHECK_THROWS_AS(apply_override(c, "nope=1"), ConfigError);
}

TEST_CASE("linear constants") {
  const LinearConstants lin = to_linear(table1_defaults());
  CHECK(lin.g_b == doctest::Approx(63.09573444801933).epsilon(1e-12));
  CHECK(lin.p_a_w == 1.0);
  CHECK(lin.sigma_b2_w == doctest::Approx(1.0e-14).epsilon(1e-12));
  CHECK(lin.sigma_w2_w == doctest::Approx(1.0e-12).epsilon(1e-12));
  CHECK(lin.g_w == doctest::Approx(1e-4).epsilon(1e-12));
  CHECK(lin.eta == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("dB conversions round-trip") {
  for (double x : {-120.0, -40.0, 0.0, 3.0, 18.0}) {
    CHECK(linear_to_db(db_to_linear(x)) == doctest::Approx(x).epsilon(1e-12));
    CHECK(watts_to_dbm(dbm_to_watts(x)) == doctest::Approx(x).epsilon(1e-12));
  }
}

TEST_CASE("config hash tracks every field") {
  const ScenarioConfig base = table1_defaults();
  CHECK(config_hash(base) == config_hash(table1_defaults()));
  CHECK(config_hash_hex(base).size() == 16);
  for (const auto& name : field_names()) {
    ScenarioConfig c = base;
    set_field(c, name, name == "m_bits" || name == "l_s" || name == "beta_slots" ? "7" : "0.123");
    CHECK_MESSAGE(config_hash(c) != config_hash(base), name);
  }
}
