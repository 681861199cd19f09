#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "covert/csv.hpp"
#include "covert/params.hpp"

// Analytic-versus-simulation report: every analytic quantity next to its
// Monte-Carlo estimate and interval.
namespace covert::verify {

enum class Status { kPass, kFail, kAttributed };

const char* status_name(Status s);

struct Row {
  std::string quantity;
  double analytic = 0.0;
  double mc_mean = 0.0;
  double ci_halfwidth = 0.0;
  double ci_lower = 0.0;
  double ci_upper = 0.0;
  Status status = Status::kFail;
};

struct Options {
  std::uint64_t trials = 100000;
  std::uint64_t seed = 7;
  std::uint64_t rate_trials = 1000000;
  unsigned threads = 0;
  double r_bar = 0.0;  // <= 0: estimate by Monte Carlo
  std::vector<int> window_grid = {1, 2, 4, 7, 10, 15, 20, 30, 50, 80};
  std::vector<int> chunk_grid = {1, 2, 3, 4, 5, 6, 10, 15, 20, 30};
  int chunk_window = 10;
};

/// Rows:
///   postponement              F(r_a') vs postponed-slot frequency (3 SE)
///   false_alarm[L=..]         delta vs H0 window exceedances (3 SE)
///   p_ca_averaged[L=..]       P_ca with P_MD averaged over each stratum (99% Wilson)
///   p_ca_conditional[L=..]    conditional-mean P_ca (99% Wilson)
///   p_ca_literal[L=..]        paper-literal P_ca
///   p_ov_averaged[n=..]       P_ov from the averaged chunk P_ca (99% Wilson)
///   p_ov_conditional[n=..]    P_ov from the conditional-mean chunk P_ca
/// A representative-distance row that misses its interval is `attributed`
/// when the next finer row (conditional-mean, then averaged) passes.
std::vector<Row> run(const ScenarioConfig& cfg, const Options& options);

CsvTable to_table(const std::vector<Row>& rows);

}  // namespace covert::verify
