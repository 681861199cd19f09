#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "covert/detection.hpp"
#include "covert/geometry.hpp"
#include "covert/params.hpp"
#include "covert/random.hpp"

// Event-level Monte-Carlo model of a transmission slot: random placement,
// periodic detection attempts, chase to the catching radius. It is the
// ground truth the analytic modules are checked against.
namespace covert::sim {

enum class SlotKind { kPostponed, kUndetected, kDetectedNotCaught, kCaught };

const char* slot_kind_name(SlotKind kind);

struct SlotOutcome {
  SlotKind kind = SlotKind::kUndetected;
  double d_proj = 0.0;                        // meters
  std::optional<int> first_detection_symbol;  // end of the first successful window
};

struct SimOptions {
  unsigned threads = 0;       // 0: hardware concurrency
  bool random_phase = false;  // offset the first attempt uniformly in [0, l + l_s)
  bool per_symbol = false;    // build T_w from per-symbol energies
  bool retry_caught = false;  // case 2: restart a caught message instead of dropping it
};

/// Slot model with everything that does not change between slots
/// precomputed. Immutable; share freely across workers.
class SlotSimulator {
 public:
  SlotSimulator(const ScenarioConfig& cfg, int l, double gamma_w, double r_bar,
                SimOptions options = {});

  SlotOutcome simulate(int chunk_symbols, Rng& rng) const;

  int window() const { return l_; }
  double threshold() const { return gamma_w_; }
  const SimOptions& options() const { return options_; }

 private:
  ScenarioConfig cfg_;
  LinearConstants lin_;
  int l_;
  double gamma_w_;
  double r_bar_;
  SimOptions options_;
};

/// One slot at an explicit threshold gamma_w.
SlotOutcome simulate_slot(const ScenarioConfig& cfg, int l, double gamma_w, int chunk_symbols,
                          double r_bar, Rng& rng, const SimOptions& options = {});

/// Binomial proportion with a Wilson score interval.
struct ProportionEstimate {
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  double p_hat = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double ci_halfwidth = 0.0;  // (upper - lower) / 2

  bool contains(double p) const { return p >= lower && p <= upper; }
};

/// z for a two-sided 99% interval.
inline constexpr double kZ99 = 2.5758293035489004;

ProportionEstimate wilson_interval(std::uint64_t successes, std::uint64_t trials,
                                   double z = kZ99);

struct SlotTally {
  std::uint64_t postponed = 0;
  std::uint64_t undetected = 0;
  std::uint64_t detected_not_caught = 0;
  std::uint64_t caught = 0;

  std::uint64_t trials() const { return postponed + undetected + detected_not_caught + caught; }
};

/// Outcome of every slot, slot i drawn from substream (seed, i).
std::vector<SlotOutcome> sample_slots(const ScenarioConfig& cfg, int l, int chunk_symbols,
                                      double r_bar, std::uint64_t trials, std::uint64_t seed,
                                      const SimOptions& options = {});

SlotTally tally_slots(const ScenarioConfig& cfg, int l, int chunk_symbols, double r_bar,
                      std::uint64_t trials, std::uint64_t seed, const SimOptions& options = {});

/// Fraction of slots ending in a catch (postponed slots count as not
/// caught), with a 99% Wilson interval. Requires trials >= 100.
ProportionEstimate estimate_catch(const ScenarioConfig& cfg, int l, int chunk_symbols,
                                  double r_bar, std::uint64_t trials, std::uint64_t seed,
                                  const SimOptions& options = {});

/// Fraction of whole messages (n chunks, postponements retried) in which
/// some chunk is caught.
ProportionEstimate estimate_overall_catch(const ScenarioConfig& cfg, int n, int l, double r_bar,
                                          std::uint64_t trials, std::uint64_t seed,
                                          const SimOptions& options = {});

/// Sizes of the n chunks of an m-symbol message: floor(m/n) each, remainder
/// on the last chunk.
std::vector<int> chunk_sizes(int m_symbols, int n);

enum class CaseKind {
  kStopOnCatch,   // case 1: the first catch ends covert operation
  kVoidMessage,   // case 2: a catch voids only the current message
};

struct CaseResult {
  int covert_messages = 0;
  int caught_events = 0;
  int slots_used = 0;  // slots in which a chunk was pending
  int arrivals = 0;
  std::uint64_t seed = 0;
};

/// One β-slot run, drawn from substream (seed, trial).
CaseResult run_case_trial(CaseKind kind, const SlotSimulator& slot, const ScenarioConfig& cfg,
                          int n, std::uint64_t seed, std::uint64_t trial);

struct CaseStats {
  double mean_covert = 0.0;
  double std_dev = 0.0;
  double ci_halfwidth = 0.0;  // 99% normal interval on the mean
  double mean_caught = 0.0;
  double mean_slots_used = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

CaseStats run_case(CaseKind kind, const ScenarioConfig& cfg, int n, int l, double r_bar,
                   std::uint64_t trials, std::uint64_t seed, const SimOptions& options = {});

inline CaseStats run_case1(const ScenarioConfig& cfg, int n, int l, double r_bar,
                           std::uint64_t trials, std::uint64_t seed,
                           const SimOptions& options = {}) {
  return run_case(CaseKind::kStopOnCatch, cfg, n, l, r_bar, trials, seed, options);
}

inline CaseStats run_case2(const ScenarioConfig& cfg, int n, int l, double r_bar,
                           std::uint64_t trials, std::uint64_t seed,
                           const SimOptions& options = {}) {
  return run_case(CaseKind::kVoidMessage, cfg, n, l, r_bar, trials, seed, options);
}

}  // namespace covert::sim
