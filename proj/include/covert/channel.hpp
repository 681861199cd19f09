#pragma once

#include <cstdint>

#include "covert/params.hpp"
#include "covert/random.hpp"

// Link budgets for the Alice->satellite (LoS + Rician) and Alice->UAV
// (NLoS + Rayleigh) channels. Rates are in bits per symbol (log base 2) over
// a 1 Hz normalized bandwidth.
namespace covert::channel {

/// Complex small-scale fading coefficient.
struct FadingSample {
  double re = 0.0;
  double im = 0.0;

  double norm_sq() const { return re * re + im * im; }
};

struct RateEstimate {
  double mean_rate = 0.0;   // bits/symbol
  double std_error = 0.0;   // bits/symbol
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  bool degenerate = false;  // std_error not estimable (one trial)
};

/// Rician factors at or above this are treated as pure LoS.
inline constexpr double kLosOnlyRicianFactor = 1e12;

/// Rate trials drawn from one random substream.
inline constexpr std::uint64_t kRateBlock = 4096;

/// sqrt(g_a g_b) / d^alpha_los. Throws std::domain_error for d <= 0.
double los_gain(double g_a, double g_b, double d, double alpha_los);

/// sqrt(eta g_a g_w) / d^alpha_nlos. Throws std::domain_error for d <= 0.
double nlos_gain(double g_a, double g_w, double eta, double d, double alpha_nlos);

/// h = sqrt(K/(1+K)) h_LoS + sqrt(1/(1+K)) h_NLoS with h_LoS = 1 and
/// h_NLoS ~ CN(0,1). Throws std::domain_error for k0 < 0.
FadingSample sample_rician(double k0, Rng& rng);

/// log2(1 + p_a g_ab^2 h_sq / sigma_b2).
double instantaneous_rate(double p_a, double g_ab, double h_sq, double sigma_b2);

/// Monte-Carlo mean of instantaneous_rate over i.i.d. Rician draws. Block b of
/// kRateBlock trials uses substream (seed, b); the result is independent of
/// `threads`.
RateEstimate average_rate(const ScenarioConfig& cfg, std::uint64_t trials, std::uint64_t seed,
                          unsigned threads = 0);

}  // namespace covert::channel
