#include "covert/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace covert::channel {

double los_gain(double g_a, double g_b, double d, double alpha_los) {
  if (!(d > 0.0)) throw std::domain_error("los_gain: distance must be positive");
  return std::sqrt(g_a * g_b) / std::pow(d, alpha_los);
}

double nlos_gain(double g_a, double g_w, double eta, double d, double alpha_nlos) {
  if (!(d > 0.0)) throw std::domain_error("nlos_gain: distance must be positive");
  return std::sqrt(eta * g_a * g_w) / std::pow(d, alpha_nlos);
}

FadingSample sample_rician(double k0, Rng& rng) {
  if (k0 < 0.0) throw std::domain_error("sample_rician: k0 must be non-negative");
  if (k0 >= kLosOnlyRicianFactor) return {1.0, 0.0};
  // CN(0,1): independent real/imaginary parts with variance 1/2 each.
  std::normal_distribution<double> half(0.0, std::numbers::sqrt2 / 2.0);
  const double nlos_re = half(rng);
  const double nlos_im = half(rng);
  const double los_w = std::sqrt(k0 / (1.0 + k0));
  const double nlos_w = std::sqrt(1.0 / (1.0 + k0));
  return {los_w + nlos_w * nlos_re, nlos_w * nlos_im};
}

double instantaneous_rate(double p_a, double g_ab, double h_sq, double sigma_b2) {
  return std::log1p(p_a * g_ab * g_ab * h_sq / sigma_b2) / std::numbers::ln2;
}

RateEstimate average_rate(const ScenarioConfig& cfg, std::uint64_t trials, std::uint64_t seed,
                          unsigned threads) {
  if (trials < 1) throw std::invalid_argument("average_rate: trials must be >= 1");
  const LinearConstants lin = to_linear(cfg);
  const double g_ab = los_gain(lin.g_a, lin.g_b, cfg.d_ab, cfg.alpha_los);

  RateEstimate est;
  est.trials = trials;
  est.seed = seed;
  est.degenerate = trials == 1;

  if (cfg.k0 >= kLosOnlyRicianFactor) {
    est.mean_rate = instantaneous_rate(lin.p_a_w, g_ab, 1.0, lin.sigma_b2_w);
    return est;
  }

  // Fixed-size blocks share one substream, so the draws do not depend on the
  // number of workers.
  std::vector<double> rates(trials);
  const std::uint64_t blocks = (trials + kRateBlock - 1) / kRateBlock;
  parallel_for(blocks, threads, [&](std::size_t b) {
    Rng rng = substream(seed, StreamTag::kRate, b);
    const std::uint64_t end = std::min<std::uint64_t>(trials, (b + 1) * kRateBlock);
    for (std::uint64_t i = b * kRateBlock; i < end; ++i) {
      const FadingSample h = sample_rician(cfg.k0, rng);
      rates[i] = instantaneous_rate(lin.p_a_w, g_ab, h.norm_sq(), lin.sigma_b2_w);
    }
  });

  const double n = static_cast<double>(trials);
  est.mean_rate = pairwise_sum(rates) / n;
  if (trials > 1) {
    for (double& r : rates) r = (r - est.mean_rate) * (r - est.mean_rate);
    const double var = pairwise_sum(rates) / (n - 1.0);
    est.std_error = std::sqrt(var / n);
  }
  return est;
}

}  // namespace covert::channel
