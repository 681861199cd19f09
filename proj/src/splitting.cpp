#include "covert/splitting.hpp"

#include <cmath>
#include <cstdio>

#include "covert/catching.hpp"
#include "covert/random.hpp"

namespace covert::splitting {

double postponement_probability(double r_a_proj, const geometry::DistanceLaw& law) {
  if (r_a_proj < 0.0 || r_a_proj > law.max_distance()) {
    throw std::domain_error("postponement_probability: r_a_proj outside [0, sqrt(2)*u]");
  }
  return law.cdf(r_a_proj);
}

double chunk_catch_probability(int n, int l, const ScenarioConfig& cfg, double r_bar,
                               geometry::RepresentativeMode mode) {
  if (n < 1) throw std::domain_error("chunk_catch_probability: n must be at least 1");
  const double chunk = static_cast<double>(cfg.m_bits) / n;
  return catching::catch_probability(l, chunk, cfg, r_bar, mode).p_ca;
}

double overall_from_parts(double p_ca_chunk, double p_as, int n) {
  if (n < 1) throw std::domain_error("overall_from_parts: n must be at least 1");
  if (p_ca_chunk + p_as > 1.0) {
    char msg[160];
    std::snprintf(msg, sizeof msg,
                  "overall catch probability undefined: p_ca=%.17g + p_as=%.17g exceeds 1",
                  p_ca_chunk, p_as);
    throw ModelValidityError(msg);
  }
  if (!(p_as < 1.0)) throw ModelValidityError("overall catch probability undefined: p_as = 1");
  const double base = (1.0 - p_ca_chunk - p_as) / (1.0 - p_as);
  return 1.0 - std::pow(base, n);
}

SplitPlan overall_catch_probability(int n, int l, const ScenarioConfig& cfg, double r_bar,
                                    geometry::RepresentativeMode mode) {
  if (n < 1) throw std::domain_error("overall_catch_probability: n must be at least 1");
  const geometry::DistanceLaw law(cfg.u);
  SplitPlan plan;
  plan.n = n;
  plan.chunk_symbols = cfg.m_bits / n;
  plan.chunk_length = static_cast<double>(cfg.m_bits) / n;
  plan.p_ca_chunk = chunk_catch_probability(n, l, cfg, r_bar, mode);
  plan.p_as = postponement_probability(cfg.r_a_proj, law);
  plan.p_ov = overall_from_parts(plan.p_ca_chunk, plan.p_as, n);
  return plan;
}

ChunkOptimum optimal_chunks(const ScenarioConfig& cfg, int l, double r_bar, int n_max,
                            geometry::RepresentativeMode mode, unsigned threads) {
  if (n_max < 1) throw std::domain_error("optimal_chunks: n_max must be at least 1");
  ChunkOptimum best;
  best.scan.resize(n_max);
  parallel_for(static_cast<std::size_t>(n_max), threads, [&](std::size_t idx) {
    best.scan[idx] = overall_catch_probability(static_cast<int>(idx) + 1, l, cfg, r_bar, mode);
  });
  best.n_star = best.scan.front().n;
  best.p_ov_star = best.scan.front().p_ov;
  for (const auto& plan : best.scan) {
    if (plan.p_ov < best.p_ov_star) {
      best.n_star = plan.n;
      best.p_ov_star = plan.p_ov;
    }
  }
  return best;
}

StabilityBounds stability_bound(double lambda_per_min, double t_c_minutes) {
  if (!(lambda_per_min > 0.0) || !(t_c_minutes > 0.0)) {
    throw std::domain_error("stability_bound: inputs must be positive");
  }
  const double load = lambda_per_min * t_c_minutes;
  // Snap values within rounding of an integer before flooring (0.1*10 etc.).
  auto robust_floor = [](double x) { return static_cast<int>(std::floor(x * (1.0 + 1e-12))); };
  return {robust_floor(load), robust_floor(1.0 / load)};
}

}  // namespace covert::splitting
