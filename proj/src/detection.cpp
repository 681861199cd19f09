#include "covert/detection.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace covert::detection {

namespace {

double log_gamma(double a) {
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(a, &sign);
#else
  return std::lgamma(a);
#endif
}

}  // namespace

double false_alarm(int l, double gamma_w, double sigma_w2) {
  if (l < 1) throw std::domain_error("false_alarm: window must be at least one symbol");
  if (!(gamma_w >= 0.0)) throw std::domain_error("false_alarm: threshold must be non-negative");
  return regularized_upper_gamma(l, l * gamma_w / sigma_w2);
}

double miss_detection(int l, double gamma_w, double g_aw, double p_a, double sigma_w2) {
  if (l < 1) throw std::domain_error("miss_detection: window must be at least one symbol");
  if (!(gamma_w >= 0.0)) throw std::domain_error("miss_detection: threshold must be non-negative");
  return regularized_lower_gamma(l, l * gamma_w / (g_aw * g_aw * p_a + sigma_w2));
}

double solve_threshold(int l, double delta, double sigma_w2) {
  if (l < 1) throw std::domain_error("solve_threshold: window must be at least one symbol");
  if (!(delta > 0.0 && delta < 1.0)) throw std::domain_error("solve_threshold: delta must lie in (0,1)");
  if (!(sigma_w2 > 0.0)) throw std::domain_error("solve_threshold: noise power must be positive");

  const double a = l;
  // f(x) = Q(a, x) - delta is strictly decreasing from 1 - delta at x = 0.
  auto f = [&](double x) { return regularized_upper_gamma(a, x) - delta; };
  const double log_norm = log_gamma(a);

  double lo = 0.0;
  double hi = a;
  while (f(hi) > 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e300) throw ThresholdError("solve_threshold: failed to bracket the root");
  }

  double x = 0.5 * (lo + hi);
  for (int iter = 0; iter < 500; ++iter) {
    const double fx = f(x);
    if (std::abs(fx) <= 0.1 * kThresholdTolerance) return x * sigma_w2 / a;
    if (fx > 0.0) lo = x; else hi = x;
    // dQ/dx = -x^(a-1) e^-x / Gamma(a)
    const double slope = -std::exp((a - 1.0) * std::log(x) - x - log_norm);
    double next = slope < 0.0 ? x - fx / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) {
      if (std::abs(fx) <= kThresholdTolerance) return x * sigma_w2 / a;
      break;
    }
    x = next;
  }
  char msg[200];
  std::snprintf(msg, sizeof msg,
                "solve_threshold: no convergence for l=%d delta=%.17g (bracket [%.17g, %.17g])", l,
                delta, lo * sigma_w2 / a, hi * sigma_w2 / a);
  throw ThresholdError(msg);
}

DetectionCurve calibrate(int l, double delta, double sigma_w2) {
  return DetectionCurve{l, solve_threshold(l, delta, sigma_w2), delta, sigma_w2};
}

double sample_window_statistic(int l, double power, Rng& rng) {
  std::gamma_distribution<double> stat(static_cast<double>(l), power / l);
  return stat(rng);
}

double sample_window_statistic_per_symbol(int l, double power, Rng& rng) {
  // |y|^2 for y ~ CN(0, power) is exponential with mean `power`.
  std::exponential_distribution<double> energy(1.0 / power);
  double sum = 0.0;
  for (int i = 0; i < l; ++i) sum += energy(rng);
  return sum / l;
}

}  // namespace covert::detection
