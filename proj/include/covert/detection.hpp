#pragma once

#include <stdexcept>
#include <string>

#include "covert/random.hpp"

// Willie's windowed energy detector. Under H0 the window average T_w of L
// complex-Gaussian samples is Gamma(L, mean sigma_w^2); under H1 it is
// Gamma(L, mean g_aw^2 P_a + sigma_w^2).
namespace covert::detection {

/// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a).
///
/// Power series for x < a + 1, Lentz continued fraction for the upper tail
/// otherwise; relative error target 1e-12. Throws std::domain_error unless
/// a > 0 and x >= 0.
double regularized_lower_gamma(double a, double x);

/// Q(a, x) = 1 - P(a, x), evaluated without cancellation in the upper tail.
double regularized_upper_gamma(double a, double x);

/// Pr(T_w >= gamma_w | H0) = Q(l, l gamma_w / sigma_w2).
double false_alarm(int l, double gamma_w, double sigma_w2);

/// Pr(T_w < gamma_w | H1) = P(l, l gamma_w / (g_aw^2 p_a + sigma_w2)).
double miss_detection(int l, double gamma_w, double g_aw, double p_a, double sigma_w2);

class ThresholdError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Tolerance on |false_alarm(solve_threshold(...)) - delta|.
inline constexpr double kThresholdTolerance = 1e-12;

/// The threshold whose false-alarm probability equals delta. Safeguarded
/// Newton iteration inside a bracket on the normalized argument
/// x = l Gamma / sigma_w2. Throws ThresholdError (with the final bracket)
/// if it fails to converge.
double solve_threshold(int l, double delta, double sigma_w2);

/// A detector calibrated to a false-alarm constraint.
struct DetectionCurve {
  int window_l = 1;
  double threshold = 0.0;  // watts
  double delta = 0.0;
  double sigma_w2 = 0.0;   // watts

  double miss_detection(double g_aw, double p_a) const {
    return detection::miss_detection(window_l, threshold, g_aw, p_a, sigma_w2);
  }
  double false_alarm() const { return detection::false_alarm(window_l, threshold, sigma_w2); }
};

DetectionCurve calibrate(int l, double delta, double sigma_w2);

/// One draw of T_w: Gamma(shape l, mean `power`).
double sample_window_statistic(int l, double power, Rng& rng);

/// T_w built symbol by symbol: mean of l draws of |y|^2 with y ~ CN(0, power).
/// Same law as sample_window_statistic; kept for cross-validation.
double sample_window_statistic_per_symbol(int l, double power, Rng& rng);

}  // namespace covert::detection
