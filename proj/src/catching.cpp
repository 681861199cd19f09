#include "covert/catching.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "covert/channel.hpp"
#include "covert/detection.hpp"
#include "covert/random.hpp"

namespace covert::catching {

int max_effective_detections(double message_symbols, int l, int l_s) {
  if (l < 1) throw std::domain_error("max_effective_detections: window must be at least one symbol");
  if (!(message_symbols > l)) return 0;
  return static_cast<int>(std::ceil((message_symbols - l) / static_cast<double>(l + l_s)));
}

StratumInterval stratum_interval(int i, int s_m, double message_symbols, int l, int l_s, double v_w,
                                 double r_bar, double r_w_proj, double r_a_proj) {
  if (i < 1 || i > s_m) {
    throw std::out_of_range("stratum_interval: i=" + std::to_string(i) + " outside [1, " +
                            std::to_string(s_m) + "]");
  }
  const double period = l + l_s;
  auto break_point = [&](int k) {
    return v_w * (message_symbols - l - period * k) / r_bar + r_w_proj;
  };
  if (i == s_m) return {r_a_proj, break_point(s_m - 1)};
  return {break_point(i), break_point(i - 1)};
}

CatchBreakdown catch_probability(int l, const ScenarioConfig& cfg, double r_bar,
                                 geometry::RepresentativeMode mode) {
  return catch_probability(l, static_cast<double>(cfg.m_bits), cfg, r_bar, mode);
}

CatchBreakdown catch_probability(int l, double message_symbols, const ScenarioConfig& cfg,
                                 double r_bar, geometry::RepresentativeMode mode) {
  if (l < 1) throw std::domain_error("catch_probability: window must be at least one symbol");
  if (!(r_bar > 0.0)) throw std::domain_error("catch_probability: average rate must be positive");

  const LinearConstants lin = to_linear(cfg);
  const geometry::DistanceLaw law(cfg.u);

  CatchBreakdown out;
  out.window_l = l;
  out.message_symbols = message_symbols;
  out.s_m = max_effective_detections(message_symbols, l, cfg.l_s);
  if (out.s_m == 0) return out;

  const detection::DetectionCurve detector = detection::calibrate(l, cfg.delta, lin.sigma_w2_w);
  out.threshold = detector.threshold;
  out.strata.reserve(out.s_m);

  for (int i = 1; i <= out.s_m; ++i) {
    const StratumInterval raw = stratum_interval(i, out.s_m, message_symbols, l, cfg.l_s, cfg.v_w,
                                                 r_bar, cfg.r_w_proj, cfg.r_a_proj);
    Stratum st;
    st.s = i;
    st.d1 = law.clamp(raw.d1);
    st.d2 = std::max(law.clamp(raw.d2), st.d1);
    st.p_dis = law.interval_probability(st.d1, st.d2);
    if (st.p_dis > 0.0) {
      st.d_bar = law.representative_distance(st.d1, st.d2, mode);
      st.d_slant = geometry::slant_distance(st.d_bar, cfg.h_w);
      const double g_aw =
          channel::nlos_gain(lin.g_a, lin.g_w, lin.eta, st.d_slant, cfg.alpha_nlos);
      st.p_md = detector.miss_detection(g_aw, lin.p_a_w);
      st.p_catch_given_s = 1.0 - std::pow(st.p_md, i);
      out.p_ca += st.p_catch_given_s * st.p_dis;
    }
    out.strata.push_back(st);
  }
  return out;
}

namespace {

template <class F>
double adaptive_simpson(const F& f, double a, double b, double fa, double fm, double fb, double whole,
                        double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <class F>
double integrate(const F& f, double a, double b, double tol) {
  if (!(b > a)) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

}  // namespace

double averaged_catch_probability(int l, double message_symbols, const ScenarioConfig& cfg,
                                  double r_bar) {
  if (l < 1) throw std::domain_error("averaged_catch_probability: window must be at least one symbol");
  if (!(r_bar > 0.0)) throw std::domain_error("averaged_catch_probability: average rate must be positive");

  const int s_m = max_effective_detections(message_symbols, l, cfg.l_s);
  if (s_m == 0) return 0.0;
  const LinearConstants lin = to_linear(cfg);
  const geometry::DistanceLaw law(cfg.u);
  const detection::DetectionCurve detector = detection::calibrate(l, cfg.delta, lin.sigma_w2_w);

  double total = 0.0;
  for (int i = 1; i <= s_m; ++i) {
    const StratumInterval raw = stratum_interval(i, s_m, message_symbols, l, cfg.l_s, cfg.v_w,
                                                 r_bar, cfg.r_w_proj, cfg.r_a_proj);
    const double d1 = law.clamp(raw.d1);
    const double d2 = std::max(law.clamp(raw.d2), d1);
    auto integrand = [&](double d) {
      const double slant = geometry::slant_distance(d, cfg.h_w);
      const double g_aw = channel::nlos_gain(lin.g_a, lin.g_w, lin.eta, slant, cfg.alpha_nlos);
      return (1.0 - std::pow(detector.miss_detection(g_aw, lin.p_a_w), i)) * law.pdf(d);
    };
    // The density has a kink at d = u.
    if (d1 < cfg.u && cfg.u < d2) {
      total += integrate(integrand, d1, cfg.u, 1e-12) + integrate(integrand, cfg.u, d2, 1e-12);
    } else {
      total += integrate(integrand, d1, d2, 1e-12);
    }
  }
  return total;
}

WindowOptimum optimal_window(const ScenarioConfig& cfg, double r_bar, int l_max,
                             geometry::RepresentativeMode mode, unsigned threads) {
  if (l_max < 1) throw std::domain_error("optimal_window: l_max must be at least 1");
  if (l_max > cfg.m_bits) throw std::domain_error("optimal_window: l_max must not exceed m_bits");

  WindowOptimum best;
  best.scan.resize(l_max);
  parallel_for(static_cast<std::size_t>(l_max), threads, [&](std::size_t idx) {
    const int l = static_cast<int>(idx) + 1;
    best.scan[idx] = {l, catch_probability(l, cfg, r_bar, mode).p_ca};
  });
  best.l_star = best.scan.front().l;
  best.p_ca_star = best.scan.front().p_ca;
  for (const auto& point : best.scan) {
    if (point.p_ca > best.p_ca_star) {
      best.l_star = point.l;
      best.p_ca_star = point.p_ca;
    }
  }
  return best;
}

}  // namespace covert::catching
