#pragma once

#include <vector>

#include "covert/geometry.hpp"
#include "covert/params.hpp"

// Warden-side analytics: how many detection attempts still leave time to fly
// to Alice, which distance band supports each attempt count, and the
// resulting catch probability P_ca(L).
namespace covert::catching {

/// ceil((m - l) / (l + l_s)), or 0 when the window covers the whole message.
/// `message_symbols` is real-valued so split chunks of M/n symbols are exact.
int max_effective_detections(double message_symbols, int l, int l_s);

struct StratumInterval {
  double d1 = 0.0;  // meters, projected
  double d2 = 0.0;
};

/// Projected-distance band in which exactly i attempts can lead to a catch.
/// The i = s_m band starts at r_a'; the others are bounded by the chase-time
/// break points v_w (m - l - (l + l_s) k) / r_bar + r_w'. Endpoints are not
/// clamped. Throws std::out_of_range unless 1 <= i <= s_m.
StratumInterval stratum_interval(int i, int s_m, double message_symbols, int l, int l_s, double v_w,
                                 double r_bar, double r_w_proj, double r_a_proj);

struct Stratum {
  int s = 0;                     // usable detection attempts
  double d1 = 0.0;               // clamped band, meters
  double d2 = 0.0;
  double p_dis = 0.0;            // probability of the band
  double d_bar = 0.0;            // representative projected distance
  double d_slant = 0.0;          // representative slant distance
  double p_md = 0.0;             // miss detection at d_slant
  double p_catch_given_s = 0.0;  // 1 - p_md^s
};

struct CatchBreakdown {
  int window_l = 0;
  double message_symbols = 0.0;
  int s_m = 0;
  double threshold = 0.0;  // watts
  std::vector<Stratum> strata;
  double p_ca = 0.0;
};

/// P_ca(L) for a message of cfg.m_bits symbols.
CatchBreakdown catch_probability(int l, const ScenarioConfig& cfg, double r_bar,
                                 geometry::RepresentativeMode mode);

/// P_ca(L) for an arbitrary (possibly fractional) message length.
CatchBreakdown catch_probability(int l, double message_symbols, const ScenarioConfig& cfg,
                                 double r_bar, geometry::RepresentativeMode mode);

/// P_ca with P_MD averaged over the distance law inside every stratum instead
/// of evaluated at one representative distance. Same strata and attempt counts
/// as catch_probability; used to attribute representative-distance error.
double averaged_catch_probability(int l, double message_symbols, const ScenarioConfig& cfg,
                                  double r_bar);

struct WindowScanPoint {
  int l = 0;
  double p_ca = 0.0;
};

struct WindowOptimum {
  int l_star = 1;
  double p_ca_star = 0.0;
  std::vector<WindowScanPoint> scan;
};

/// Exhaustive scan of L = 1..l_max; argmax with ties toward smaller L.
WindowOptimum optimal_window(const ScenarioConfig& cfg, double r_bar, int l_max,
                             geometry::RepresentativeMode mode, unsigned threads = 1);

}  // namespace covert::catching
