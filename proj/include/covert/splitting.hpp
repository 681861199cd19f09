#pragma once

#include <stdexcept>
#include <vector>

#include "covert/geometry.hpp"
#include "covert/params.hpp"

// Alice-side analytics for splitting a message into n chunks sent in
// separate slots, with postponement whenever Willie is within r_a'.
namespace covert::splitting {

/// Raised when P_ca(n) + P_as > 1, i.e. the per-slot outcome probabilities
/// are inconsistent and the overall catch formula has a negative base.
class ModelValidityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SplitPlan {
  int n = 1;
  int chunk_symbols = 0;      // floor(M / n), used by the simulator
  double chunk_length = 0.0;  // M / n, used by the analytic formulas
  double p_ca_chunk = 0.0;
  double p_as = 0.0;
  double p_ov = 0.0;
};

/// P_as = F(r_a').
double postponement_probability(double r_a_proj, const geometry::DistanceLaw& law);

/// P_ca for one chunk of M/n symbols at a fixed window L.
double chunk_catch_probability(int n, int l, const ScenarioConfig& cfg, double r_bar,
                               geometry::RepresentativeMode mode);

/// 1 - ((1 - p_ca - p_as) / (1 - p_as))^n. Throws ModelValidityError when
/// p_ca + p_as > 1.
double overall_from_parts(double p_ca_chunk, double p_as, int n);

SplitPlan overall_catch_probability(int n, int l, const ScenarioConfig& cfg, double r_bar,
                                    geometry::RepresentativeMode mode);

struct ChunkOptimum {
  int n_star = 1;
  double p_ov_star = 0.0;
  std::vector<SplitPlan> scan;
};

/// Exhaustive scan n = 1..n_max; argmin with ties toward smaller n.
ChunkOptimum optimal_chunks(const ScenarioConfig& cfg, int l, double r_bar, int n_max,
                            geometry::RepresentativeMode mode, unsigned threads = 1);

/// Chunk-count limits from the message arrival process.
struct StabilityBounds {
  /// floor(lambda t_c), the bound n <= lambda t_c as printed.
  int paper_literal = 0;
  /// floor(1 / (lambda t_c)), from M/G/1 utilization lambda n t_c <= 1.
  int utilization = 0;
};

StabilityBounds stability_bound(double lambda_per_min, double t_c_minutes);

}  // namespace covert::splitting
