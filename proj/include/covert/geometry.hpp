#pragma once

#include <string_view>

#include "covert/random.hpp"

// Distance between two independent uniform points in a u x u square
// ("square line picking"), plus slant-range composition with UAV altitude.
namespace covert::geometry {

/// How a single distance stands in for a distance stratum [d1, d2].
enum class RepresentativeMode {
  /// E(d2) - E(d1) + d1, with E the partial first moment (unnormalized).
  kPaperLiteral,
  /// (E(d2) - E(d1)) / (F(d2) - F(d1)), the conditional mean on [d1, d2].
  kConditionalMean,
};

RepresentativeMode parse_mode(std::string_view name);
std::string_view mode_name(RepresentativeMode mode);

/// Law of the projected Alice-Willie distance for side length u.
///
/// pdf, cdf and partial_first_moment use the closed piecewise forms with a
/// seam at d = u and support [0, sqrt(2) u]. They throw std::domain_error
/// outside the support; interval_probability and representative_distance
/// clamp instead.
class DistanceLaw {
 public:
  explicit DistanceLaw(double side);

  double side() const { return u_; }
  double max_distance() const { return max_d_; }

  double pdf(double d) const;
  double cdf(double d) const;
  /// Integral of x f(x) over [0, d].
  double partial_first_moment(double d) const;

  /// F(d2) - F(d1) after clamping both ends to the support; 0 for empty.
  double interval_probability(double d1, double d2) const;

  /// Throws std::domain_error in conditional-mean mode when the clamped
  /// interval carries no probability.
  double representative_distance(double d1, double d2, RepresentativeMode mode) const;

  /// Planar distance between two independent uniform points of the square.
  double sample_pair_distance(Rng& rng) const;

  double clamp(double d) const;

 private:
  double checked(double d, const char* what) const;

  double u_;
  double max_d_;
};

/// sqrt(d_proj^2 + h_w^2).
double slant_distance(double d_proj, double h_w);

}  // namespace covert::geometry
