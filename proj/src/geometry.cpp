#include "covert/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace covert::geometry {

namespace {

constexpr double kPi = std::numbers::pi;

// Points within this relative distance of the support end are snapped onto
// it, absorbing rounding in sqrt(2)*u computed by callers.
constexpr double kSupportSlack = 1e-12;

}  // namespace

RepresentativeMode parse_mode(std::string_view name) {
  if (name == "paper-literal") return RepresentativeMode::kPaperLiteral;
  if (name == "conditional-mean") return RepresentativeMode::kConditionalMean;
  throw std::invalid_argument("unknown representative-distance mode '" + std::string(name) + "'");
}

std::string_view mode_name(RepresentativeMode mode) {
  return mode == RepresentativeMode::kPaperLiteral ? "paper-literal" : "conditional-mean";
}

DistanceLaw::DistanceLaw(double side) : u_(side), max_d_(std::numbers::sqrt2 * side) {
  if (!(side > 0.0) || !std::isfinite(side)) {
    throw std::domain_error("DistanceLaw: side length must be positive");
  }
}

double DistanceLaw::clamp(double d) const { return std::clamp(d, 0.0, max_d_); }

double DistanceLaw::checked(double d, const char* what) const {
  if (std::isnan(d) || d < 0.0 || d > max_d_ * (1.0 + kSupportSlack)) {
    throw std::domain_error(std::string(what) + ": distance " + std::to_string(d) +
                            " outside [0, sqrt(2)*u]");
  }
  return std::min(d, max_d_);
}

double DistanceLaw::pdf(double d) const {
  d = checked(d, "pdf");
  const double t = d / u_;
  if (d <= u_) {
    return 2.0 * d / (u_ * u_) * (kPi - 4.0 * t + t * t);
  }
  const double r = std::sqrt(std::max(t * t - 1.0, 0.0));
  const double value = 2.0 * d / (u_ * u_) * (4.0 * r - (t * t + 2.0 - kPi) - 4.0 * std::atan(r));
  return std::max(value, 0.0);
}

double DistanceLaw::cdf(double d) const {
  d = checked(d, "cdf");
  const double t = d / u_;
  const double t2 = t * t;
  if (d <= u_) {
    return t2 * t2 / 2.0 - 8.0 * t2 * t / 3.0 + kPi * t2;
  }
  const double r = std::sqrt(std::max(t2 - 1.0, 0.0));
  const double value = 1.0 / 3.0 - t2 * t2 / 2.0 - 4.0 * t2 * std::atan(r) +
                       4.0 / 3.0 * (2.0 * t2 + 1.0) * r + (kPi - 2.0) * t2;
  return std::clamp(value, 0.0, 1.0);
}

double DistanceLaw::partial_first_moment(double d) const {
  d = checked(d, "partial_first_moment");
  const double t = d / u_;
  const double t3 = t * t * t;
  if (d <= u_) {
    return u_ * (2.0 * t3 * t * t / 5.0 - 2.0 * t3 * t + 2.0 * kPi * t3 / 3.0);
  }
  const double r = std::sqrt(std::max(t * t - 1.0, 0.0));
  return u_ * (2.0 / 15.0 - 2.0 * t3 * t * t / 5.0 - 8.0 * t3 * std::atan(r) / 3.0 +
               (2.0 * t3 + t / 3.0) * r + std::log(t + r) / 3.0 +
               2.0 * (kPi - 2.0) * t3 / 3.0);
}

double DistanceLaw::interval_probability(double d1, double d2) const {
  d1 = clamp(d1);
  d2 = clamp(d2);
  if (!(d2 > d1)) return 0.0;
  return std::max(cdf(d2) - cdf(d1), 0.0);
}

double DistanceLaw::representative_distance(double d1, double d2, RepresentativeMode mode) const {
  d1 = clamp(d1);
  d2 = std::max(clamp(d2), d1);
  const double moment = partial_first_moment(d2) - partial_first_moment(d1);
  if (mode == RepresentativeMode::kPaperLiteral) {
    return moment + d1;
  }
  const double mass = interval_probability(d1, d2);
  if (!(mass > 0.0)) {
    throw std::domain_error("representative_distance: conditional mean of an empty interval");
  }
  // Cancellation in very thin or far-tail strata can push the ratio
  // marginally outside the interval.
  return std::clamp(moment / mass, d1, d2);
}

double DistanceLaw::sample_pair_distance(Rng& rng) const {
  std::uniform_real_distribution<double> coord(0.0, u_);
  const double ax = coord(rng);
  const double ay = coord(rng);
  const double wx = coord(rng);
  const double wy = coord(rng);
  return std::hypot(ax - wx, ay - wy);
}

double slant_distance(double d_proj, double h_w) { return std::hypot(d_proj, h_w); }

}  // namespace covert::geometry
