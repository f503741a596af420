#ifndef ERM2_CURVE_HPP
#define ERM2_CURVE_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "erm2/random.hpp"

namespace erm2 {

struct Breakpoint {
  double q;
  double r;

  friend bool operator==(const Breakpoint&, const Breakpoint&) = default;
};

struct OptPoint {
  double q_star;  // smallest maximizing quantile
  double opt;
};

/// Concave piecewise-linear revenue curve in quantile space.
///
/// Breakpoints run from q = 0 to q = 1 with r(0) = 0. The price (value)
/// at quantile q is v(q) = r(q)/q, the slope of the ray from the origin.
/// The initial segment through the origin has constant price; it stands
/// for an atom at the top of the support, taken in the limit where the atom
/// is spread over a vanishing interval.
///
/// Immutable after construction.
class RevenueCurve {
 public:
  static constexpr double kConcavityTolerance = 1e-12;

  /// Validates and builds a curve. Throws Error with NonMonotoneQuantiles,
  /// NonConcave, NegativeRevenue or NonzeroOrigin.
  explicit RevenueCurve(std::vector<Breakpoint> breakpoints);

  std::span<const Breakpoint> breakpoints() const noexcept { return points_; }
  std::size_t piece_count() const noexcept { return slopes_.size(); }

  double slope(std::size_t piece) const { return slopes_.at(piece); }
  /// Intercept b of the piece r(x) = slope * x + b.
  double intercept(std::size_t piece) const { return intercepts_.at(piece); }

  /// Index of the linear piece containing q; a breakpoint belongs to the
  /// piece on its right, except q = 1.
  std::size_t piece_index(double q) const noexcept;

  double value_at(double q) const;
  double price_at(double q) const;
  OptPoint opt() const noexcept { return opt_; }

  /// Integral of r over [0, q].
  double area_to(double q) const;
  double area() const noexcept { return cumulative_area_.back(); }

  /// Right end of the initial constant-price ray.
  double ray_end() const noexcept { return points_[ray_pieces_].q; }

  friend bool operator==(const RevenueCurve& a, const RevenueCurve& b) {
    return a.points_ == b.points_;
  }

 private:
  double value_unchecked(double q) const noexcept;
  double price_unchecked(double q) const noexcept;

  std::vector<Breakpoint> points_;
  std::vector<double> slopes_;
  std::vector<double> intercepts_;
  std::vector<double> cumulative_area_;
  std::size_t ray_pieces_ = 1;
  OptPoint opt_{};
};

RevenueCurve make_curve(std::vector<Breakpoint> breakpoints);

/// Every breakpoint revenue multiplied by alpha > 0.
RevenueCurve scale(const RevenueCurve& curve, double alpha);

struct ValueSample {
  std::vector<double> quantiles;
  std::vector<double> values;
};

ValueSample sample_values(const RevenueCurve& curve, std::size_t n, Rng& rng);
ValueSample sample_values(const RevenueCurve& curve, std::size_t n,
                          std::uint64_t seed);

// Canned shapes.
RevenueCurve triangular(double q_star);
RevenueCurve truncated_equal_revenue(double v_max);
RevenueCurve quadrilateral(double q_b, double r_b);

// Text format: one "q r" pair per line, '#' starts a comment line.
RevenueCurve parse_curve(std::string_view text);
std::string format_curve(const RevenueCurve& curve);
RevenueCurve load_curve(const std::string& path);
void save_curve(const RevenueCurve& curve, const std::string& path);

/// Shortest decimal text that parses back to exactly the same double.
std::string format_double(double x);
/// Inverse of format_double; throws Error(CurveParse) on malformed input.
double parse_double(std::string_view text);

}  // namespace erm2

#endif
