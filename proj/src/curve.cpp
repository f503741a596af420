#include "erm2/curve.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "erm2/error.hpp"

namespace erm2 {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonMonotoneQuantiles: return "NonMonotoneQuantiles";
    case ErrorCode::NonConcave: return "NonConcave";
    case ErrorCode::NegativeRevenue: return "NegativeRevenue";
    case ErrorCode::NonzeroOrigin: return "NonzeroOrigin";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::NonPositiveScale: return "NonPositiveScale";
    case ErrorCode::InfeasibleBump: return "InfeasibleBump";
    case ErrorCode::EmptySample: return "EmptySample";
    case ErrorCode::ToleranceNotMet: return "ToleranceNotMet";
    case ErrorCode::DegenerateRegion: return "DegenerateRegion";
    case ErrorCode::BoundViolated: return "BoundViolated";
    case ErrorCode::SearchFailed: return "SearchFailed";
    case ErrorCode::CurveParse: return "CurveParseError";
    case ErrorCode::Io: return "IoError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace {

[[noreturn]] void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

void check_quantile(double q) {
  if (!(q >= 0.0 && q <= 1.0)) {
    std::ostringstream os;
    os << "quantile " << q << " outside [0,1]";
    fail(ErrorCode::OutOfRange, os.str());
  }
}

}  // namespace

RevenueCurve::RevenueCurve(std::vector<Breakpoint> breakpoints)
    : points_(std::move(breakpoints)) {
  const auto& p = points_;
  if (p.size() < 2) {
    fail(ErrorCode::NonMonotoneQuantiles, "a curve needs at least two breakpoints");
  }
  for (const auto& b : p) {
    if (!std::isfinite(b.q) || !std::isfinite(b.r)) {
      fail(ErrorCode::InvalidArgument, "breakpoints must be finite");
    }
  }
  if (p.front().q != 0.0 || p.back().q != 1.0) {
    fail(ErrorCode::NonMonotoneQuantiles, "quantiles must start at 0 and end at 1");
  }
  for (std::size_t i = 1; i < p.size(); ++i) {
    if (!(p[i].q > p[i - 1].q)) {
      std::ostringstream os;
      os << "quantiles not strictly increasing at breakpoint " << i;
      fail(ErrorCode::NonMonotoneQuantiles, os.str());
    }
  }
  if (p.front().r != 0.0) {
    fail(ErrorCode::NonzeroOrigin, "r(0) must be 0");
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i].r < 0.0) {
      std::ostringstream os;
      os << "negative revenue at breakpoint " << i;
      fail(ErrorCode::NegativeRevenue, os.str());
    }
  }

  const std::size_t pieces = p.size() - 1;
  slopes_.resize(pieces);
  intercepts_.resize(pieces);
  for (std::size_t i = 0; i < pieces; ++i) {
    slopes_[i] = (p[i + 1].r - p[i].r) / (p[i + 1].q - p[i].q);
    intercepts_[i] = p[i].r - slopes_[i] * p[i].q;
    if (i > 0 && slopes_[i] > slopes_[i - 1] + kConcavityTolerance) {
      std::ostringstream os;
      os << "slope increases after breakpoint " << i;
      fail(ErrorCode::NonConcave, os.str());
    }
  }

  cumulative_area_.resize(p.size());
  cumulative_area_[0] = 0.0;
  for (std::size_t i = 0; i < pieces; ++i) {
    cumulative_area_[i + 1] =
        cumulative_area_[i] + 0.5 * (p[i + 1].q - p[i].q) * (p[i].r + p[i + 1].r);
  }

  // Pieces collinear with the first one stay on the ray through the origin.
  ray_pieces_ = 1;
  while (ray_pieces_ < pieces &&
         slopes_[ray_pieces_] >= slopes_[0] - kConcavityTolerance) {
    ++ray_pieces_;
  }

  opt_ = {p[0].q, p[0].r};
  for (const auto& b : p) {
    if (b.r > opt_.opt) opt_ = {b.q, b.r};
  }
}

std::size_t RevenueCurve::piece_index(double q) const noexcept {
  auto first = points_.begin() + 1;
  auto last = points_.end() - 1;
  auto it = std::upper_bound(first, last, q,
                             [](double x, const Breakpoint& b) { return x < b.q; });
  return static_cast<std::size_t>(it - first);
}

double RevenueCurve::value_unchecked(double q) const noexcept {
  const std::size_t i = piece_index(q);
  if (q >= points_[i + 1].q) return points_[i + 1].r;
  return points_[i].r + slopes_[i] * (q - points_[i].q);
}

double RevenueCurve::price_unchecked(double q) const noexcept {
  if (q <= ray_end()) return slopes_[0];
  return value_unchecked(q) / q;
}

double RevenueCurve::value_at(double q) const {
  check_quantile(q);
  return value_unchecked(q);
}

double RevenueCurve::price_at(double q) const {
  check_quantile(q);
  return price_unchecked(q);
}

double RevenueCurve::area_to(double q) const {
  check_quantile(q);
  const std::size_t i = piece_index(q);
  const double x0 = points_[i].q;
  return cumulative_area_[i] + 0.5 * (q - x0) * (points_[i].r + value_unchecked(q));
}

RevenueCurve make_curve(std::vector<Breakpoint> breakpoints) {
  return RevenueCurve(std::move(breakpoints));
}

RevenueCurve scale(const RevenueCurve& curve, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    fail(ErrorCode::NonPositiveScale, "scale factor must be positive");
  }
  std::vector<Breakpoint> pts(curve.breakpoints().begin(), curve.breakpoints().end());
  for (auto& b : pts) b.r *= alpha;
  return RevenueCurve(std::move(pts));
}

ValueSample sample_values(const RevenueCurve& curve, std::size_t n, Rng& rng) {
  ValueSample s;
  s.quantiles.reserve(n);
  s.values.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double q = rng.uniform();
    s.quantiles.push_back(q);
    s.values.push_back(curve.price_at(q));
  }
  return s;
}

ValueSample sample_values(const RevenueCurve& curve, std::size_t n,
                          std::uint64_t seed) {
  Rng rng(seed);
  return sample_values(curve, n, rng);
}

RevenueCurve triangular(double q_star) {
  if (!(q_star > 0.0 && q_star <= 1.0)) {
    fail(ErrorCode::OutOfRange, "triangular peak must lie in (0,1]");
  }
  if (q_star == 1.0) return RevenueCurve({{0.0, 0.0}, {1.0, 1.0}});
  return RevenueCurve({{0.0, 0.0}, {q_star, 1.0}, {1.0, 0.0}});
}

RevenueCurve truncated_equal_revenue(double v_max) {
  if (!(v_max > 1.0) || !std::isfinite(v_max)) {
    fail(ErrorCode::OutOfRange, "truncation value must exceed 1");
  }
  return RevenueCurve({{0.0, 0.0}, {1.0 / v_max, 1.0}, {1.0, 1.0}});
}

RevenueCurve quadrilateral(double q_b, double r_b) {
  if (!(q_b > 0.0 && q_b < 1.0) || !std::isfinite(r_b)) {
    fail(ErrorCode::OutOfRange, "bump quantile must lie in (0,1)");
  }
  // Concave iff the bump sits strictly above the diagonal.
  if (!(r_b / q_b > (1.0 - r_b) / (1.0 - q_b))) {
    std::ostringstream os;
    os << "bump (" << q_b << ", " << r_b << ") breaks concavity";
    fail(ErrorCode::InfeasibleBump, os.str());
  }
  return RevenueCurve({{0.0, 0.0}, {q_b, r_b}, {1.0, 1.0}});
}

}  // namespace erm2
