#include "erm2/engine.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "erm2/error.hpp"

namespace erm2 {

const char* to_string(Method m) noexcept {
  switch (m) {
    case Method::Exact1: return "exact-1";
    case Method::Exact2: return "exact-2";
    case Method::MonteCarlo: return "monte-carlo";
  }
  return "unknown";
}

const char* to_string(Region r) noexcept {
  switch (r) {
    case Region::R: return "R";
    case Region::L: return "L";
    case Region::B: return "B";
  }
  return "?";
}

Region parse_region(std::string_view text) {
  if (text == "R") return Region::R;
  if (text == "L") return Region::L;
  if (text == "B") return Region::B;
  throw Error(ErrorCode::InvalidArgument, "unknown region '" + std::string(text) + "'");
}

namespace {

void check_quantile(double q) {
  if (!(q >= 0.0 && q <= 1.0)) {
    std::ostringstream os;
    os << "quantile " << q << " outside [0,1]";
    throw Error(ErrorCode::OutOfRange, os.str());
  }
}

void check_tolerance(double tol) {
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  }
}

double upper_unchecked(const RevenueCurve& c, double q) {
  if (q >= 1.0) return 1.0;
  const double vq = c.price_at(q);
  if (!(vq > 0.0)) return q;
  const double target = 0.5 * vq;
  const auto pts = c.breakpoints();
  const std::size_t k = pts.size() - 1;
  if (c.price_at(1.0) > target) return 1.0;

  // First breakpoint right of q whose price has dropped to the target.
  std::size_t lo = c.piece_index(q) + 1;
  std::size_t hi = k;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (c.price_at(pts[mid].q) <= target) hi = mid; else lo = mid + 1;
  }
  const std::size_t piece = lo - 1;
  const double left = std::max(q, pts[piece].q);
  const double right = pts[lo].q;
  if (c.price_at(left) <= target) return left;
  const double a = c.slope(piece);
  const double b = c.intercept(piece);
  return std::clamp(b / (target - a), left, right);
}

double lower_unchecked(const RevenueCurve& c, double q) {
  if (q <= 0.0) return 0.0;
  const double vq = c.price_at(q);
  const double target = 2.0 * vq;
  if (c.price_at(0.0) < target) return 0.0;
  if (!(vq > 0.0)) return q;
  const auto pts = c.breakpoints();

  // Last breakpoint left of q whose price still reaches the target.
  const std::size_t i = c.piece_index(q);
  std::size_t lo = 0;
  std::size_t hi = i;
  while (lo < hi) {
    const std::size_t mid = (lo + hi + 1) / 2;
    if (c.price_at(pts[mid].q) >= target) lo = mid; else hi = mid - 1;
  }
  const std::size_t piece = lo;
  const double left = pts[piece].q;
  const double right = std::min(q, pts[piece + 1].q);
  if (c.price_at(right) >= target) return right;
  const double a = c.slope(piece);
  const double b = c.intercept(piece);
  return std::clamp(b / (target - a), left, right);
}

// Integral of e2(a, b) over b in [lo, hi], with a <= lo.
double inner_integral(const RevenueCurve& c, double a, double lo, double hi) {
  const double t = std::clamp(upper_unchecked(c, a), lo, hi);
  return c.area_to(t) - c.area_to(lo) + (hi - t) * c.value_at(a);
}

// Outer integration over a in [lo, hi] of f, split at `cuts`. The result is
// later multiplied by `weight`; tol is the absolute budget after weighting.
template <class F>
double integrate_split(F&& f, std::vector<double> cuts, double lo, double hi,
                       double weight, double tol) {
  using boost::math::quadrature::gauss_kronrod;
  cuts.push_back(lo);
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::remove_if(cuts.begin(), cuts.end(),
                            [&](double x) { return x < lo || x > hi; }),
             cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  constexpr unsigned kMaxDepth = 20;
  const double budget = tol / weight;
  double total = 0.0;
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    const double x0 = cuts[s];
    const double x1 = cuts[s + 1];
    if (!(x1 > x0)) continue;
    const double seg_tol = budget * (x1 - x0) / (hi - lo);
    double err = 0.0;
    double l1 = 0.0;
    gauss_kronrod<double, 15>::integrate(f, x0, x1, 0, 0.0, &err, &l1);
    const double rel = seg_tol / std::max(l1, 1e-300);
    const double val = gauss_kronrod<double, 15>::integrate(f, x0, x1, kMaxDepth, rel, &err);
    if (!(err <= seg_tol)) {
      std::ostringstream os;
      os << "quadrature error " << err << " above budget " << seg_tol << " on ["
         << x0 << ", " << x1 << "]";
      throw Error(ErrorCode::ToleranceNotMet, os.str());
    }
    total += val;
  }
  return weight * total;
}

// Quantiles where the integrand of the outer integral can have kinks: the
// curve breakpoints, and the quantiles the upper threshold maps onto them.
std::vector<double> kinks(const RevenueCurve& c, std::initializer_list<double> extra) {
  std::vector<double> out;
  for (const auto& b : c.breakpoints()) {
    out.push_back(b.q);
    if (b.q > 0.0) out.push_back(lower_unchecked(c, b.q));
  }
  for (double x : extra) {
    out.push_back(x);
    if (x > 0.0) out.push_back(lower_unchecked(c, x));
  }
  return out;
}

}  // namespace

double e2(const RevenueCurve& curve, double q1, double q2) {
  check_quantile(q1);
  check_quantile(q2);
  const double v1 = curve.price_at(q1);
  const double v2 = curve.price_at(q2);
  if (v1 == v2) return curve.value_at(std::max(q1, q2));
  const bool first_higher = v1 > v2;
  const double v_hi = first_higher ? v1 : v2;
  const double v_lo = first_higher ? v2 : v1;
  const double q_hi = first_higher ? q1 : q2;
  const double q_lo = first_higher ? q2 : q1;
  return curve.value_at(v_hi >= 2.0 * v_lo ? q_hi : q_lo);
}

double erm_price(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorCode::EmptySample, "no sample values");
  std::vector<double> v(values.begin(), values.end());
  for (double x : v) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw Error(ErrorCode::InvalidArgument, "sample values must be finite and nonnegative");
    }
  }
  std::sort(v.begin(), v.end(), std::greater<>());
  double best_price = v[0];
  double best_revenue = -1.0;
  for (std::size_t i = 0; i < v.size();) {
    std::size_t j = i;
    while (j < v.size() && v[j] == v[i]) ++j;
    const double revenue = v[i] * static_cast<double>(j);
    if (revenue > best_revenue) {
      best_revenue = revenue;
      best_price = v[i];
    }
    i = j;
  }
  return best_price;
}

namespace detail {

double chosen_quantile_sorted(const RevenueCurve& curve, std::span<const double> qs) {
  // Ascending quantiles are descending prices; the k-th sample's price sells
  // to k of them. A sample sharing the incumbent's price replaces it.
  double best_q = qs[0];
  double best_price = curve.price_at(qs[0]);
  double best_revenue = best_price;
  for (std::size_t k = 1; k < qs.size(); ++k) {
    const double p = curve.price_at(qs[k]);
    const double revenue = p * static_cast<double>(k + 1);
    if (revenue > best_revenue || p == best_price) {
      best_q = qs[k];
      best_price = p;
      best_revenue = revenue;
    }
  }
  return best_q;
}

}  // namespace detail

double erm_chosen_quantile(const RevenueCurve& curve, std::span<const double> quantiles) {
  if (quantiles.empty()) throw Error(ErrorCode::EmptySample, "no sample quantiles");
  std::vector<double> qs(quantiles.begin(), quantiles.end());
  for (double q : qs) check_quantile(q);
  std::sort(qs.begin(), qs.end());
  return detail::chosen_quantile_sorted(curve, qs);
}

double threshold_upper(const RevenueCurve& curve, double q) {
  check_quantile(q);
  return upper_unchecked(curve, q);
}

double threshold_lower(const RevenueCurve& curve, double q) {
  check_quantile(q);
  return lower_unchecked(curve, q);
}

double conditional_given_min(const RevenueCurve& curve, double q) {
  check_quantile(q);
  if (q >= 1.0) return curve.value_at(1.0);
  return inner_integral(curve, q, q, 1.0) / (1.0 - q);
}

double conditional_given_max(const RevenueCurve& curve, double q) {
  check_quantile(q);
  if (q <= 0.0) return curve.value_at(0.0);
  const double t = lower_unchecked(curve, q);
  return (curve.area_to(t) + (q - t) * curve.value_at(q)) / q;
}

ErmEstimate erm1_exact(const RevenueCurve& curve) {
  return {curve.area(), Method::Exact1, 0.0, 0, 1};
}

ErmEstimate erm2_exact(const RevenueCurve& curve, double tol) {
  check_tolerance(tol);
  auto f = [&](double a) { return inner_integral(curve, a, a, 1.0); };
  const double v = integrate_split(f, kinks(curve, {}), 0.0, 1.0, 2.0, tol);
  return {v, Method::Exact2, 0.0, 0, 2};
}

ErmEstimate erm2_region_exact(const RevenueCurve& curve, Region region, double tol) {
  check_tolerance(tol);
  const double qs = curve.opt().q_star;
  double v = 0.0;
  switch (region) {
    case Region::R: {
      if (!(qs < 1.0)) throw Error(ErrorCode::DegenerateRegion, "region R is empty when q* = 1");
      const double w = 2.0 / ((1.0 - qs) * (1.0 - qs));
      auto f = [&](double a) { return inner_integral(curve, a, a, 1.0); };
      v = integrate_split(f, kinks(curve, {qs}), qs, 1.0, w, tol);
      break;
    }
    case Region::L: {
      if (!(qs > 0.0)) throw Error(ErrorCode::DegenerateRegion, "region L is empty when q* = 0");
      const double w = 2.0 / (qs * qs);
      auto f = [&](double a) { return inner_integral(curve, a, a, qs); };
      v = integrate_split(f, kinks(curve, {qs}), 0.0, qs, w, tol);
      break;
    }
    case Region::B: {
      if (!(qs > 0.0 && qs < 1.0)) {
        throw Error(ErrorCode::DegenerateRegion, "region B is empty when q* is 0 or 1");
      }
      const double w = 1.0 / (qs * (1.0 - qs));
      auto f = [&](double a) { return inner_integral(curve, a, qs, 1.0); };
      v = integrate_split(f, kinks(curve, {qs}), 0.0, qs, w, tol);
      break;
    }
  }
  return {v, Method::Exact2, 0.0, 0, 2};
}

}  // namespace erm2
