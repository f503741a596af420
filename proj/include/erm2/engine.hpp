#ifndef ERM2_ENGINE_HPP
#define ERM2_ENGINE_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

#include "erm2/curve.hpp"

namespace erm2 {

enum class Method { Exact1, Exact2, MonteCarlo };

const char* to_string(Method m) noexcept;

/// Expected revenue of ERM pricing. Exact results carry std_error = 0 and
/// trials = 0.
struct ErmEstimate {
  double value = 0.0;
  Method method = Method::Exact1;
  double std_error = 0.0;
  std::uint64_t trials = 0;
  std::uint32_t n_samples = 0;
};

/// Partition of the quantile square around q*: R has both quantiles >= q*,
/// L has both < q*, B is the rest.
enum class Region { R, L, B };

const char* to_string(Region r) noexcept;
Region parse_region(std::string_view text);

/// Two-sample ERM revenue: post the higher of the two sampled prices iff it
/// is at least twice the lower one, otherwise the lower. Equal prices resolve
/// to the larger quantile.
double e2(const RevenueCurve& curve, double q1, double q2);

/// Price maximizing p * #{i : values[i] >= p} over the sample values.
/// Empirical-revenue ties go to the higher price, which makes the two-sample
/// case post max iff max >= 2 min.
double erm_price(std::span<const double> values);

/// Quantile of the sample whose price ERM posts, given sample quantiles.
/// Samples sharing a price resolve to the largest quantile. The posted
/// price's expected revenue is curve.value_at(result).
double erm_chosen_quantile(const RevenueCurve& curve, std::span<const double> quantiles);

namespace detail {
/// erm_chosen_quantile for quantiles already sorted ascending, unchecked.
double chosen_quantile_sorted(const RevenueCurve& curve, std::span<const double> sorted);
}  // namespace detail

/// sup{x >= q : 2 v(x) > v(q)}, capped at 1.
double threshold_upper(const RevenueCurve& curve, double q);

/// sup{x <= q : v(x) >= 2 v(q)}, or 0 when no such x exists.
double threshold_lower(const RevenueCurve& curve, double q);

/// E[e2 | min(q1,q2) = q]; the other quantile is uniform on [q, 1].
double conditional_given_min(const RevenueCurve& curve, double q);
/// E[e2 | max(q1,q2) = q]; the other quantile is uniform on [0, q].
double conditional_given_max(const RevenueCurve& curve, double q);

inline constexpr double kDefaultTolerance = 1e-9;

/// Area under the curve.
ErmEstimate erm1_exact(const RevenueCurve& curve);

/// ERM(F,2) = 2 * int_0^1 [ int_q^t(q) r + (1 - t(q)) r(q) ] dq with t the
/// upper threshold. The inner integral is closed form; the outer one is
/// adaptive Gauss-Kronrod, split at every curve breakpoint and at every
/// quantile the threshold maps onto a breakpoint. Throws ToleranceNotMet if
/// the error estimate stays above tol.
ErmEstimate erm2_exact(const RevenueCurve& curve, double tol = kDefaultTolerance);

/// E[e2 | (q1,q2) in region]. Throws DegenerateRegion for zero-area regions.
ErmEstimate erm2_region_exact(const RevenueCurve& curve, Region region,
                              double tol = kDefaultTolerance);

/// Monte Carlo ERM(F,n). Each trial draws n sample quantiles and scores the
/// posted price by its exact acceptance probability. Work is cut into
/// fixed-size shards with their own substreams and reduced pairwise in
/// shard order, so the result does not depend on `threads` (0 = automatic).
ErmEstimate erm_mc(const RevenueCurve& curve, std::size_t n, std::uint64_t trials,
                   std::uint64_t seed, unsigned threads = 0);

}  // namespace erm2

#endif
