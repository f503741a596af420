#ifndef ERM2_BOUNDS_HPP
#define ERM2_BOUNDS_HPP

#include "erm2/optimize.hpp"

namespace erm2 {

/// Threshold between "far from linear" and "far from constant" curves in
/// the bound for region L.
inline constexpr double kDefaultDelta = 0.15117;
/// Constant used for region L when the three region bounds are combined.
inline constexpr double kLeftRegionConstant = 0.528;
/// Guaranteed fraction of OPT for two-sample ERM.
inline constexpr double kGuarantee = 0.509;

/// Lower bound on E[e2 | R] / OPT as a function of q* in [0, 1).
double bound_R(double q_star);
/// Lower bound on E[e2 | L] / OPT for the split parameter delta in [0, 1].
double bound_L(double delta);
/// Lower bound on E[e2 | B] / OPT for q* in [0, 1].
double bound_B(double q_star);

/// (1+m)/2 - ((1+m)/2)^2 / 2, the floor on the expected value of the
/// two-curve selection game whose threshold never drops below m.
double trr_bound(double m);

/// Lower bound on E[e2 | min(q1,q2) = q] for q >= q*, given r(q).
double cdec_bound(double q, double r_q);

/// Maximizes bound_L over [lo, hi] by golden-section search.
Optimum optimize_delta(double lo = 0.0, double hi = 1.0);

struct BoundReport {
  double q_star = 0.0;
  double delta = 0.0;
  double gamma = 0.0;
  double bound_R = 0.0;
  double bound_L = 0.0;        // constant entering `combined`
  double bound_L_delta = 0.0;  // bound_L(delta) before rounding down
  double bound_B = 0.0;
  double combined = 0.0;
};

/// (1-q*)^2 bound_R + q*^2 L + 2 q*(1-q*) bound_B with L = left_constant.
BoundReport combined_bound(double q_star, double delta = kDefaultDelta,
                           double left_constant = kLeftRegionConstant);

/// Minimum of the combined bound over q* in [lo, hi] (q* = 1 excluded):
/// 10^4-point grid followed by golden-section refinement. Throws
/// BoundViolated if the minimum does not exceed kGuarantee.
Optimum minimize_combined(double lo = 0.0, double hi = 1.0);

enum class OrderStat { MinDensity, MaxDensity, MaxCondBelow, MaxCondAbove };

/// Order statistics of two independent uniforms:
///  - MinDensity:   density of min on [m, 1] when both are uniform on [m, 1]
///  - MaxDensity:   density of max on [0, 1]
///  - MaxCondBelow: E[max | max <= q]
///  - MaxCondAbove: E[max | max >= q]
double order_stat(OrderStat kind, double q, double m = 0.0);

}  // namespace erm2

#endif
