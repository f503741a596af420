#include "erm2/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "erm2/error.hpp"

namespace erm2 {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::OutOfRange, what);
}

// Right-region bound for q* >= 2/3, written in u = 1 - q*:
//   1/3 + (1 / (2 u^3)) * sum_{n>=3} u^n / n.
double bound_R_high(double q_star) {
  const double u = 1.0 - q_star;
  if (u < 0.05) {
    double sum = 0.0;
    double pw = 1.0;
    for (int n = 3; n < 40; ++n) {
      sum += pw / n;
      pw *= u;
    }
    return 1.0 / 3.0 + 0.5 * sum;
  }
  const double tail = -std::log1p(-u) - u - 0.5 * u * u;
  return 1.0 / 3.0 + tail / (2.0 * u * u * u);
}

double bound_R_low(double q_star) {
  const double u = 1.0 - q_star;
  const double a = q_star / 4.0;
  const double b = q_star / 2.0;
  const double inner = 2.0 / 9.0 - a * a + b * b * b / 3.0 + 0.5 * std::log(2.0 / 3.0);
  return 2.0 / 3.0 - inner / (u * u * u);
}

double left_far_from_linear(double delta) { return 0.5 + 3.0 * delta / 16.0; }

double left_far_from_constant(double gamma) {
  const double g = gamma;
  return ((((64.0 / 3.0 * g - 8.0) * g + 8.0 / 3.0) * g - 2.0 / 3.0) * g - 1.0) * g + 2.0 / 3.0;
}

}  // namespace

double bound_R(double q_star) {
  require(q_star >= 0.0 && q_star < 1.0, "bound_R needs q* in [0,1)");
  return q_star >= 2.0 / 3.0 ? bound_R_high(q_star) : bound_R_low(q_star);
}

double bound_L(double delta) {
  require(delta >= 0.0 && delta <= 1.0, "bound_L needs delta in [0,1]");
  const double gamma = delta / (1.0 + delta);
  return std::min(left_far_from_linear(delta), left_far_from_constant(gamma));
}

double trr_bound(double m) {
  require(m >= 0.0 && m <= 1.0, "trr_bound needs m in [0,1]");
  const double h = 0.5 * (1.0 + m);
  return h - 0.5 * h * h;
}

double bound_B(double q_star) {
  require(q_star >= 0.0 && q_star <= 1.0, "bound_B needs q* in [0,1]");
  return trr_bound(1.0 / (1.0 + q_star));
}

double cdec_bound(double q, double r_q) {
  require(q > 0.0 && q < 1.0, "cdec_bound needs q in (0,1)");
  require(r_q >= 0.0, "cdec_bound needs r(q) >= 0");
  if (q <= 2.0 / 3.0) return r_q * (1.0 - q / (16.0 * (1.0 - q)));
  return r_q * (0.5 + 1.0 / (4.0 * q));
}

Optimum optimize_delta(double lo, double hi) {
  require(lo >= 0.0 && hi <= 1.0 && lo <= hi, "delta search range must lie in [0,1]");
  auto neg = [](double d) { return -bound_L(d); };
  Optimum o = golden_section_minimize(neg, lo, hi, 1e-9);
  // Endpoints can win when the range excludes the crossing point.
  for (double x : {lo, hi}) {
    if (-bound_L(x) < o.value) o = {x, -bound_L(x)};
  }
  return {o.argument, -o.value};
}

BoundReport combined_bound(double q_star, double delta, double left_constant) {
  require(q_star >= 0.0 && q_star < 1.0, "combined_bound needs q* in [0,1)");
  BoundReport rep;
  rep.q_star = q_star;
  rep.delta = delta;
  rep.gamma = delta / (1.0 + delta);
  rep.bound_R = bound_R(q_star);
  rep.bound_L = left_constant;
  rep.bound_L_delta = bound_L(delta);
  rep.bound_B = bound_B(q_star);
  const double u = 1.0 - q_star;
  rep.combined = u * u * rep.bound_R + q_star * q_star * rep.bound_L +
                 2.0 * q_star * u * rep.bound_B;
  return rep;
}

Optimum minimize_combined(double lo, double hi) {
  require(lo >= 0.0 && hi <= 1.0 && lo < hi, "q* search range must lie in [0,1]");
  auto f = [](double q) { return combined_bound(q).combined; };
  auto admissible = [](double q) { return q < 1.0; };
  Optimum o = grid_golden_minimize(f, lo, hi, 10001, 1e-7, admissible);
  if (!(o.value > kGuarantee)) {
    std::ostringstream os;
    os << "combined bound " << o.value << " at q* = " << o.argument
       << " does not exceed " << kGuarantee;
    throw Error(ErrorCode::BoundViolated, os.str());
  }
  return o;
}

double order_stat(OrderStat kind, double q, double m) {
  require(q >= 0.0 && q <= 1.0, "order_stat needs q in [0,1]");
  switch (kind) {
    case OrderStat::MinDensity:
      require(m >= 0.0 && m < 1.0 && q >= m, "min density needs 0 <= m <= q, m < 1");
      return 2.0 * (1.0 - q) / ((1.0 - m) * (1.0 - m));
    case OrderStat::MaxDensity:
      return 2.0 * q;
    case OrderStat::MaxCondBelow:
      return 2.0 / 3.0 * q;
    case OrderStat::MaxCondAbove:
      // (1 - q^3) / (1 - q^2) with the common factor (1 - q) cancelled.
      return 2.0 / 3.0 * (1.0 + q + q * q) / (1.0 + q);
  }
  return 0.0;
}

}  // namespace erm2
