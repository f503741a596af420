// Reference implementations used as test oracles. They work on raw
// breakpoint lists and never call the library's evaluation code: values by
// linear scan, thresholds by bisection, integrals by midpoint sums and
// Monte Carlo on std::mt19937_64.
#ifndef ERM2_TESTS_ORACLE_HPP
#define ERM2_TESTS_ORACLE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "erm2/curve.hpp"

namespace oracle {

using Pts = std::vector<std::pair<double, double>>;

inline Pts points(const erm2::RevenueCurve& c) {
  Pts p;
  for (const auto& b : c.breakpoints()) p.emplace_back(b.q, b.r);
  return p;
}

inline double r(const Pts& p, double q) {
  for (std::size_t i = 1; i < p.size(); ++i) {
    if (q <= p[i].first) {
      const auto [q0, r0] = p[i - 1];
      const auto [q1, r1] = p[i];
      return r0 + (r1 - r0) * (q - q0) / (q1 - q0);
    }
  }
  return p.back().second;
}

// On the first piece the price is exactly its slope: r(q)/q would round
// differently at different q and split the atom's tie.
inline double v(const Pts& p, double q) {
  if (q <= p[1].first) return p[1].second / p[1].first;
  return r(p, q) / q;
}

// Integral of r over [a, b], exact for piecewise-linear r.
inline double area(const Pts& p, double a, double b) {
  if (b <= a) return 0.0;
  std::vector<double> xs{a};
  for (const auto& [q, _] : p)
    if (q > a && q < b) xs.push_back(q);
  xs.push_back(b);
  double s = 0.0;
  for (std::size_t i = 1; i < xs.size(); ++i)
    s += 0.5 * (r(p, xs[i - 1]) + r(p, xs[i])) * (xs[i] - xs[i - 1]);
  return s;
}

inline double opt(const Pts& p) {
  double best = 0.0;
  for (const auto& [_, rv] : p) best = std::max(best, rv);
  return best;
}

inline double q_star(const Pts& p) {
  const double best = opt(p);
  for (const auto& [q, rv] : p)
    if (rv == best) return q;
  return 1.0;
}

// Straight from the definition of the two-sample rule.
inline double e2(const Pts& p, double q1, double q2) {
  const double v1 = v(p, q1), v2 = v(p, q2);
  if (v1 == v2) return r(p, std::max(q1, q2));
  const double hi_q = v1 > v2 ? q1 : q2;
  const double lo_q = v1 > v2 ? q2 : q1;
  const double hi = std::max(v1, v2), lo = std::min(v1, v2);
  return hi >= 2.0 * lo ? r(p, hi_q) : r(p, lo_q);
}

// sup{x >= q : 2 v(x) > v(q)} by bisection, capped at 1.
inline double tau_upper(const Pts& p, double q) {
  const double target = v(p, q);
  if (2.0 * v(p, 1.0) > target) return 1.0;
  double lo = q, hi = 1.0;
  for (int i = 0; i < 200 && hi - lo > 1e-16; ++i) {
    const double mid = 0.5 * (lo + hi);
    (2.0 * v(p, mid) > target ? lo : hi) = mid;
  }
  return lo;
}

// sup{x <= q : v(x) >= 2 v(q)} by bisection, 0 if empty.
inline double tau_lower(const Pts& p, double q) {
  const double target = 2.0 * v(p, q);
  if (v(p, 0.0) < target) return 0.0;
  double lo = 0.0, hi = q;
  for (int i = 0; i < 200 && hi - lo > 1e-16; ++i) {
    const double mid = 0.5 * (lo + hi);
    (v(p, mid) >= target ? lo : hi) = mid;
  }
  return lo;
}

// int over b in [max(a, blo), bhi] of e2(a, b), with a the smaller quantile.
inline double inner(const Pts& p, double a, double blo, double bhi) {
  const double lo = std::max(a, blo);
  if (bhi <= lo) return 0.0;
  const double t = std::clamp(tau_upper(p, a), lo, bhi);
  return area(p, lo, t) + (bhi - t) * r(p, a);
}

// int over a in [alo, ahi] of inner(a, blo, bhi), midpoint rule.
inline double outer(const Pts& p, double alo, double ahi, double blo, double bhi,
                    int steps) {
  const double h = (ahi - alo) / steps;
  double s = 0.0;
  for (int i = 0; i < steps; ++i) s += inner(p, alo + (i + 0.5) * h, blo, bhi);
  return s * h;
}

inline double erm2(const Pts& p, int steps = 20000) {
  return 2.0 * outer(p, 0.0, 1.0, 0.0, 1.0, steps);
}

inline double region_R(const Pts& p, int steps = 20000) {
  const double qs = q_star(p);
  return 2.0 * outer(p, qs, 1.0, qs, 1.0, steps) / ((1 - qs) * (1 - qs));
}

inline double region_L(const Pts& p, int steps = 20000) {
  const double qs = q_star(p);
  return 2.0 * outer(p, 0.0, qs, 0.0, qs, steps) / (qs * qs);
}

inline double region_B(const Pts& p, int steps = 20000) {
  const double qs = q_star(p);
  return outer(p, 0.0, qs, qs, 1.0, steps) / (qs * (1 - qs));
}

inline double given_min(const Pts& p, double q) { return inner(p, q, q, 1.0) / (1.0 - q); }

inline double given_max(const Pts& p, double q) {
  const double t = tau_lower(p, q);
  return (area(p, 0.0, t) + (q - t) * r(p, q)) / q;
}

struct McResult {
  double mean;
  double std_error;
};

// Plain Monte Carlo of the two-sample rule, one e2 evaluation per trial.
inline McResult mc_erm2(const Pts& p, std::uint64_t trials, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double mean = 0.0, m2 = 0.0;
  for (std::uint64_t k = 1; k <= trials; ++k) {
    const double x = e2(p, u(gen), u(gen));
    const double d = x - mean;
    mean += d / static_cast<double>(k);
    m2 += d * (x - mean);
  }
  const double var = m2 / static_cast<double>(trials - 1);
  return {mean, std::sqrt(var / static_cast<double>(trials))};
}

// Random concave curve with r(0) = 0 and OPT = 1 at q = 1.
inline erm2::RevenueCurve increasing_curve(std::uint64_t seed, int pieces) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<double> w(pieces), s(pieces);
  double total = 0.0;
  for (auto& x : w) total += (x = u(gen));
  double slope = 1.0;
  for (auto& x : s) {
    x = slope;
    slope *= 0.3 + 0.6 * u(gen);
  }
  std::vector<erm2::Breakpoint> b{{0.0, 0.0}};
  double q = 0.0, rv = 0.0;
  for (int i = 0; i < pieces; ++i) {
    const double dq = w[i] / total;
    q += dq;
    rv += s[i] * dq;
    b.push_back({i + 1 == pieces ? 1.0 : q, rv});
  }
  for (auto& x : b) x.r /= rv;
  return erm2::make_curve(std::move(b));
}

}  // namespace oracle

#endif
