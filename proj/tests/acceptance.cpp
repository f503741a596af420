// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "erm2/bounds.hpp"
#include "erm2/curve.hpp"
#include "erm2/engine.hpp"
#include "erm2/experiments.hpp"
#include "oracle.hpp"

using namespace erm2;

namespace {

// Tolerances and budgets.
constexpr double kProp1Erm1Tol = 1e-9;
constexpr double kProp1Erm2Tol = 1e-6;
constexpr double kProp3ExactTol = 1e-9;
constexpr double kProp3Ceiling = 0.651;
constexpr int kProp3Grid = 10000;
constexpr double kBoundLTol = 1e-5;
constexpr double kDeltaTol = 1e-3;
constexpr double kQStarTol = 1e-3;
constexpr double kMinBoundTol = 1e-4;
constexpr double kContinuityTol = 1e-9;
constexpr int kCrossCurves = 100;
constexpr int kCrossRequired = 99;
constexpr std::uint64_t kCrossTrials = 1000000;
constexpr double kSigmas = 4.0;
constexpr int kTheoremCurves = 500;
constexpr double kRegionTol = 1e-7;
constexpr int kThresholdCurves = 50;
constexpr int kThresholdGrid = 1000;
constexpr double kThresholdTol = 1e-9;
constexpr double kDensityTol = 1e-10;
constexpr int kOrderDraws = 1000000;
constexpr double kFastBudget = 1.0;
constexpr double kCrossBudget = 120.0;
constexpr double kTheoremBudget = 300.0;

constexpr double kTriangularWorstQ = 0.263951324;
constexpr double kTriangularWorstRatio = 0.616670237;

int failures = 0;

struct Check {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (detail.size() < 400) detail += what + "; ";
    }
  }
};

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

void criterion(const char* name, double budget, const std::function<void(Check&)>& body) {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.require(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.require(secs < budget, fmt("runtime %.3fs over budget %.0fs", secs, budget));
  std::printf("%s %s (%.3fs)%s%s\n", c.ok ? "PASS" : "FAIL", name, secs,
              c.detail.empty() ? "" : ": ", c.detail.c_str());
  std::fflush(stdout);
  if (!c.ok) ++failures;
}

double simpson(auto&& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4 : 2);
  return s * h / 3;
}

struct Mean {
  double mean = 0, m2 = 0;
  std::uint64_t n = 0;
  void add(double x) {
    ++n;
    const double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }
  double se() const { return std::sqrt(m2 / static_cast<double>(n - 1) / static_cast<double>(n)); }
  // Distance from x in standard errors; a constant sample must match exactly.
  double z(double x) const {
    const double d = std::abs(mean - x);
    if (se() == 0.0) return d <= 1e-12 * std::max(1.0, std::abs(x)) ? 0.0 : INFINITY;
    return d / se();
  }
};

}  // namespace

int main() {
  criterion("truncated equal-revenue: one sample beats two", kFastBudget, [](Check& c) {
    const auto f = truncated_equal_revenue(10);
    const double e1 = erm1_exact(f).value;
    const double e2v = erm2_exact(f, 1e-9).value;
    c.require(std::abs(e1 - 0.95) <= kProp1Erm1Tol, fmt("ERM(F,1)=%.12g", e1));
    c.require(std::abs(e2v - 11.0 / 12) <= kProp1Erm2Tol, fmt("ERM(F,2)=%.12g", e2v));
    c.require(e2v < e1, "ERM(F,2) not below ERM(F,1)");
    c.detail += fmt("ERM(F,1)=%.12g ERM(F,2)=%.12g", e1, e2v);
  });

  criterion("bumped identity: pointwise larger curve, smaller two-sample revenue", kFastBudget,
            [](Check& c) {
              const auto f = quadrilateral(0.1, 0.22);
              const auto g = triangular(1);
              int bad = 0;
              for (int i = 1; i < kProp3Grid; ++i) {
                const double q = static_cast<double>(i) / kProp3Grid;
                bad += !(f.value_at(q) > g.value_at(q));
              }
              c.require(bad == 0, fmt("%d grid points without r_F > r_G", bad));
              const double g2 = erm2_exact(g, 1e-9).value;
              const double f2 = erm2_exact(f, 1e-9).value;
              const double f1 = erm1_exact(f).value;
              c.require(std::abs(g2 - 2.0 / 3) <= kProp3ExactTol, fmt("ERM(G,2)=%.12g", g2));
              c.require(f2 < kProp3Ceiling, fmt("ERM(F,2)=%.12g", f2));
              c.require(std::abs(f1 - 0.56) <= kProp3ExactTol, fmt("ERM(F,1)=%.12g", f1));
              c.detail += fmt("ERM(G,2)=%.12g ERM(F,2)=%.12g ERM(F,1)=%.12g", g2, f2, f1);
            });

  criterion("bounds and combined guarantee", kFastBudget, [](Check& c) {
    const double bl = bound_L(0.15117);
    const auto d = optimize_delta();
    const auto m = minimize_combined();
    const double x = 2.0 / 3;
    const double jump = std::abs(bound_R(std::nextafter(x, 0.0)) - bound_R(x));
    c.require(std::abs(bl - 0.528344) <= kBoundLTol, fmt("bound_L=%.9g", bl));
    c.require(std::abs(d.argument - 0.15117) <= kDeltaTol, fmt("delta=%.9g", d.argument));
    c.require(std::abs(m.argument - 0.713832) <= kQStarTol, fmt("q*=%.9g", m.argument));
    c.require(std::abs(m.value - 0.50922) <= kMinBoundTol, fmt("min=%.9g", m.value));
    c.require(m.value > kGuarantee, "minimum not above 0.509");
    c.require(jump <= kContinuityTol, fmt("bound_R jump %.3g at 2/3", jump));
    c.detail += fmt("bound_L=%.9g delta=%.9g q*=%.9g min=%.9g jump=%.2g", bl, d.argument,
                    m.argument, m.value, jump);
  });

  criterion("cross-validation exact vs Monte Carlo", kCrossBudget, [](Check& c) {
    int agree = 0;
    double worst = 0;
    for (int i = 1; i <= kCrossCurves; ++i) {
      const auto curve = random_regular_curve(1000 + i, 1 + i % 16);
      const double exact = erm2_exact(curve).value;
      const auto mc = erm_mc(curve, 2, kCrossTrials, 5000 + i);
      const double z = std::abs(exact - mc.value) / mc.std_error;
      worst = std::max(worst, z);
      agree += z <= kSigmas;
    }
    c.require(agree >= kCrossRequired, fmt("only %d curves within 4 SE", agree));
    c.detail += fmt("%d/%d within 4 SE, worst %.2f SE", agree, kCrossCurves, worst);
  });

  criterion("theorem suite on random curves", kTheoremBudget, [](Check& c) {
    double min2 = 1e9, min1 = 1e9, mr = 1e9, ml = 1e9, mb = 1e9;
    for (int i = 1; i <= kTheoremCurves; ++i) {
      const auto curve = random_regular_curve(20000 + i, 1 + i % 24);
      const double o = curve.opt().opt;
      const double qs = curve.opt().q_star;
      min2 = std::min(min2, erm2_exact(curve).value / o);
      min1 = std::min(min1, erm1_exact(curve).value / o);
      if (qs < 1) mr = std::min(mr, erm2_region_exact(curve, Region::R).value / o - bound_R(qs));
      if (qs > 0) ml = std::min(ml, erm2_region_exact(curve, Region::L).value / o - 0.528);
      if (qs > 0 && qs < 1)
        mb = std::min(mb, erm2_region_exact(curve, Region::B).value / o - bound_B(qs));
    }
    c.require(min2 > kGuarantee, fmt("min ERM(F,2)/OPT=%.9g", min2));
    c.require(min1 >= 0.5, fmt("min ERM(F,1)/OPT=%.17g", min1));
    c.require(mr >= -kRegionTol, fmt("R margin %.3g", mr));
    c.require(ml >= -kRegionTol, fmt("L margin %.3g", ml));
    c.require(mb >= -kRegionTol, fmt("B margin %.3g", mb));
    c.detail += fmt("min ratio %.9g, min ERM1 ratio %.9g, margins R %.3g L %.3g B %.3g", min2,
                    min1, mr, ml, mb);
  });

  criterion("threshold and order-statistic suite", kTheoremBudget, [](Check& c) {
    int violations = 0;
    for (int i = 1; i <= kThresholdCurves; ++i) {
      const auto curve = random_regular_curve(300 + i, 1 + i % 20);
      const double qs = curve.opt().q_star;
      double prev_up = 0, prev_lo = 0;
      for (int k = 0; k <= kThresholdGrid; ++k) {
        const double s = static_cast<double>(k) / kThresholdGrid;
        // Upper threshold on [q*, 1].
        const double q = qs + (1 - qs) * s;
        const double t = threshold_upper(curve, q);
        bool ok = t >= q && t <= std::min(2 * q, 1.0) + 1e-15 && t >= prev_up;
        if (t < 1)
          ok = ok && std::abs(curve.price_at(t) - curve.price_at(q) / 2) <=
                         kThresholdTol * curve.price_at(q);
        prev_up = t;
        // Lower threshold on [0, q*].
        const double p = qs * s;
        const double u = threshold_lower(curve, p);
        ok = ok && u <= p / 2 + 1e-15 && u >= prev_lo;
        if (u > 0)
          ok = ok && std::abs(curve.price_at(u) - 2 * curve.price_at(p)) <=
                         kThresholdTol * curve.price_at(u);
        prev_lo = u;
        violations += !ok;
      }
    }
    c.require(violations == 0, fmt("%d threshold violations", violations));

    double worst_density = 0;
    for (double m : {0.0, 0.25, 0.5, 0.9}) {
      const double s = simpson([&](double q) { return order_stat(OrderStat::MinDensity, q, m); },
                               m, 1.0, 1000);
      worst_density = std::max(worst_density, std::abs(s - 1));
    }
    worst_density = std::max(
        worst_density,
        std::abs(simpson([](double q) { return order_stat(OrderStat::MaxDensity, q); }, 0, 1,
                         1000) -
                 1));
    c.require(worst_density <= kDensityTol, fmt("density mass off by %.3g", worst_density));

    // Conditional expectations of the maximum against direct simulation.
    std::mt19937_64 gen(99);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double worst_z = 0;
    for (double q : {0.2, 0.5, 0.8}) {
      Mean below, above;
      while (below.n < kOrderDraws || above.n < kOrderDraws) {
        const double x = std::max(unif(gen), unif(gen));
        if (x <= q && below.n < kOrderDraws) below.add(x);
        if (x >= q && above.n < kOrderDraws) above.add(x);
      }
      worst_z = std::max(worst_z, below.z(order_stat(OrderStat::MaxCondBelow, q)));
      worst_z = std::max(worst_z, above.z(order_stat(OrderStat::MaxCondAbove, q)));
    }
    // Engine conditionals E[e2 | min = q] and E[e2 | max = q] likewise.
    for (int i = 1; i <= 3; ++i) {
      const auto curve = random_regular_curve(700 + i, 3 + i);
      const auto pts = oracle::points(curve);
      for (double q : {0.3, 0.7}) {
        Mean mn, mx;
        for (int k = 0; k < kOrderDraws; ++k) {
          mn.add(oracle::e2(pts, q, q + (1 - q) * unif(gen)));
          mx.add(oracle::e2(pts, q * unif(gen), q));
        }
        worst_z = std::max(worst_z, mn.z(conditional_given_min(curve, q)));
        worst_z = std::max(worst_z, mx.z(conditional_given_max(curve, q)));
      }
    }
    c.require(worst_z <= kSigmas, fmt("conditional expectation off by %.2f SE", worst_z));
    c.detail += fmt("threshold violations %d, density error %.2g, worst %.2f SE", violations,
                    worst_density, worst_z);
  });

  criterion("triangular worst case regression (engine vs independent MC)", kCrossBudget,
            [](Check& c) {
              const auto o = triangular_worst_case();
              c.require(std::abs(o.argument - kTriangularWorstQ) <= 1e-6,
                        fmt("q*=%.9g", o.argument));
              c.require(std::abs(o.value - kTriangularWorstRatio) <= 1e-8,
                        fmt("ratio=%.9g", o.value));
              const auto mc = oracle::mc_erm2(oracle::points(triangular(o.argument)), 2000000, 77);
              const double z = std::abs(mc.mean - o.value) / mc.std_error;
              c.require(z <= kSigmas, fmt("MC off by %.2f SE", z));
              c.detail += fmt("q*=%.9g ratio=%.9g MC %.2f SE", o.argument, o.value, z);
            });

  std::printf("%s: %d failing\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
