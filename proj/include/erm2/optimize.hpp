#ifndef ERM2_OPTIMIZE_HPP
#define ERM2_OPTIMIZE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace erm2 {

struct Optimum {
  double argument;
  double value;
};

/// Golden-section search for a minimum of a unimodal f on [lo, hi], stopping
/// once the bracket is narrower than tol.
template <class F>
Optimum golden_section_minimize(F&& f, double lo, double hi, double tol = 1e-7) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  Optimum best{0.5 * (a + b), 0.0};
  best.value = f(best.argument);
  return best;
}

/// Grid scan over [lo, hi] with `points` samples, refined by golden-section
/// search on the bracket around the best grid point. Exact ties keep the
/// lowest index. Points where `admissible` is false are skipped.
template <class F, class Admissible>
Optimum grid_golden_minimize(F&& f, double lo, double hi, std::size_t points, double tol,
                             Admissible&& admissible) {
  const double step = (hi - lo) / static_cast<double>(points - 1);
  std::size_t best_i = points;
  double best_v = 0.0;
  for (std::size_t i = 0; i < points; ++i) {
    const double x = (i + 1 == points) ? hi : lo + step * static_cast<double>(i);
    if (!admissible(x)) continue;
    const double v = f(x);
    if (best_i == points || v < best_v) {
      best_i = i;
      best_v = v;
    }
  }
  if (best_i == points) return {std::nan(""), std::nan("")};
  const double grid_x = (best_i + 1 == points) ? hi : lo + step * static_cast<double>(best_i);
  double a = best_i > 0 ? grid_x - step : grid_x;
  double b = best_i + 1 < points ? grid_x + step : grid_x;
  a = std::max(a, lo);
  b = std::min(b, hi);
  while (!admissible(b) && b > grid_x) b = 0.5 * (b + grid_x);
  while (!admissible(a) && a < grid_x) a = 0.5 * (a + grid_x);
  Optimum refined = golden_section_minimize(f, a, b, tol);
  if (refined.value < best_v) return refined;
  return {grid_x, best_v};
}

}  // namespace erm2

#endif
