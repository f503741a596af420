#include "erm2/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "erm2/bounds.hpp"
#include "erm2/engine.hpp"
#include "erm2/error.hpp"

namespace erm2 {

namespace {

constexpr double kExactTol = 1e-10;

double ratio2(const RevenueCurve& c, double tol = kExactTol) {
  return erm2_exact(c, tol).value / c.opt().opt;
}

}  // namespace

ExperimentReport reproduce_prop1() {
  const RevenueCurve f = truncated_equal_revenue(10.0);
  ExperimentReport rep("prop1");
  rep.set("erm1", erm1_exact(f).value);
  rep.set("erm2", erm2_exact(f, kExactTol).value);
  rep.set("erm1_minus_erm2", *rep.get("erm1") - *rep.get("erm2"));
  rep.expect("erm1", TargetKind::Near, 19.0 / 20.0, 1e-9, "19/20");
  rep.expect("erm2", TargetKind::Near, 11.0 / 12.0, 1e-6, "11/12");
  rep.expect("erm1_minus_erm2", TargetKind::Above, 0.0, 0.0, "two samples earn less");
  return rep;
}

ExperimentReport reproduce_prop3() {
  const RevenueCurve f = quadrilateral(0.1, 0.22);
  const RevenueCurve g = triangular(1.0);
  ExperimentReport rep("prop3");

  constexpr int kGrid = 10000;
  double min_gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kGrid; ++i) {
    const double q = (i + 0.5) / kGrid;
    min_gap = std::min(min_gap, f.value_at(q) - g.value_at(q));
  }
  rep.set("min_pointwise_gap", min_gap);
  rep.set("erm1_F", erm1_exact(f).value);
  rep.set("erm1_G", erm1_exact(g).value);
  rep.set("erm2_F", erm2_exact(f, kExactTol).value);
  rep.set("erm2_G", erm2_exact(g, kExactTol).value);

  rep.expect("min_pointwise_gap", TargetKind::Above, 0.0, 0.0, "r_F > r_G on (0,1)");
  rep.expect("erm1_F", TargetKind::Near, 0.56, 1e-9, "area of the bumped curve");
  rep.expect("erm1_G", TargetKind::Near, 0.5, 1e-9, "area of the identity curve");
  rep.expect("erm2_G", TargetKind::Near, 2.0 / 3.0, 1e-9, "E[max of two uniforms]");
  rep.expect("erm2_F", TargetKind::Below, 0.651, 0.0, "bump lowers two-sample revenue");
  return rep;
}

SwitchPair find_switch_pair() {
  RevenueCurve f = quadrilateral(0.1, 0.22);
  RevenueCurve g = triangular(1.0);
  ExperimentReport rep("switch");
  rep.set("erm1_F", erm1_exact(f).value);
  rep.set("erm1_G", erm1_exact(g).value);
  rep.set("erm2_F", erm2_exact(f, kExactTol).value);
  rep.set("erm2_G", erm2_exact(g, kExactTol).value);
  rep.set("erm1_F_minus_G", *rep.get("erm1_F") - *rep.get("erm1_G"));
  rep.set("erm2_G_minus_F", *rep.get("erm2_G") - *rep.get("erm2_F"));
  rep.expect("erm1_F_minus_G", TargetKind::Above, 0.0, 0.0, "F wins with one sample");
  rep.expect("erm2_G_minus_F", TargetKind::Above, 0.0, 0.0, "G wins with two samples");
  if (!rep.pass()) {
    throw Error(ErrorCode::SearchFailed, "switch inequalities do not hold");
  }
  return {std::move(f), std::move(g), std::move(rep)};
}

RevenueCurve random_regular_curve(std::uint64_t seed, std::size_t pieces) {
  if (pieces < 1) throw Error(ErrorCode::InvalidArgument, "need at least one piece");
  pieces = std::min(pieces, kMaxRandomPieces);
  Rng rng(seed, 0x7265677563757276ULL);
  auto exponential = [&] { return -std::log1p(-rng.uniform()); };

  std::vector<double> widths(pieces);
  double total = 0.0;
  for (auto& w : widths) {
    w = exponential() + 1e-3;
    total += w;
  }
  const double spare = 1.0 - static_cast<double>(pieces) * kMinPieceWidth;
  std::vector<double> xs(pieces + 1, 0.0);
  for (std::size_t i = 0; i < pieces; ++i) {
    xs[i + 1] = xs[i] + kMinPieceWidth + spare * widths[i] / total;
  }
  xs.back() = 1.0;

  // Slopes relative to the first one: 0 > -d1 > -d1-d2 > ...
  const double spread = 0.2 + 4.8 * rng.uniform();
  std::vector<double> rel(pieces, 0.0);
  for (std::size_t i = 1; i < pieces; ++i) {
    rel[i] = rel[i - 1] - (0.02 + spread * exponential());
  }
  double drop = 0.0;  // -(relative curve at q = 1)
  for (std::size_t i = 0; i < pieces; ++i) drop -= rel[i] * (xs[i + 1] - xs[i]);

  double end_value = 1.0;
  if (pieces > 1) {
    end_value = rng.uniform() < 0.3 ? 0.0 : 3.0 * rng.uniform() * drop;
  }
  const double first_slope = end_value + drop;

  std::vector<Breakpoint> pts(pieces + 1);
  pts[0] = {0.0, 0.0};
  double peak = 0.0;
  for (std::size_t i = 0; i < pieces; ++i) {
    const double r = pts[i].r + (first_slope + rel[i]) * (xs[i + 1] - xs[i]);
    pts[i + 1] = {xs[i + 1], std::max(0.0, r)};
    peak = std::max(peak, pts[i + 1].r);
  }
  for (auto& b : pts) b.r /= peak;
  return RevenueCurve(std::move(pts));
}

RevenueCurve bump_curve(double q_peak, double q_b, double r_b) {
  if (!(q_peak > 0.0 && q_peak <= 1.0)) {
    throw Error(ErrorCode::OutOfRange, "peak must lie in (0,1]");
  }
  if (!(q_b > 0.0 && q_b < q_peak) || !(r_b > q_b / q_peak) || !(r_b < 1.0)) {
    std::ostringstream os;
    os << "bump (" << q_b << ", " << r_b << ") infeasible for peak " << q_peak;
    throw Error(ErrorCode::InfeasibleBump, os.str());
  }
  if (q_peak == 1.0) return quadrilateral(q_b, r_b);
  return RevenueCurve({{0.0, 0.0}, {q_b, r_b}, {q_peak, 1.0}, {1.0, 0.0}});
}

Optimum triangular_worst_case(std::size_t grid, double tol) {
  if (grid < 10) throw Error(ErrorCode::InvalidArgument, "grid needs at least 10 points");
  auto f = [](double q) { return ratio2(triangular(q)); };
  auto admissible = [](double q) { return q > 0.0; };
  return grid_golden_minimize(f, 0.0, 1.0, grid + 1, tol, admissible);
}

ExperimentReport quadrilateral_improves(double q_star_tri) {
  const double base = ratio2(triangular(q_star_tri));
  ExperimentReport rep("quadrilateral");
  rep.set("q_star_triangular", q_star_tri);
  rep.set("ratio_triangular", base);

  double best = std::numeric_limits<double>::infinity();
  double best_qb = 0.0;
  double best_rb = 0.0;
  double worst_candidate = std::numeric_limits<double>::infinity();
  int candidates = 0;
  int skipped = 0;
  // Bump position as a fraction of the peak quantile, bump height as the
  // fraction of the gap between the chord and OPT.
  for (int i = 1; i <= 24; ++i) {
    const double q_b = q_star_tri * (0.02 * i);
    for (int j = 0; j <= 20; ++j) {
      const double chord = q_b / q_star_tri;
      const double r_b = chord + (1.0 - chord) * (0.01 * j);
      try {
        const double ratio = ratio2(bump_curve(q_star_tri, q_b, r_b));
        ++candidates;
        worst_candidate = std::min(worst_candidate, ratio);
        if (ratio < best) {
          best = ratio;
          best_qb = q_b;
          best_rb = r_b;
        }
      } catch (const Error& e) {
        if (e.code() != ErrorCode::InfeasibleBump) throw;
        ++skipped;
      }
    }
  }
  rep.set("ratio_best_bump", best);
  rep.set("best_q_b", best_qb);
  rep.set("best_r_b", best_rb);
  rep.set("min_candidate_ratio", worst_candidate);
  rep.set("improvement", base - best);
  rep.set("candidates", candidates);
  rep.set("skipped_infeasible", skipped);
  rep.expect("improvement", TargetKind::Above, 0.0, 0.0,
             "some bump beats the best triangular curve");
  rep.expect("min_candidate_ratio", TargetKind::Above, kGuarantee, 0.0,
             "every candidate respects the guarantee");
  return rep;
}

ExperimentReport theorem_check(std::size_t curves, std::uint64_t seed, double tol) {
  if (curves < 1) throw Error(ErrorCode::InvalidArgument, "need at least one curve");
  constexpr double kInf = std::numeric_limits<double>::infinity();
  double min_ratio2 = kInf;
  double min_ratio1 = kInf;
  double margin_r = kInf;
  double margin_l = kInf;
  double margin_b = kInf;
  double max_split_residual = 0.0;
  std::size_t argmin = 0;
  Rng picker(seed, 0x706965636573ULL);

  for (std::size_t i = 0; i < curves; ++i) {
    const std::size_t pieces = 1 + static_cast<std::size_t>(picker.next() % 16);
    const RevenueCurve c = random_regular_curve(splitmix64(seed) + i, pieces);
    const OptPoint o = c.opt();
    const double total = erm2_exact(c, tol).value;
    const double r2 = total / o.opt;
    if (r2 < min_ratio2) {
      min_ratio2 = r2;
      argmin = i;
    }
    min_ratio1 = std::min(min_ratio1, erm1_exact(c).value / o.opt);

    const double qs = o.q_star;
    double split = 0.0;
    if (qs < 1.0) {
      const double e = erm2_region_exact(c, Region::R, tol).value / o.opt;
      margin_r = std::min(margin_r, e - bound_R(qs));
      split += (1.0 - qs) * (1.0 - qs) * e;
    }
    if (qs > 0.0) {
      const double e = erm2_region_exact(c, Region::L, tol).value / o.opt;
      margin_l = std::min(margin_l, e - kLeftRegionConstant);
      split += qs * qs * e;
    }
    if (qs > 0.0 && qs < 1.0) {
      const double e = erm2_region_exact(c, Region::B, tol).value / o.opt;
      margin_b = std::min(margin_b, e - bound_B(qs));
      split += 2.0 * qs * (1.0 - qs) * e;
    }
    max_split_residual = std::max(max_split_residual, std::abs(split - r2));
  }

  ExperimentReport rep("theorem");
  rep.set("curves", static_cast<double>(curves));
  rep.set("min_erm2_ratio", min_ratio2);
  rep.set("argmin_curve", static_cast<double>(argmin));
  rep.set("min_erm1_ratio", min_ratio1);
  rep.set("max_region_split_residual", max_split_residual);
  rep.expect("min_erm2_ratio", TargetKind::Above, kGuarantee, 0.0, "ERM(F,2) > 0.509 OPT");
  rep.expect("min_erm1_ratio", TargetKind::AtLeast, 0.5, 0.0, "ERM(F,1) >= OPT/2");
  rep.expect("max_region_split_residual", TargetKind::Below, 1e-8, 0.0,
             "regions reassemble ERM(F,2)");
  if (margin_r < kInf) {
    rep.set("min_margin_R", margin_r);
    rep.expect("min_margin_R", TargetKind::AtLeast, -1e-7, 0.0, "E[e2|R] >= bound_R(q*)");
  }
  if (margin_l < kInf) {
    rep.set("min_margin_L", margin_l);
    rep.expect("min_margin_L", TargetKind::AtLeast, -1e-7, 0.0, "E[e2|L] >= 0.528");
  }
  if (margin_b < kInf) {
    rep.set("min_margin_B", margin_b);
    rep.expect("min_margin_B", TargetKind::AtLeast, -1e-7, 0.0, "E[e2|B] >= bound_B(q*)");
  }
  return rep;
}

}  // namespace erm2
