#ifndef ERM2_EXPERIMENTS_HPP
#define ERM2_EXPERIMENTS_HPP

#include <cstddef>
#include <cstdint>

#include "erm2/curve.hpp"
#include "erm2/optimize.hpp"
#include "erm2/report.hpp"

namespace erm2 {

inline constexpr std::size_t kMaxRandomPieces = 64;
inline constexpr double kMinPieceWidth = 1e-4;

/// Truncated equal-revenue curve at value 10: one sample beats two.
ExperimentReport reproduce_prop1();

/// A bump on the identity curve raises r everywhere yet lowers ERM(F,2).
ExperimentReport reproduce_prop3();

struct SwitchPair {
  RevenueCurve f;
  RevenueCurve g;
  ExperimentReport report;
};

/// F = quadrilateral(0.1, 0.22) and G = identity satisfy
/// ERM(F,1) > ERM(G,1) and ERM(F,2) < ERM(G,2). Throws SearchFailed if not.
SwitchPair find_switch_pair();

/// Random concave curve with `pieces` linear pieces (capped at 64, each at
/// least 1e-4 wide), strictly decreasing slopes, normalized to OPT = 1.
RevenueCurve random_regular_curve(std::uint64_t seed, std::size_t pieces);

/// Triangular curve with its peak moved to q_peak (bump optional).
/// Throws InfeasibleBump unless q_b < q_peak and the bump lies strictly
/// above the chord from the origin to the peak and strictly below OPT = 1.
RevenueCurve bump_curve(double q_peak, double q_b, double r_b);

/// Minimizes ERM(F,2)/OPT over triangular curves by peak position: a
/// `grid`-point scan of (0,1] refined by golden-section search to `tol`.
Optimum triangular_worst_case(std::size_t grid = 200, double tol = 1e-7);

/// Searches bumps near the left edge of triangular(q_star_tri) for a
/// strictly smaller ERM(F,2)/OPT.
ExperimentReport quadrilateral_improves(double q_star_tri);

/// ERM(F,2)/OPT and per-region conditional expectations on random curves,
/// checked against the region bounds and the 0.509 guarantee.
ExperimentReport theorem_check(std::size_t curves, std::uint64_t seed,
                               double tol = 1e-9);

}  // namespace erm2

#endif
