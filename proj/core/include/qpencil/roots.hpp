#pragma once
/*
 * Zero location for entire functions on rectangles. Counting is by the
 * argument principle with adaptive phase tracking along the contour; location
 * is by recursive quad-subdivision down to isolated cells, Newton refinement
 * from cell centers, and an independent winding certificate per root.
 *
 * A zero on a contour is never tolerated: outer boundaries are regrown a few
 * times, internal split lines are re-chosen where the function stays large.
 */

#include <functional>
#include <utility>
#include <vector>

#include "qpencil/core.hpp"

namespace qpencil {

using Evaluator = std::function<Cx(Cx)>;
using ScaleFn = std::function<double(Cx)>;

struct RootFinderConfig {
  double zero_exclusion_radius = 1e-8;
  double dedup_radius = 1e-7;
  double residual_tol = 1e-11;
  int max_multiplicity = 8;
  int max_depth = 40;
  double min_box_diameter = 1e-9;
  double edge_jitter = 1e-6;
};

/// All fields positive, min_box_diameter < dedup_radius.
void validate(const RootFinderConfig& cfg);

/// Zeros of f inside the rectangle, counted with multiplicity. The region is
/// regrown by edge_jitter * (1 + diameter) up to 5 times when the contour
/// passes too close to a zero; "close" is residual_tol times scale(lambda)
/// where a scale is supplied, absolute otherwise.
long count_zeros(const Evaluator& f, const SearchRegion& region,
                 const RootFinderConfig& cfg = {}, const ScaleFn& scale = {});

/// Newton from seed: stops when |step| < 1e-14 * (1 + |lambda|) or after 50
/// iterations, then checks the residual.
Cx refine_root(const Evaluator& f, const Evaluator& df, Cx seed,
               const RootFinderConfig& cfg = {});

/// Split lines for a 2x2 subdivision, chosen among a few off-center
/// candidates to maximize the minimum of |f| along the line. Children built
/// on these lines partition the region exactly, so their counts add up.
std::pair<double, double> choose_split_lines(const Evaluator& f,
                                             const SearchRegion& region);

struct ZeroSearch {
  std::vector<EigenvalueEntry> zeros;  // lexicographic by (Re, Im)
  SearchRegion region;                 // effective rectangle after growth
};

/// Generic engine: every zero of f in the region, refined and certified.
/// scale(lambda) is the yardstick for residuals (default 1).
ZeroSearch locate_zeros(const Evaluator& f, const Evaluator& df,
                        const SearchRegion& region,
                        const RootFinderConfig& cfg = {},
                        const ScaleFn& scale = {});

/// Nonzero eigenvalues of the problem in the region. lambda = 0 is excluded
/// from the list; its order as a zero of Delta is reported separately when
/// the exclusion disk lies inside the region.
Spectrum find_eigenvalues(const Problem& problem, const SearchRegion& region,
                          const RootFinderConfig& cfg = {});

/// Same search for an explicit determinant. The order at the origin is
/// divided out before subdivision, so a multiple zero there does not force
/// the contours through it. scale is the residual yardstick and must be
/// nonempty.
Spectrum find_eigenvalues(const Evaluator& delta, const Evaluator& ddelta,
                          const ScaleFn& scale, const SearchRegion& region,
                          const RootFinderConfig& cfg = {});

}  // namespace qpencil
