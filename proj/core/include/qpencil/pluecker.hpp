#pragma once
/*
 * Minor algebra for 2x4 boundary matrices. Two problems over the same pencil
 * share a characteristic determinant up to scale exactly when their minor
 * vectors are proportional, and a decomposable vector can be folded back to
 * canonical rows on the chart of its largest minor.
 */

#include "qpencil/core.hpp"

namespace qpencil {

/// The six 2x2 minors p_jk = a_1j a_2k - a_1k a_2j.
PlueckerVector minors(const BoundaryMatrix& bc);

/// p12 p34 - p13 p24 + p14 p23; identically zero for vectors of minors.
Cx relation_residual(const PlueckerVector& p);

/// Projective comparison: the scale is fitted at the largest-magnitude
/// coordinate of q, then ||p - s q|| <= tol ||p|| is required.
bool proportional(const PlueckerVector& p, const PlueckerVector& q, double tol);

/// Row-space equality via the numerical rank of the stacked 4x4 matrix. The
/// verdict is cross-checked against proportional minors; a mismatch between
/// the two routes is an internal error.
bool equivalent(const BoundaryMatrix& a, const BoundaryMatrix& b);

inline constexpr double kDecomposableRelTol = 1e-8;

/// Canonical rows whose minors reproduce p up to one scale. Requires
/// |relation_residual| <= kDecomposableRelTol * max|p_jk|^2.
BoundaryMatrix reconstruct_bc(const PlueckerVector& p);

}  // namespace qpencil
