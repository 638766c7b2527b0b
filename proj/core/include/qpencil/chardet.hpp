#pragma once
/*
 * Characteristic determinant of a problem,
 *
 *     Delta(lambda) = det [ U_1(y_1)  U_1(y_2) ]
 *                         [ U_2(y_1)  U_2(y_2) ],
 *
 * where {y_1, y_2} is the regime's fundamental system: exp(w1 lambda x),
 * exp(w2 lambda x) for distinct roots, exp(w lambda x) and x exp(w lambda x)
 * for a double root. Nonzero eigenvalues are exactly the nonzero roots of
 * Delta.
 *
 * In the distinct regime Delta expands over the boundary-matrix minors,
 *
 *     Delta = sum_{j<k} p_jk phi_jk(lambda),
 *
 * with six exponential basis functions phi_jk. The direct and the minor route
 * are kept as two genuinely separate code paths so they can check each other.
 */

#include "qpencil/core.hpp"

namespace qpencil {

// exponent guard: refuse evaluation once any |Re(rate * lambda)| would pass
// this, where rate runs over w1 L, w2 L and their sum
inline constexpr double kExpArgLimit = 700.0;

/// Endpoint data of the fundamental system: values and first derivatives of
/// both columns at x = 0 and x = L.
struct FundamentalValues {
  Cx y1_0, y1_L, dy1_0, dy1_L;
  Cx y2_0, y2_L, dy2_0, dy2_L;
};

FundamentalValues fundamental_values(const Pencil& p, Cx lambda);

/// The six basis functions of the minor expansion, distinct regime only.
struct BasisValues {
  Cx phi12, phi13, phi14, phi23, phi24, phi34;

  std::array<Cx, 6> flat() const {
    return {phi12, phi13, phi14, phi23, phi24, phi34};
  }
};

BasisValues basis_functions(const Pencil& p, Cx lambda);

/// d^order/dlambda^order of every phi_jk, analytic in the distinct regime.
/// order 0 reproduces basis_functions.
std::array<Cx, 6> basis_derivative(const Pencil& p, Cx lambda, int order);

/// Delta via the 2x2 determinant of applied boundary forms. Works in both
/// regimes.
Cx delta_direct(const Problem& pr, Cx lambda);

/// Delta via sum of minors times basis functions. Distinct regime only.
Cx delta_minor(const Problem& pr, Cx lambda);

/// d^order Delta / dlambda^order for order 1..4. Analytic in the distinct
/// regime; a Cauchy-integral fallback covers the double regime.
Cx delta_derivative(const Problem& pr, Cx lambda, int order);

/// Magnitude of Delta before cancellation: the same term expansion with every
/// term replaced by its absolute value. Backward-error yardstick for residuals.
double delta_scale(const Problem& pr, Cx lambda);

}  // namespace qpencil
