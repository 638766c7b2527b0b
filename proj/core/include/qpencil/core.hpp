#pragma once
/*
 * Value types for two-point boundary eigenvalue problems attached to the
 * quadratic operator pencil
 *
 *     y'' + b lambda y' + c lambda^2 y = 0   on [0, L],
 *
 * with boundary forms U_i(y) = a_i1 y(0) + a_i2 y(L) + a_i3 y'(0) + a_i4 y'(L).
 * Substituting y = exp(w lambda x) reduces the pencil to w^2 + b w + c = 0; the two
 * characteristic roots drive everything downstream.
 */

#include <array>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace qpencil {

using Cx = std::complex<double>;

// ===========================================================================
// errors
// ===========================================================================

enum class Errc {
  InvalidPencil,
  InvalidRegion,
  InvalidConfig,
  RankDeficient,
  Overflow,
  DoubleRootRegime,
  OrderUnsupported,
  BoundaryZero,
  NonConvergent,
  NewtonDiverged,
  MultiplicityCapExceeded,
  ZeroVector,
  NotDecomposable,
  ZeroEigenvalueSupplied,
  InsufficientSamples,
  RankDeficientSystem,
  RegionExhausted,
  Internal,
};

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) {
  throw Error(code, what);
}

const char* errc_name(Errc code) noexcept;

// ===========================================================================
// pencil and characteristic roots
// ===========================================================================

struct Pencil {
  Cx b;
  Cx c;
  double length = 1.0;  // interval is [0, length]
};

/// Scale for "is this coefficient zero" decisions attached to a pencil.
inline double zero_tolerance(const Pencil& p) {
  return 1e-10 * (1.0 + std::norm(p.b) + std::abs(p.c));
}

/// Validates finiteness, length > 0 and b, c not both zero.
Pencil make_pencil(Cx b, Cx c, double length = 1.0);

enum class RootKind { Distinct, Double };

/// Roots of w^2 + b w + c ordered lexicographically by (Re, Im).
/// kind == Double collapses both roots to -b/2.
struct CharacteristicRoots {
  Cx omega1;
  Cx omega2;
  RootKind kind;
};

CharacteristicRoots char_roots(const Pencil& p);

/// The three hypotheses under which one spectrum determines the boundary
/// conditions: distinct roots, nonzero root sum, nonzero root product.
/// Each is decided twice (coefficient form and root form); a mismatch between
/// the two views is an internal error.
struct ConditionReport {
  bool discriminant_nonzero;  // b^2 - 4c != 0
  bool linear_coeff_nonzero;  // b != 0, i.e. w1 + w2 != 0
  bool constant_coeff_nonzero;  // c != 0, i.e. w1 w2 != 0
  bool satisfied;
};

ConditionReport theorem_conditions(const Pencil& p);

// ===========================================================================
// boundary conditions
// ===========================================================================

/// Coefficient rows of the two boundary forms, rank 2 by construction.
struct BoundaryMatrix {
  std::array<std::array<Cx, 4>, 2> rows;

  Cx operator()(int i, int j) const { return rows[i][j]; }
};

inline constexpr double kRankRelTol = 1e-10;  // sigma2/sigma1 above this means rank 2

/// Rejects rows whose 2x4 matrix is numerically rank deficient.
BoundaryMatrix validate_bc(const std::array<std::array<Cx, 4>, 2>& rows);

struct Problem {
  Pencil pencil;
  BoundaryMatrix bc;
};

Problem make_problem(const Pencil& pencil,
                     const std::array<std::array<Cx, 4>, 2>& bc_rows);

// ===========================================================================
// minors, regions, spectra
// ===========================================================================

/// The six 2x2 minors p_jk of a boundary matrix, in the fixed column order
/// (12, 13, 14, 23, 24, 34). Decomposable vectors satisfy
/// p12 p34 - p13 p24 + p14 p23 = 0.
struct PlueckerVector {
  Cx p12, p13, p14, p23, p24, p34;

  std::array<Cx, 6> flat() const { return {p12, p13, p14, p23, p24, p34}; }
  static PlueckerVector from_flat(const std::array<Cx, 6>& v) {
    return {v[0], v[1], v[2], v[3], v[4], v[5]};
  }
  double max_abs() const;
};

/// Closed axis-aligned rectangle in the spectral plane.
struct SearchRegion {
  double re_min, re_max;
  double im_min, im_max;

  double width() const { return re_max - re_min; }
  double height() const { return im_max - im_min; }
  double diameter() const;  // diagonal
  Cx center() const { return {0.5 * (re_min + re_max), 0.5 * (im_min + im_max)}; }
  bool contains(Cx z, double margin = 0.0) const;
  SearchRegion grown(double amount) const;
};

SearchRegion make_region(double re_min, double re_max, double im_min, double im_max);

inline SearchRegion default_search_region() { return {-10.0, 10.0, -40.0, 40.0}; }

struct EigenvalueEntry {
  Cx lambda;
  int multiplicity = 1;
  double residual = 0.0;  // |Delta| at the point over its cancellation-free magnitude
};

/// Nonzero eigenvalues inside a region, sorted lexicographically by
/// (Re, Im). The order of lambda = 0 as a root of Delta is reported separately in
/// zero_order and never enters the list; region is the effective rectangle
/// after any boundary-clearance growth.
struct Spectrum {
  std::vector<EigenvalueEntry> eigenvalues;
  SearchRegion region;
  int zero_order = 0;
};

/// Lexicographic (Re, Im) order used for all deterministic output.
inline bool lex_less(Cx a, Cx b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

}  // namespace qpencil
