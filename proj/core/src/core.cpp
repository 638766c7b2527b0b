#include "qpencil/core.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace qpencil {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidPencil: return "InvalidPencil";
    case Errc::InvalidRegion: return "InvalidRegion";
    case Errc::InvalidConfig: return "InvalidConfig";
    case Errc::RankDeficient: return "RankDeficient";
    case Errc::Overflow: return "Overflow";
    case Errc::DoubleRootRegime: return "DoubleRootRegime";
    case Errc::OrderUnsupported: return "OrderUnsupported";
    case Errc::BoundaryZero: return "BoundaryZero";
    case Errc::NonConvergent: return "NonConvergent";
    case Errc::NewtonDiverged: return "NewtonDiverged";
    case Errc::MultiplicityCapExceeded: return "MultiplicityCapExceeded";
    case Errc::ZeroVector: return "ZeroVector";
    case Errc::NotDecomposable: return "NotDecomposable";
    case Errc::ZeroEigenvalueSupplied: return "ZeroEigenvalueSupplied";
    case Errc::InsufficientSamples: return "InsufficientSamples";
    case Errc::RankDeficientSystem: return "RankDeficientSystem";
    case Errc::RegionExhausted: return "RegionExhausted";
    case Errc::Internal: return "Internal";
  }
  return "Unknown";
}

namespace {

bool finite(Cx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

Pencil make_pencil(Cx b, Cx c, double length) {
  if (!finite(b) || !finite(c) || !std::isfinite(length)) {
    fail(Errc::InvalidPencil, "pencil coefficients must be finite");
  }
  if (length <= 0.0) {
    fail(Errc::InvalidPencil, "interval length must be positive");
  }
  Pencil p{b, c, length};
  const double tol = zero_tolerance(p);
  if (std::abs(b) <= tol && std::abs(c) <= tol) {
    fail(Errc::InvalidPencil, "b and c must not both vanish");
  }
  return p;
}

CharacteristicRoots char_roots(const Pencil& p) {
  const Cx disc = p.b * p.b - 4.0 * p.c;
  if (std::abs(disc) <= zero_tolerance(p)) {
    const Cx w = -p.b / 2.0;
    return {w, w, RootKind::Double};
  }
  const Cx s = std::sqrt(disc);
  // branch chosen so the subtraction -b -/+ s never cancels
  const Cx t = (std::real(std::conj(p.b) * s) >= 0.0) ? Cx(-p.b - s) / 2.0
                                                      : Cx(-p.b + s) / 2.0;
  Cx w1 = t;
  Cx w2 = (t != Cx(0.0)) ? p.c / t : -p.b - t;
  if (lex_less(w2, w1)) std::swap(w1, w2);
  return {w1, w2, RootKind::Distinct};
}

ConditionReport theorem_conditions(const Pencil& p) {
  const double tol = zero_tolerance(p);
  const Cx disc = p.b * p.b - 4.0 * p.c;
  ConditionReport rep{};
  rep.discriminant_nonzero = std::abs(disc) > tol;
  rep.linear_coeff_nonzero = std::abs(p.b) > tol;
  rep.constant_coeff_nonzero = std::abs(p.c) > tol;

  // same predicates read off the roots; both views must agree
  const CharacteristicRoots r = char_roots(p);
  const Cx diff = r.omega1 - r.omega2;
  const bool distinct_by_roots = std::abs(diff * diff) > tol;
  const bool sum_nonzero = std::abs(r.omega1 + r.omega2) > tol;
  const bool prod_nonzero = std::abs(r.omega1 * r.omega2) > tol;
  if (distinct_by_roots != rep.discriminant_nonzero ||
      sum_nonzero != rep.linear_coeff_nonzero ||
      prod_nonzero != rep.constant_coeff_nonzero) {
    fail(Errc::Internal, "coefficient and root views of the conditions disagree");
  }

  rep.satisfied = rep.discriminant_nonzero && rep.linear_coeff_nonzero &&
                  rep.constant_coeff_nonzero;
  return rep;
}

BoundaryMatrix validate_bc(const std::array<std::array<Cx, 4>, 2>& rows) {
  Eigen::Matrix<Cx, 2, 4> m;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (!finite(rows[i][j])) {
        fail(Errc::RankDeficient, "boundary coefficients must be finite");
      }
      m(i, j) = rows[i][j];
    }
  }
  Eigen::JacobiSVD<Eigen::Matrix<Cx, 2, 4>> svd(m);
  const auto& sv = svd.singularValues();
  if (!(sv(0) > 0.0) || sv(1) <= kRankRelTol * sv(0)) {
    fail(Errc::RankDeficient, "boundary form rows are numerically dependent");
  }
  return BoundaryMatrix{rows};
}

Problem make_problem(const Pencil& pencil,
                     const std::array<std::array<Cx, 4>, 2>& bc_rows) {
  Pencil p = make_pencil(pencil.b, pencil.c, pencil.length);
  return Problem{p, validate_bc(bc_rows)};
}

double PlueckerVector::max_abs() const {
  double m = 0.0;
  for (const Cx& v : flat()) m = std::max(m, std::abs(v));
  return m;
}

double SearchRegion::diameter() const { return std::hypot(width(), height()); }

bool SearchRegion::contains(Cx z, double margin) const {
  return z.real() >= re_min - margin && z.real() <= re_max + margin &&
         z.imag() >= im_min - margin && z.imag() <= im_max + margin;
}

SearchRegion SearchRegion::grown(double amount) const {
  return {re_min - amount, re_max + amount, im_min - amount, im_max + amount};
}

SearchRegion make_region(double re_min, double re_max, double im_min, double im_max) {
  if (!std::isfinite(re_min) || !std::isfinite(re_max) || !std::isfinite(im_min) ||
      !std::isfinite(im_max) || re_min >= re_max || im_min >= im_max) {
    fail(Errc::InvalidRegion, "region must be a nondegenerate finite rectangle");
  }
  return {re_min, re_max, im_min, im_max};
}

}  // namespace qpencil
