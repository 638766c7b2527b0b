#include "qpencil/inverse.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

#include "qpencil/chardet.hpp"
#include "qpencil/pluecker.hpp"

namespace qpencil {
namespace {

constexpr double kZeroSolutionTol = 1e-12;

PlueckerVector to_vector(const std::array<Cx, 6>& a) {
  return PlueckerVector::from_flat(a);
}

void attach_ray(RecoveryOutcome& out, const std::array<Cx, 6>& flat,
                const RecoveryConfig& cfg) {
  out.ray = to_vector(flat);
  const double mx = out.ray->max_abs();
  if (std::abs(relation_residual(*out.ray)) <=
      cfg.decomposability_tol * mx * mx) {
    out.reconstructed = reconstruct_bc(*out.ray);
  }
}

}  // namespace

const char* recovery_status_name(RecoveryStatus s) {
  switch (s) {
    case RecoveryStatus::Unique:
      return "Unique";
    case RecoveryStatus::NonUnique:
      return "NonUnique";
    case RecoveryStatus::Underdetermined:
      return "Underdetermined";
    case RecoveryStatus::Inconsistent:
      return "Inconsistent";
  }
  return "Unknown";
}

void validate(const RecoveryConfig& cfg) {
  const bool positives =
      cfg.nullspace_rel_tol > 0.0 && cfg.inconsistency_rel_tol > 0.0 &&
      cfg.zero_exclusion_radius > 0.0 && cfg.decomposability_tol > 0.0;
  if (!positives)
    fail(Errc::InvalidConfig, "recovery tolerances must be positive");
  if (!(cfg.nullspace_rel_tol < cfg.inconsistency_rel_tol))
    fail(Errc::InvalidConfig,
         "nullspace cutoff must sit below the inconsistency cutoff");
}

std::vector<std::array<Cx, 6>> constraint_matrix(
    const Pencil& pencil, const std::vector<EigenvalueEntry>& eigenvalues,
    const RecoveryConfig& cfg) {
  validate(cfg);
  const Pencil p = make_pencil(pencil.b, pencil.c, pencil.length);
  if (char_roots(p).kind == RootKind::Double)
    fail(Errc::DoubleRootRegime,
         "constraint rows need the six-function expansion");

  std::vector<std::array<Cx, 6>> rows;
  for (const EigenvalueEntry& e : eigenvalues) {
    if (e.multiplicity < 1)
      fail(Errc::InvalidConfig, "eigenvalue multiplicity must be >= 1");
    if (std::abs(e.lambda) <= cfg.zero_exclusion_radius)
      fail(Errc::ZeroEigenvalueSupplied,
           "lambda = 0 carries no minor information");
    for (int d = 0; d < e.multiplicity; ++d) {
      std::array<Cx, 6> row = basis_derivative(p, e.lambda, d);
      double mx = 0.0;
      for (const Cx& v : row) mx = std::max(mx, std::abs(v));
      if (mx == 0.0)
        fail(Errc::Internal, "constraint row vanished identically");
      for (Cx& v : row) v /= mx;
      rows.push_back(row);
    }
  }
  if (rows.empty())
    fail(Errc::InsufficientSamples, "at least one eigenvalue is required");
  return rows;
}

RecoveryOutcome recover_from_spectrum(
    const Pencil& pencil, const std::vector<EigenvalueEntry>& eigenvalues,
    const RecoveryConfig& cfg) {
  const auto rows = constraint_matrix(pencil, eigenvalues, cfg);
  const int n = int(rows.size());
  Eigen::MatrixXcd a(n, 6);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < 6; ++j) a(i, j) = rows[size_t(i)][size_t(j)];

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  RecoveryOutcome out;
  for (int i = 0; i < 6; ++i)
    out.singular_values[size_t(i)] = i < sv.size() ? sv(i) : 0.0;
  const double smax = sv(0);
  if (smax == 0.0) fail(Errc::Internal, "scaled constraint matrix vanished");

  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cfg.nullspace_rel_tol * smax) ++rank;
  out.nullspace_dim = 6 - rank;

  if (n < 5) {
    out.status = RecoveryStatus::Underdetermined;
    return out;
  }
  if (out.nullspace_dim == 0) {
    // at least 6 rows here, since 5 rows leave a nullspace by dimension
    out.status = RecoveryStatus::Inconsistent;
    return out;
  }
  if (out.nullspace_dim >= 2) {
    out.status = RecoveryStatus::NonUnique;
    return out;
  }

  out.status = RecoveryStatus::Unique;
  Eigen::VectorXcd ray = svd.matrixV().col(5);
  int piv = 0;
  for (int i = 1; i < 6; ++i)
    if (std::abs(ray(i)) > std::abs(ray(piv))) piv = i;
  ray /= ray(piv);  // pivot coordinate exactly 1, fixing the global phase
  std::array<Cx, 6> flat;
  for (int i = 0; i < 6; ++i) flat[size_t(i)] = ray(i);
  attach_ray(out, flat, cfg);
  return out;
}

RecoveryOutcome fit_from_delta_samples(
    const Pencil& pencil, const std::vector<std::pair<Cx, Cx>>& samples,
    const RecoveryConfig& cfg) {
  validate(cfg);
  const Pencil p = make_pencil(pencil.b, pencil.c, pencil.length);
  if (char_roots(p).kind == RootKind::Double)
    fail(Errc::DoubleRootRegime, "fit needs the six-function expansion");
  const int n = int(samples.size());
  if (n < 6)
    fail(Errc::InsufficientSamples, "six minors need at least six samples");

  Eigen::MatrixXcd a(n, 6);
  Eigen::VectorXcd rhs(n);
  for (int i = 0; i < n; ++i) {
    const auto row = basis_functions(p, samples[size_t(i)].first).flat();
    for (int j = 0; j < 6; ++j) a(i, j) = row[size_t(j)];
    rhs(i) = samples[size_t(i)].second;
  }

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
      a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  RecoveryOutcome out;
  for (int i = 0; i < 6; ++i) out.singular_values[size_t(i)] = sv(i);
  const double smax = sv(0);
  if (smax == 0.0)
    fail(Errc::RankDeficientSystem, "basis matrix vanishes on these samples");

  int rank = 0;
  for (int i = 0; i < 6; ++i)
    if (sv(i) > cfg.nullspace_rel_tol * smax) ++rank;
  out.nullspace_dim = 6 - rank;

  // minimum-norm least squares through the truncated SVD
  const Eigen::VectorXcd proj = svd.matrixU().adjoint() * rhs;
  Eigen::VectorXcd sol = Eigen::VectorXcd::Zero(6);
  for (int i = 0; i < rank; ++i)
    sol += (proj(i) / sv(i)) * svd.matrixV().col(i);

  const double rhs_norm = rhs.norm();
  const double misfit = (a * sol - rhs).norm();
  out.residual = rhs_norm > 0.0 ? misfit / rhs_norm : misfit;

  double sol_max = 0.0, rhs_max = 0.0;
  for (int i = 0; i < 6; ++i) sol_max = std::max(sol_max, std::abs(sol(i)));
  for (int i = 0; i < n; ++i) rhs_max = std::max(rhs_max, std::abs(rhs(i)));
  if (sol_max <= kZeroSolutionTol * (1.0 + rhs_max)) {
    // nothing but the zero vector fits, and no boundary matrix has rank-2
    // rows with all minors zero
    out.status = RecoveryStatus::Inconsistent;
    return out;
  }

  std::array<Cx, 6> flat;
  for (int i = 0; i < 6; ++i) flat[size_t(i)] = sol(i);
  out.status = out.nullspace_dim == 0 ? RecoveryStatus::Unique
                                      : RecoveryStatus::NonUnique;
  attach_ray(out, flat, cfg);
  return out;
}

std::optional<DistinguishingEigenvalue> spectrum_mismatch(
    const Spectrum& first, const Spectrum& second, double pairing_radius) {
  if (!(pairing_radius > 0.0) || !std::isfinite(pairing_radius))
    fail(Errc::InvalidConfig, "pairing radius must be positive");
  const auto& ea = first.eigenvalues;
  const auto& eb = second.eigenvalues;

  // greedy nearest pairing; the sort order itself is unreliable on axes,
  // where roundoff in the real part of a conjugate pair permutes entries
  std::vector<bool> used(eb.size(), false);
  std::vector<DistinguishingEigenvalue> issues;
  for (const EigenvalueEntry& a : ea) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t pick = eb.size();
    for (std::size_t j = 0; j < eb.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(a.lambda - eb[j].lambda);
      if (d < best) {
        best = d;
        pick = j;
      }
    }
    if (pick == eb.size() || best > pairing_radius) {
      issues.push_back({a.lambda, WitnessSide::OnlyInFirst, a.multiplicity, 0});
      continue;
    }
    used[pick] = true;
    if (a.multiplicity != eb[pick].multiplicity)
      issues.push_back({a.lambda, WitnessSide::MultiplicityMismatch,
                        a.multiplicity, eb[pick].multiplicity});
  }
  for (std::size_t j = 0; j < eb.size(); ++j)
    if (!used[j])
      issues.push_back(
          {eb[j].lambda, WitnessSide::OnlyInSecond, 0, eb[j].multiplicity});

  if (issues.empty()) return std::nullopt;
  return *std::min_element(issues.begin(), issues.end(),
                           [](const DistinguishingEigenvalue& x,
                              const DistinguishingEigenvalue& y) {
                             return lex_less(x.lambda, y.lambda);
                           });
}

std::optional<DistinguishingEigenvalue> distinguishing_eigenvalue(
    const Problem& first, const Problem& second, const SearchRegion& region,
    const RootFinderConfig& cfg) {
  const Spectrum sa = find_eigenvalues(first, region, cfg);
  const Spectrum sb = find_eigenvalues(second, region, cfg);
  return spectrum_mismatch(sa, sb, cfg.dedup_radius);
}

}  // namespace qpencil
