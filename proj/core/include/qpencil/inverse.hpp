#pragma once
/*
 * Inverse direction: rebuild the boundary-minor ray from one spectrum, or
 * from sampled determinant values. Each eigenvalue of multiplicity m
 * contributes m linear constraints (value and derivatives of the minor
 * expansion), and the SVD nullspace of the stacked system decides between a
 * unique ray, a family, or contradictory data.
 */

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "qpencil/core.hpp"
#include "qpencil/roots.hpp"

namespace qpencil {

enum class RecoveryStatus { Unique, NonUnique, Underdetermined, Inconsistent };

const char* recovery_status_name(RecoveryStatus s);

struct RecoveryConfig {
  double nullspace_rel_tol = 1e-8;      // sigma below this is nullspace
  double inconsistency_rel_tol = 1e-4;  // sigma_min above this is a conflict
  double zero_exclusion_radius = 1e-8;
  double decomposability_tol = 1e-8;
};

void validate(const RecoveryConfig& cfg);

struct RecoveryOutcome {
  RecoveryStatus status = RecoveryStatus::Underdetermined;
  // candidate minor vector: the null ray when Unique, the minimum-norm
  // least-squares solution on the fit path (also present there for NonUnique)
  std::optional<PlueckerVector> ray;
  int nullspace_dim = 0;
  std::optional<BoundaryMatrix> reconstructed;  // when ray is decomposable
  std::array<double, 6> singular_values{};      // descending, zero-padded
  double residual = 0.0;                        // fit path: relative misfit
};

/// One row per constraint: (phi_jk^(r)(lambda_n))_{jk} for r = 0..m-1, each
/// row scaled to unit max magnitude. Distinct regime only; zero eigenvalues
/// are rejected.
std::vector<std::array<Cx, 6>> constraint_matrix(
    const Pencil& pencil, const std::vector<EigenvalueEntry>& eigenvalues,
    const RecoveryConfig& cfg = {});

/// Homogeneous recovery: the ray is determined by the SVD nullspace of the
/// constraint matrix. Fewer than 5 rows is Underdetermined by fiat; an empty
/// nullspace with at least 6 rows means the data fit no boundary matrix.
RecoveryOutcome recover_from_spectrum(
    const Pencil& pencil, const std::vector<EigenvalueEntry>& eigenvalues,
    const RecoveryConfig& cfg = {});

/// Inhomogeneous recovery from (lambda, Delta(lambda)) pairs: least squares
/// for the actual minor values, not just the ray. Needs >= 6 samples.
RecoveryOutcome fit_from_delta_samples(
    const Pencil& pencil, const std::vector<std::pair<Cx, Cx>>& samples,
    const RecoveryConfig& cfg = {});

enum class WitnessSide { OnlyInFirst, OnlyInSecond, MultiplicityMismatch };

struct DistinguishingEigenvalue {
  Cx lambda;
  WitnessSide side = WitnessSide::OnlyInFirst;
  int multiplicity_first = 0;
  int multiplicity_second = 0;
};

/// Compares two computed spectra by greedy nearest pairing within
/// pairing_radius and reports the lexicographically least discrepancy, or
/// nothing when the spectra agree eigenvalue for eigenvalue. zero_order is
/// not compared.
std::optional<DistinguishingEigenvalue> spectrum_mismatch(
    const Spectrum& first, const Spectrum& second, double pairing_radius);

/// First nonzero eigenvalue (lexicographic) where the two spectra differ
/// inside the region, or nothing when they agree eigenvalue for eigenvalue.
std::optional<DistinguishingEigenvalue> distinguishing_eigenvalue(
    const Problem& first, const Problem& second, const SearchRegion& region,
    const RootFinderConfig& cfg = {});

}  // namespace qpencil
