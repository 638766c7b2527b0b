#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qpencil/core.hpp"
#include "qpencil/inverse.hpp"
#include "qpencil/roots.hpp"

namespace qpencil {

// The five worked setups ship in two flavors. AsPrinted evaluates the data
// exactly as stated; Corrected evaluates the repaired data that actually
// exhibits the advertised phenomenon. Reports never silently swap one for
// the other.
enum class ExampleVariant { AsPrinted, Corrected };

const char* variant_name(ExampleVariant v);

struct NamedCheck {
  std::string label;
  bool pass = false;
  std::string detail;  // numbers backing the verdict, free form
};

struct ExampleComputed {
  std::vector<std::string> spectrum_labels;
  std::vector<Spectrum> spectra;  // parallel to spectrum_labels
  std::optional<bool> bc_equivalent;
  std::vector<NamedCheck> checks;
};

struct ExampleReport {
  int example_id = 0;
  ExampleVariant variant = ExampleVariant::AsPrinted;
  std::string claim;  // the statement under test, phrased mathematically
  ExampleComputed computed;
  bool claim_holds = false;
  std::string notes;
};

// id in 1..5. Throws InvalidConfig outside that range.
ExampleReport run_example(int id, ExampleVariant variant);

struct TrialConfig {
  std::uint64_t rng_seed = 42;
  int num_trials = 100;
  double coefficient_box = 2.0;  // entries drawn from [-box, box]^2
  SearchRegion region = default_search_region();
  // an equal-spectra trial with fewer eigenvalues than this proves nothing
  int min_eigenvalues = 1;
};

void validate(const TrialConfig& cfg);

enum class TrialOutcome { Pass, Inconclusive, Fail };

const char* trial_outcome_name(TrialOutcome o);

struct TrialRecord {
  int index = 0;
  Pencil pencil;
  bool bc_equivalent = false;
  TrialOutcome outcome = TrialOutcome::Fail;
  std::optional<DistinguishingEigenvalue> witness;
  std::string detail;
};

struct TrialSummary {
  int passes = 0;
  int inconclusives = 0;
  int failures = 0;
  std::vector<TrialRecord> records;
};

// One spectra-vs-equivalence trial. Even indices pair a matrix with a row
// transform of itself and demand identical spectra; odd indices pair two
// independent matrices and search for a distinguishing eigenvalue, growing
// the region up to three times before giving up as Inconclusive. Numerical
// breakdown inside a trial is Inconclusive, never Fail; Fail is reserved
// for an actual spectral discrepancy between equivalent problems.
TrialRecord random_trial(const TrialConfig& cfg, int index);

TrialSummary run_trials(const TrialConfig& cfg);

// Sampling used by the trials, exposed so tests can drive the same
// distributions. All resample until the named constraint is met.
Pencil sample_condition_pencil(std::mt19937_64& rng, double box);
BoundaryMatrix sample_rank2_bc(std::mt19937_64& rng, double box);
std::array<std::array<Cx, 2>, 2> sample_invertible_2x2(std::mt19937_64& rng,
                                                       double box);
BoundaryMatrix row_transform(const std::array<std::array<Cx, 2>, 2>& t,
                             const BoundaryMatrix& bc);

}  // namespace qpencil
