#include <cmath>
#include <random>

#include "checks.hpp"
#include "qpencil/chardet.hpp"
#include "qpencil/harness.hpp"
#include "qpencil/inverse.hpp"
#include "qpencil/pluecker.hpp"

using namespace qpencil;
using qpencil::test::expect_error;

namespace {

Spectrum spectrum_of(Cx first, std::initializer_list<Cx> rest = {}) {
  Spectrum s;
  s.region = default_search_region();
  s.eigenvalues.push_back({first, 1, 0.0});
  for (Cx z : rest) s.eigenvalues.push_back({z, 1, 0.0});
  return s;
}

}  // namespace

TEST_SUITE_BEGIN("inverse");

TEST_CASE("constraint_matrix shapes and rejections") {
  const Pencil p = make_pencil(-3.0, 2.0);
  std::vector<EigenvalueEntry> eigs = {{Cx(0.2, 1.0), 1, 0.0},
                                       {Cx(-0.5, 0.3), 2, 0.0}};
  const auto rows = constraint_matrix(p, eigs);
  CHECK(rows.size() == 3);  // one row per multiplicity
  for (const auto& r : rows) {
    double mx = 0.0;
    for (const Cx& v : r) mx = std::max(mx, std::abs(v));
    CHECK(mx == doctest::Approx(1.0));  // rows are unit-max scaled
  }

  expect_error(Errc::ZeroEigenvalueSupplied, [&] {
    constraint_matrix(p, {{Cx(0.0), 1, 0.0}});
  });
  expect_error(Errc::DoubleRootRegime, [&] {
    constraint_matrix(make_pencil(-2.0, 1.0), eigs);
  });
}

TEST_CASE("recovery config validation") {
  RecoveryConfig cfg;
  cfg.nullspace_rel_tol = -1.0;
  expect_error(Errc::InvalidConfig, [&] { validate(cfg); });
  validate(RecoveryConfig{});
}

TEST_CASE("a generic spectrum pins its condition set") {
  const Pencil p = make_pencil(1.0, -1.0);
  REQUIRE(theorem_conditions(p).satisfied);
  const BoundaryMatrix bc =
      validate_bc({{{1.0, 2.0, 0.0, 1.0}, {0.0, 1.0, 1.0, -1.0}}});
  const Spectrum s =
      find_eigenvalues(Problem{p, bc}, default_search_region());
  REQUIRE(s.eigenvalues.size() >= 8);

  const RecoveryOutcome out = recover_from_spectrum(p, s.eigenvalues);
  CHECK(out.status == RecoveryStatus::Unique);
  CHECK(out.nullspace_dim == 1);
  REQUIRE(out.ray.has_value());
  CHECK(proportional(*out.ray, minors(bc), 1e-6));
  REQUIRE(out.reconstructed.has_value());
  CHECK(equivalent(*out.reconstructed, bc));
}

TEST_CASE("a vanishing linear coefficient leaves a family") {
  // b = 0 collapses two basis pairs, so one spectrum fits many condition sets
  const Pencil p = make_pencil(0.0, -1.0);
  const Problem pr{
      p, validate_bc({{{1.0, 0.0, 2.0, 0.0}, {0.0, 1.0, 0.0, 0.0}}})};
  const Spectrum s = find_eigenvalues(pr, make_region(-1, 1, -30, 30));
  REQUIRE(s.eigenvalues.size() == 20);
  const RecoveryOutcome out = recover_from_spectrum(p, s.eigenvalues);
  CHECK(out.status == RecoveryStatus::NonUnique);
  CHECK(out.nullspace_dim == 3);
  CHECK(!out.ray.has_value());
}

TEST_CASE("a vanishing constant coefficient leaves a family") {
  // c = 0: on the Dirichlet spectrum of the pencil (-1, 0) the constraint
  // rows lose rank and five directions remain
  const Pencil p = make_pencil(-1.0, 0.0);
  const Problem pr{
      p, validate_bc({{{1.0, 0.0, 0.0, 0.0}, {0.0, 1.0, 0.0, 0.0}}})};
  const Spectrum s = find_eigenvalues(pr, make_region(-1, 1, -20, 20));
  REQUIRE(s.eigenvalues.size() == 6);
  const RecoveryOutcome out = recover_from_spectrum(p, s.eigenvalues);
  CHECK(out.status == RecoveryStatus::NonUnique);
  CHECK(out.nullspace_dim == 5);
}

TEST_CASE("fewer than five constraints is underdetermined") {
  const Pencil p = make_pencil(1.0, -1.0);
  std::vector<EigenvalueEntry> eigs;
  for (int k = 1; k <= 4; ++k) eigs.push_back({Cx(0.1 * k, 1.0 + k), 1, 0.0});
  const RecoveryOutcome out = recover_from_spectrum(p, eigs);
  CHECK(out.status == RecoveryStatus::Underdetermined);
}

TEST_CASE("fabricated eigenvalues are flagged as inconsistent") {
  const Pencil p = make_pencil(1.0, -1.0);
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::vector<EigenvalueEntry> eigs;
  for (int k = 0; k < 10; ++k) eigs.push_back({Cx(u(rng), u(rng)), 1, 0.0});
  const RecoveryOutcome out = recover_from_spectrum(p, eigs);
  CHECK(out.status == RecoveryStatus::Inconsistent);
  CHECK(out.nullspace_dim == 0);
}

TEST_CASE("fit_from_delta_samples recovers the actual minor values") {
  const Pencil p = make_pencil(-3.0, 2.0);
  const BoundaryMatrix bc =
      validate_bc({{{1.0, 0.5, 2.0, 0.0}, {0.0, 1.0, -1.0, 1.0}}});
  const Problem pr{p, bc};
  std::vector<std::pair<Cx, Cx>> samples;
  for (int k = 0; k < 12; ++k) {
    const Cx lam{-1.0 + 0.17 * k, 0.4 + 0.13 * k};
    samples.push_back({lam, delta_direct(pr, lam)});
  }
  const RecoveryOutcome out = fit_from_delta_samples(p, samples);
  CHECK(out.status == RecoveryStatus::Unique);
  CHECK(out.residual <= 1e-9);
  REQUIRE(out.ray.has_value());
  CHECK(proportional(*out.ray, minors(bc), 1e-9));
  REQUIRE(out.reconstructed.has_value());
  CHECK(equivalent(*out.reconstructed, bc));

  expect_error(Errc::InsufficientSamples, [&] {
    fit_from_delta_samples(p, {samples.begin(), samples.begin() + 5});
  });
}

TEST_CASE("spectrum_mismatch pairs greedily within the radius") {
  const Spectrum empty{{}, default_search_region(), 0};
  CHECK(!spectrum_mismatch(empty, empty, 1e-7));

  const Spectrum one = spectrum_of(Cx(1.0, 0.0));
  const auto only_first = spectrum_mismatch(one, empty, 1e-7);
  REQUIRE(only_first.has_value());
  CHECK(only_first->side == WitnessSide::OnlyInFirst);
  CHECK(only_first->lambda == Cx(1.0, 0.0));

  const auto only_second = spectrum_mismatch(empty, one, 1e-7);
  REQUIRE(only_second.has_value());
  CHECK(only_second->side == WitnessSide::OnlyInSecond);

  // roundoff-level displacement pairs up
  const Spectrum near = spectrum_of(Cx(1.0, 1e-9));
  CHECK(!spectrum_mismatch(one, near, 1e-7));

  // axis noise permutes the lexicographic order; pairing must not care
  Spectrum a = spectrum_of(Cx(1e-16, 1.0), {Cx(-1e-16, -1.0)});
  Spectrum b = spectrum_of(Cx(-1e-16, 1.0), {Cx(1e-16, -1.0)});
  CHECK(!spectrum_mismatch(a, b, 1e-7));

  Spectrum mult = one;
  mult.eigenvalues[0].multiplicity = 2;
  const auto mm = spectrum_mismatch(one, mult, 1e-7);
  REQUIRE(mm.has_value());
  CHECK(mm->side == WitnessSide::MultiplicityMismatch);
  CHECK(mm->multiplicity_first == 1);
  CHECK(mm->multiplicity_second == 2);

  expect_error(Errc::InvalidConfig, [&] { spectrum_mismatch(one, one, 0.0); });
}

TEST_CASE("distinguishing_eigenvalue reports the least discrepancy") {
  // the double-root pencil with spectra {-1} and {-3/2}
  const Pencil p = make_pencil(-2.0, 1.0);
  const Problem first{
      p, validate_bc({{{1.0, 0.0, 0.0, 0.0}, {0.0, 0.0, 0.0, 1.0}}})};
  const Problem second{
      p, validate_bc({{{1.0, 0.0, 0.0, 0.0}, {0.0, 1.0, 0.0, 2.0}}})};
  const auto w =
      distinguishing_eigenvalue(first, second, make_region(-3, 3, -3, 3));
  REQUIRE(w.has_value());
  CHECK(std::abs(w->lambda - Cx(-1.5, 0.0)) <= 1e-9);
  CHECK(w->side == WitnessSide::OnlyInSecond);

  CHECK(!distinguishing_eigenvalue(first, first, make_region(-3, 3, -3, 3))
             .has_value());
}

TEST_SUITE_END();
