#include <random>
#include <string>

#include "checks.hpp"
#include "qpencil/harness.hpp"
#include "qpencil/pluecker.hpp"

using namespace qpencil;
using qpencil::test::expect_error;

TEST_SUITE_BEGIN("harness");

TEST_CASE("run_example validates the id") {
  expect_error(Errc::InvalidConfig,
               [] { run_example(0, ExampleVariant::AsPrinted); });
  expect_error(Errc::InvalidConfig,
               [] { run_example(6, ExampleVariant::Corrected); });
}

TEST_CASE("printed claims hold exactly where the source got it right") {
  const bool expected[5] = {false, true, false, false, false};
  for (int id = 1; id <= 5; ++id) {
    const ExampleReport rep = run_example(id, ExampleVariant::AsPrinted);
    CHECK(rep.example_id == id);
    CHECK(rep.variant == ExampleVariant::AsPrinted);
    CHECK_MESSAGE(rep.claim_holds == expected[id - 1], "example " << id);
    CHECK(!rep.claim.empty());
    CHECK(!rep.computed.checks.empty());
    CHECK(rep.computed.spectra.size() == rep.computed.spectrum_labels.size());
  }
}

TEST_CASE("corrected variants all exhibit the advertised phenomenon") {
  for (int id = 1; id <= 5; ++id) {
    const ExampleReport rep = run_example(id, ExampleVariant::Corrected);
    CHECK_MESSAGE(rep.claim_holds, "example " << id);
    for (const NamedCheck& c : rep.computed.checks)
      CHECK_MESSAGE(c.pass, "example " << id << ": " << c.label << " ("
                                       << c.detail << ")");
  }
}

TEST_CASE("example 1 corrected refuses constraint recovery") {
  const ExampleReport rep = run_example(1, ExampleVariant::Corrected);
  bool found = false;
  for (const NamedCheck& c : rep.computed.checks)
    if (c.label.find("refuses the double regime") != std::string::npos) {
      found = true;
      CHECK(c.pass);
    }
  CHECK(found);
  REQUIRE(rep.computed.bc_equivalent.has_value());
  CHECK(!*rep.computed.bc_equivalent);
}

TEST_CASE("example 4 reports the origin as a double zero") {
  const ExampleReport rep = run_example(4, ExampleVariant::Corrected);
  REQUIRE(rep.computed.spectra.size() == 2);
  for (const Spectrum& s : rep.computed.spectra) {
    CHECK(s.zero_order == 2);
    CHECK(s.eigenvalues.size() == 7);
  }
}

TEST_CASE("example 5 keeps one condition set across both pencils") {
  const ExampleReport rep = run_example(5, ExampleVariant::Corrected);
  REQUIRE(rep.computed.bc_equivalent.has_value());
  CHECK(*rep.computed.bc_equivalent);
}

TEST_CASE("variant names") {
  CHECK(std::string(variant_name(ExampleVariant::AsPrinted)) == "printed");
  CHECK(std::string(variant_name(ExampleVariant::Corrected)) == "corrected");
}

TEST_CASE("trial config validation") {
  TrialConfig cfg;
  cfg.num_trials = 0;
  expect_error(Errc::InvalidConfig, [&] { validate(cfg); });
  cfg = {};
  cfg.coefficient_box = 0.0;
  expect_error(Errc::InvalidConfig, [&] { validate(cfg); });
  validate(TrialConfig{});
}

TEST_CASE("trials are deterministic and never fail spuriously") {
  TrialConfig cfg;
  cfg.num_trials = 8;
  const TrialSummary a = run_trials(cfg);
  const TrialSummary b = run_trials(cfg);
  CHECK(a.failures == 0);
  CHECK(a.passes + a.inconclusives + a.failures == cfg.num_trials);
  REQUIRE(a.records.size() == b.records.size());
  for (size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].outcome == b.records[i].outcome);
    CHECK(a.records[i].detail == b.records[i].detail);
    CHECK(a.records[i].pencil.b == b.records[i].pencil.b);
    // even trials transform rows, odd trials draw independents
    CHECK(a.records[i].bc_equivalent == (i % 2 == 0));
  }
}

TEST_CASE("samplers meet their stated constraints") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 20; ++t) {
    const Pencil p = sample_condition_pencil(rng, 2.0);
    CHECK(theorem_conditions(p).satisfied);
    const BoundaryMatrix bc = sample_rank2_bc(rng, 2.0);
    const auto m = sample_invertible_2x2(rng, 2.0);
    CHECK(equivalent(bc, row_transform(m, bc)));
  }
}

TEST_SUITE_END();
