#include <cmath>
#include <limits>
#include <random>

#include "checks.hpp"
#include "qpencil/core.hpp"

using namespace qpencil;
using qpencil::test::close;
using qpencil::test::expect_error;

TEST_SUITE_BEGIN("core");

TEST_CASE("make_pencil validates its inputs") {
  expect_error(Errc::InvalidPencil, [] { make_pencil(0.0, 0.0); });
  expect_error(Errc::InvalidPencil, [] { make_pencil(1.0, 1.0, 0.0); });
  expect_error(Errc::InvalidPencil, [] { make_pencil(1.0, 1.0, -2.0); });
  const double nan = std::nan("");
  expect_error(Errc::InvalidPencil, [&] { make_pencil(Cx(nan, 0.0), 1.0); });
  expect_error(Errc::InvalidPencil,
               [&] { make_pencil(1.0, 1.0, std::numeric_limits<double>::infinity()); });

  const Pencil p = make_pencil(Cx(-3.0, 0.5), 2.0, 0.25);
  CHECK(p.b == Cx(-3.0, 0.5));
  CHECK(p.c == Cx(2.0));
  CHECK(p.length == 0.25);
  CHECK(make_pencil(1.0, 1.0).length == 1.0);
}

TEST_CASE("zero_tolerance scales with the coefficients") {
  CHECK(zero_tolerance(make_pencil(1.0, 0.0)) > 0.0);
  CHECK(zero_tolerance(make_pencil(1e6, 1e6)) >
        zero_tolerance(make_pencil(1.0, 1.0)));
}

TEST_CASE("char_roots solves the reduced quadratic") {
  const auto r = char_roots(make_pencil(-3.0, 2.0));
  CHECK(r.kind == RootKind::Distinct);
  CHECK(close(r.omega1, Cx(1.0), 1e-14));
  CHECK(close(r.omega2, Cx(2.0), 1e-14));

  const auto s = char_roots(make_pencil(0.0, -1.0));
  CHECK(close(s.omega1, Cx(-1.0), 1e-14));
  CHECK(close(s.omega2, Cx(1.0), 1e-14));

  const auto d = char_roots(make_pencil(-2.0, 1.0));
  CHECK(d.kind == RootKind::Double);
  CHECK(close(d.omega1, Cx(1.0), 1e-14));
  CHECK(d.omega1 == d.omega2);
}

TEST_CASE("char_roots satisfies Vieta and the lexicographic order") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const Cx b{u(rng), u(rng)};
    const Cx c{u(rng), u(rng)};
    if (std::abs(b) + std::abs(c) < 1e-3) continue;
    const auto r = char_roots(make_pencil(b, c));
    const double tol = 1e-12 * (1.0 + std::abs(b) + std::abs(c));
    CHECK(std::abs(r.omega1 + r.omega2 + b) <= tol);
    CHECK(std::abs(r.omega1 * r.omega2 - c) <= tol);
    CHECK(!lex_less(r.omega2, r.omega1));
  }
}

TEST_CASE("theorem_conditions flags each degeneracy") {
  const auto good = theorem_conditions(make_pencil(-3.0, 2.0));
  CHECK(good.discriminant_nonzero);
  CHECK(good.linear_coeff_nonzero);
  CHECK(good.constant_coeff_nonzero);
  CHECK(good.satisfied);

  CHECK(!theorem_conditions(make_pencil(0.0, -1.0)).linear_coeff_nonzero);
  CHECK(!theorem_conditions(make_pencil(0.0, -1.0)).satisfied);
  CHECK(!theorem_conditions(make_pencil(-1.0, 0.0)).constant_coeff_nonzero);
  CHECK(!theorem_conditions(make_pencil(-2.0, 1.0)).discriminant_nonzero);
}

TEST_CASE("validate_bc accepts rank 2 and rejects dependent rows") {
  const BoundaryMatrix ok = validate_bc({{{1.0, 0.0, 2.0, 0.0},
                                          {0.0, 1.0, 0.0, 0.0}}});
  CHECK(ok(0, 2) == Cx(2.0));
  CHECK(ok(1, 1) == Cx(1.0));

  expect_error(Errc::RankDeficient, [] {
    validate_bc({{{1.0, 2.0, 3.0, 4.0}, {2.0, 4.0, 6.0, 8.0}}});
  });
  expect_error(Errc::RankDeficient, [] {
    validate_bc({{{1.0, 2.0, 3.0, 4.0}, {0.0, 0.0, 0.0, 0.0}}});
  });
  expect_error(Errc::RankDeficient, [] {
    const Cx i{0.0, 1.0};
    validate_bc({{{i, 2.0 * i, 0.0, 0.0}, {1.0, 2.0, 0.0, 0.0}}});
  });
}

TEST_CASE("PlueckerVector round trips through flat") {
  const PlueckerVector p{1.0, Cx(0.0, 2.0), -3.0, 4.0, Cx(5.0, -1.0), 6.0};
  const auto f = p.flat();
  const PlueckerVector q = PlueckerVector::from_flat(f);
  for (size_t i = 0; i < 6; ++i) CHECK(q.flat()[i] == f[i]);
  CHECK(p.max_abs() == doctest::Approx(6.0));
}

TEST_CASE("make_region validates bounds") {
  expect_error(Errc::InvalidRegion, [] { make_region(1.0, -1.0, 0.0, 1.0); });
  expect_error(Errc::InvalidRegion, [] { make_region(0.0, 0.0, 0.0, 1.0); });
  expect_error(Errc::InvalidRegion,
               [] { make_region(0.0, std::nan(""), 0.0, 1.0); });
  const SearchRegion r = make_region(-1.0, 2.0, -4.0, 0.0);
  CHECK(r.width() == 3.0);
  CHECK(r.height() == 4.0);
  CHECK(r.diameter() == doctest::Approx(5.0));
  CHECK(r.center() == Cx(0.5, -2.0));
}

TEST_CASE("SearchRegion::contains treats the margin as growth") {
  const SearchRegion r = make_region(0.0, 1.0, 0.0, 1.0);
  CHECK(r.contains({0.5, 0.5}));
  CHECK(r.contains({1.0, 1.0}));  // closed rectangle
  CHECK(!r.contains({1.05, 0.5}));
  CHECK(r.contains({1.05, 0.5}, 0.1));
  // negative margin demands depth
  CHECK(!r.contains({0.95, 0.5}, -0.1));
  CHECK(r.contains({0.5, 0.5}, -0.4));

  const SearchRegion g = r.grown(0.5);
  CHECK(g.re_min == -0.5);
  CHECK(g.im_max == 1.5);
}

TEST_CASE("lex_less orders by real part then imaginary part") {
  CHECK(lex_less({-1.0, 5.0}, {0.0, -5.0}));
  CHECK(lex_less({1.0, -2.0}, {1.0, 3.0}));
  CHECK(!lex_less({1.0, 3.0}, {1.0, 3.0}));
}

TEST_CASE("errors carry their code and a name") {
  try {
    fail(Errc::Overflow, "synthetic");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::Overflow);
    CHECK(std::string(e.what()) == "synthetic");
  }
  CHECK(std::string(errc_name(Errc::DoubleRootRegime)) == "DoubleRootRegime");
  CHECK(std::string(errc_name(Errc::InvalidPencil)) == "InvalidPencil");
}

TEST_SUITE_END();
