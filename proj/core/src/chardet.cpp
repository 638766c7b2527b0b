#include "qpencil/chardet.hpp"

#include <cmath>
#include <numbers>

#include "qpencil/pluecker.hpp"

namespace qpencil {

namespace {

void check_exponent(const Pencil& p, const CharacteristicRoots& r, Cx lambda,
                    bool with_products) {
  const double L = p.length;
  const double a1 = std::abs(std::real(r.omega1 * lambda)) * L;
  const double a2 = std::abs(std::real(r.omega2 * lambda)) * L;
  // determinant products and phi24 carry the summed rate w1 + w2
  const double as =
      with_products ? std::abs(std::real((r.omega1 + r.omega2) * lambda)) * L : 0.0;
  if (a1 > kExpArgLimit || a2 > kExpArgLimit || as > kExpArgLimit) {
    fail(Errc::Overflow, "exp(omega lambda L) exceeds double range");
  }
}

// one term coeff * lambda^power * exp(rate * lambda) of a basis function
struct ExpTerm {
  Cx coeff;
  int power;
  Cx rate;
};

using TermList = std::vector<ExpTerm>;

// the six phi_jk as term lists; rates already carry the factor L
std::array<TermList, 6> basis_terms(const CharacteristicRoots& r, double L) {
  const Cx w1 = r.omega1, w2 = r.omega2;
  const Cx r1 = w1 * L, r2 = w2 * L, rs = (w1 + w2) * L;
  return {
      TermList{{1.0, 0, r2}, {-1.0, 0, r1}},            // phi12
      TermList{{w2 - w1, 1, 0.0}},                      // phi13
      TermList{{w2, 1, r2}, {-w1, 1, r1}},              // phi14
      TermList{{w2, 1, r1}, {-w1, 1, r2}},              // phi23
      TermList{{w2 - w1, 1, rs}},                       // phi24
      TermList{{w1 * w2, 2, r2}, {-w1 * w2, 2, r1}},    // phi34
  };
}

TermList differentiate(const TermList& terms) {
  TermList out;
  out.reserve(2 * terms.size());
  for (const ExpTerm& t : terms) {
    if (t.power > 0) out.push_back({t.coeff * double(t.power), t.power - 1, t.rate});
    if (t.rate != Cx(0.0)) out.push_back({t.coeff * t.rate, t.power, t.rate});
  }
  return out;
}

Cx eval_terms(const TermList& terms, Cx lambda) {
  Cx sum = 0.0;
  for (const ExpTerm& t : terms) {
    if (std::abs(std::real(t.rate * lambda)) > kExpArgLimit) {
      fail(Errc::Overflow, "exp(rate lambda) exceeds double range");
    }
    Cx pw = 1.0;
    for (int k = 0; k < t.power; ++k) pw *= lambda;
    sum += t.coeff * pw * std::exp(t.rate * lambda);
  }
  return sum;
}

CharacteristicRoots distinct_roots_or_fail(const Pencil& p, const char* who) {
  const CharacteristicRoots r = char_roots(p);
  if (r.kind == RootKind::Double) {
    fail(Errc::DoubleRootRegime,
         std::string(who) + " needs distinct characteristic roots");
  }
  return r;
}

Cx apply_form(const std::array<Cx, 4>& row, Cx y0, Cx yL, Cx dy0, Cx dyL) {
  return row[0] * y0 + row[1] * yL + row[2] * dy0 + row[3] * dyL;
}

}  // namespace

FundamentalValues fundamental_values(const Pencil& p, Cx lambda) {
  const CharacteristicRoots r = char_roots(p);
  check_exponent(p, r, lambda, /*with_products=*/false);
  const double L = p.length;
  FundamentalValues f{};
  if (r.kind == RootKind::Distinct) {
    const Cx e1 = std::exp(r.omega1 * lambda * L);
    const Cx e2 = std::exp(r.omega2 * lambda * L);
    f.y1_0 = 1.0;
    f.y1_L = e1;
    f.dy1_0 = r.omega1 * lambda;
    f.dy1_L = r.omega1 * lambda * e1;
    f.y2_0 = 1.0;
    f.y2_L = e2;
    f.dy2_0 = r.omega2 * lambda;
    f.dy2_L = r.omega2 * lambda * e2;
  } else {
    // second column x exp(w lambda x) keeps the system fundamental at every
    // lambda, including lambda = 0
    const Cx w = r.omega1;
    const Cx e = std::exp(w * lambda * L);
    f.y1_0 = 1.0;
    f.y1_L = e;
    f.dy1_0 = w * lambda;
    f.dy1_L = w * lambda * e;
    f.y2_0 = 0.0;
    f.y2_L = L * e;
    f.dy2_0 = 1.0;
    f.dy2_L = e * (1.0 + w * lambda * L);
  }
  return f;
}

BasisValues basis_functions(const Pencil& p, Cx lambda) {
  const CharacteristicRoots r = distinct_roots_or_fail(p, "basis_functions");
  check_exponent(p, r, lambda, /*with_products=*/true);
  const double L = p.length;
  const Cx e1 = std::exp(r.omega1 * lambda * L);
  const Cx e2 = std::exp(r.omega2 * lambda * L);
  const Cx w1 = r.omega1, w2 = r.omega2;
  BasisValues v{};
  v.phi12 = e2 - e1;
  v.phi13 = (w2 - w1) * lambda;
  v.phi14 = lambda * (w2 * e2 - w1 * e1);
  v.phi23 = lambda * (w2 * e1 - w1 * e2);
  v.phi24 = (w2 - w1) * lambda * std::exp((w1 + w2) * lambda * L);
  v.phi34 = w1 * w2 * lambda * lambda * (e2 - e1);
  return v;
}

std::array<Cx, 6> basis_derivative(const Pencil& p, Cx lambda, int order) {
  if (order < 0) fail(Errc::OrderUnsupported, "derivative order must be >= 0");
  const CharacteristicRoots r = distinct_roots_or_fail(p, "basis_derivative");
  if (order == 0) return basis_functions(p, lambda).flat();
  check_exponent(p, r, lambda, /*with_products=*/true);
  auto lists = basis_terms(r, p.length);
  std::array<Cx, 6> out;
  for (int i = 0; i < 6; ++i) {
    TermList t = lists[i];
    for (int k = 0; k < order; ++k) t = differentiate(t);
    out[i] = eval_terms(t, lambda);
  }
  return out;
}

Cx delta_direct(const Problem& pr, Cx lambda) {
  check_exponent(pr.pencil, char_roots(pr.pencil), lambda, /*with_products=*/true);
  const FundamentalValues f = fundamental_values(pr.pencil, lambda);
  const Cx u11 = apply_form(pr.bc.rows[0], f.y1_0, f.y1_L, f.dy1_0, f.dy1_L);
  const Cx u12 = apply_form(pr.bc.rows[0], f.y2_0, f.y2_L, f.dy2_0, f.dy2_L);
  const Cx u21 = apply_form(pr.bc.rows[1], f.y1_0, f.y1_L, f.dy1_0, f.dy1_L);
  const Cx u22 = apply_form(pr.bc.rows[1], f.y2_0, f.y2_L, f.dy2_0, f.dy2_L);
  return u11 * u22 - u12 * u21;
}

Cx delta_minor(const Problem& pr, Cx lambda) {
  const BasisValues v = basis_functions(pr.pencil, lambda);
  const PlueckerVector p = minors(pr.bc);
  const auto pv = p.flat();
  const auto bv = v.flat();
  Cx sum = 0.0;
  for (int i = 0; i < 6; ++i) sum += pv[i] * bv[i];
  return sum;
}

Cx delta_derivative(const Problem& pr, Cx lambda, int order) {
  if (order < 1 || order > 4) {
    fail(Errc::OrderUnsupported, "delta_derivative supports orders 1..4");
  }
  const CharacteristicRoots r = char_roots(pr.pencil);
  if (r.kind == RootKind::Distinct) {
    const auto dphi = basis_derivative(pr.pencil, lambda, order);
    const auto pv = minors(pr.bc).flat();
    Cx sum = 0.0;
    for (int i = 0; i < 6; ++i) sum += pv[i] * dphi[i];
    return sum;
  }
  // double regime: trapezoid Cauchy integral on a small circle; the rule is
  // spectrally accurate for entire integrands
  const double rho = 1e-2 * (1.0 + std::abs(lambda));
  constexpr int kNodes = 64;
  Cx acc = 0.0;
  for (int j = 0; j < kNodes; ++j) {
    const double th = 2.0 * std::numbers::pi * j / kNodes;
    const Cx dir = std::polar(1.0, th);
    const Cx fz = delta_direct(pr, lambda + rho * dir);
    acc += fz * std::polar(1.0, -th * order);
  }
  double factorial = 1.0;
  for (int k = 2; k <= order; ++k) factorial *= k;
  return factorial * acc / (double(kNodes) * std::pow(rho, order));
}

double delta_scale(const Problem& pr, Cx lambda) {
  const CharacteristicRoots r = char_roots(pr.pencil);
  check_exponent(pr.pencil, r, lambda, /*with_products=*/true);
  if (r.kind == RootKind::Distinct) {
    const auto pv = minors(pr.bc).flat();
    const auto lists = basis_terms(r, pr.pencil.length);
    const double al = std::abs(lambda);
    double sum = 0.0;
    for (int i = 0; i < 6; ++i) {
      double mag = 0.0;
      for (const ExpTerm& t : lists[i]) {
        mag += std::abs(t.coeff) * std::pow(al, t.power) *
               std::exp(std::real(t.rate * lambda));
      }
      sum += std::abs(pv[i]) * mag;
    }
    return sum;
  }
  const FundamentalValues f = fundamental_values(pr.pencil, lambda);
  auto abs_form = [](const std::array<Cx, 4>& row, Cx y0, Cx yL, Cx dy0,
                     Cx dyL) {
    return std::abs(row[0]) * std::abs(y0) + std::abs(row[1]) * std::abs(yL) +
           std::abs(row[2]) * std::abs(dy0) + std::abs(row[3]) * std::abs(dyL);
  };
  const double m11 = abs_form(pr.bc.rows[0], f.y1_0, f.y1_L, f.dy1_0, f.dy1_L);
  const double m12 = abs_form(pr.bc.rows[0], f.y2_0, f.y2_L, f.dy2_0, f.dy2_L);
  const double m21 = abs_form(pr.bc.rows[1], f.y1_0, f.y1_L, f.dy1_0, f.dy1_L);
  const double m22 = abs_form(pr.bc.rows[1], f.y2_0, f.y2_L, f.dy2_0, f.dy2_L);
  return m11 * m22 + m12 * m21;
}

}  // namespace qpencil
