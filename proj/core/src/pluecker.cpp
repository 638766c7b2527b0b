#include "qpencil/pluecker.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>

namespace qpencil {
namespace {

// Antisymmetric view of the flat (p12, p13, p14, p23, p24, p34) layout.
struct MinorTable {
  std::array<std::array<Cx, 4>, 4> m{};

  explicit MinorTable(const PlueckerVector& p) {
    static constexpr int kPairs[6][2] = {{0, 1}, {0, 2}, {0, 3},
                                         {1, 2}, {1, 3}, {2, 3}};
    const auto flat = p.flat();
    for (int i = 0; i < 6; ++i) {
      m[kPairs[i][0]][kPairs[i][1]] = flat[i];
      m[kPairs[i][1]][kPairs[i][0]] = -flat[i];
    }
  }

  Cx operator()(int j, int k) const { return m[j][k]; }
};

}  // namespace

PlueckerVector minors(const BoundaryMatrix& bc) {
  auto det2 = [&](int j, int k) {
    return bc(0, j) * bc(1, k) - bc(0, k) * bc(1, j);
  };
  return PlueckerVector{det2(0, 1), det2(0, 2), det2(0, 3),
                        det2(1, 2), det2(1, 3), det2(2, 3)};
}

Cx relation_residual(const PlueckerVector& p) {
  return p.p12 * p.p34 - p.p13 * p.p24 + p.p14 * p.p23;
}

bool proportional(const PlueckerVector& p, const PlueckerVector& q,
                  double tol) {
  if (p.max_abs() == 0.0 || q.max_abs() == 0.0)
    fail(Errc::ZeroVector, "proportional: zero minor vector");
  const auto pf = p.flat();
  const auto qf = q.flat();
  int pivot = 0;
  for (int i = 1; i < 6; ++i)
    if (std::abs(qf[i]) > std::abs(qf[pivot])) pivot = i;
  const Cx s = pf[pivot] / qf[pivot];
  double num = 0.0, den = 0.0;
  for (int i = 0; i < 6; ++i) {
    num += std::norm(pf[i] - s * qf[i]);
    den += std::norm(pf[i]);
  }
  return std::sqrt(num) <= tol * std::sqrt(den);
}

bool equivalent(const BoundaryMatrix& a, const BoundaryMatrix& b) {
  Eigen::Matrix<Cx, 4, 4> stack;
  for (int j = 0; j < 4; ++j) {
    stack(0, j) = a(0, j);
    stack(1, j) = a(1, j);
    stack(2, j) = b(0, j);
    stack(3, j) = b(1, j);
  }
  Eigen::JacobiSVD<Eigen::Matrix<Cx, 4, 4>> svd(stack);
  const auto& sv = svd.singularValues();
  const bool by_rank = sv(2) <= 1e-9 * sv(0);
  const bool by_minors = proportional(minors(a), minors(b), 1e-9);
  if (by_rank != by_minors)
    fail(Errc::Internal, "equivalent: rank and minor routes disagree");
  return by_rank;
}

BoundaryMatrix reconstruct_bc(const PlueckerVector& p) {
  const double scale = p.max_abs();
  if (scale == 0.0) fail(Errc::ZeroVector, "reconstruct_bc: zero vector");
  if (std::abs(relation_residual(p)) > kDecomposableRelTol * scale * scale)
    fail(Errc::NotDecomposable, "reconstruct_bc: quadratic relation violated");

  const MinorTable t(p);
  int pj = 0, pk = 1;
  for (int j = 0; j < 4; ++j)
    for (int k = j + 1; k < 4; ++k)
      if (std::abs(t(j, k)) > std::abs(t(pj, pk))) {
        pj = j;
        pk = k;
      }
  const Cx piv = t(pj, pk);

  // Chart at the pivot minor: rows u, v with u_pj = 1, v_pk = 1. The
  // remaining entries are ratios of minors; the quadratic relation makes the
  // off-chart minors come out right. Scaling u by the pivot restores p.
  BoundaryMatrix bc{};
  std::array<Cx, 4> u{}, v{};
  u[pj] = Cx(1.0);
  v[pk] = Cx(1.0);
  for (int l = 0; l < 4; ++l) {
    if (l == pj || l == pk) continue;
    v[l] = t(pj, l) / piv;
    u[l] = -t(pk, l) / piv;
  }
  for (int j = 0; j < 4; ++j) {
    bc.rows[0][j] = piv * u[j];
    bc.rows[1][j] = v[j];
  }
  return bc;
}

}  // namespace qpencil
