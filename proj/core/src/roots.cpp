#include "qpencil/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include "qpencil/chardet.hpp"

namespace qpencil {
namespace {

constexpr long kWindingBudget = 200000;
constexpr double kTrustStep = std::numbers::pi / 4.0;
constexpr int kRectSegments = 256;  // per edge on the outermost contour
constexpr int kCircleSegments = 64;
constexpr int kMinSegments = 16;
// hit threshold on tiny certification circles, where the function is
// legitimately small and only an exact zero should abort the scan
constexpr double kExactHit = 1e-290;

// a contour sample landed on (or next to) a zero; callers regrow the
// rectangle or pick different split lines
struct BoundaryHit {};

bool finite(Cx v) {
  return std::isfinite(v.real()) && std::isfinite(v.imag());
}

double principal_step(Cx a, Cx b) {
  return std::remainder(std::arg(b) - std::arg(a), 2.0 * std::numbers::pi);
}

// winding number of f along a closed path over [0,1]. Segments are
// accepted through their midpoints: both half-steps must stay below pi/4
// or the halves are refined further. An endpoint test alone would wrap a
// near-2 pi swing past a nearby zero down to a small step and silently
// drop a full turn; with midpoint validation a lost turn needs 4 pi of
// swing inside one segment, beyond any zero order this function meets.
// The zero threshold is scaled by contour_scale where provided, so
// uniformly small or polynomially damped functions are judged against
// their own magnitude.
int winding_number(const Evaluator& f, const std::function<Cx(double)>& path,
                   int init_segments, double zero_tol,
                   const ScaleFn& contour_scale) {
  long evals = 0;
  auto probe = [&](double t) {
    if (++evals > kWindingBudget)
      fail(Errc::NonConvergent, "winding number: evaluation budget exhausted");
    const Cx z = path(t);
    const Cx v = f(z);
    if (!finite(v))
      fail(Errc::Overflow, "winding number: non-finite value on contour");
    const double sc = contour_scale ? contour_scale(z) : 1.0;
    if (std::abs(v) < zero_tol * (sc > 0.0 ? sc : 1.0)) throw BoundaryHit{};
    return v;
  };

  std::vector<Cx> base(init_segments);
  for (int i = 0; i < init_segments; ++i)
    base[i] = probe(double(i) / init_segments);

  struct Seg {
    double t0, t1;
    Cx f0, f1;
    int depth;
  };
  std::vector<Seg> todo;
  todo.reserve(size_t(2) * init_segments);
  for (int i = 0; i < init_segments; ++i)
    todo.push_back({double(i) / init_segments, double(i + 1) / init_segments,
                    base[i], base[(i + 1) % init_segments], 0});

  double total = 0.0;
  while (!todo.empty()) {
    const Seg s = todo.back();
    todo.pop_back();
    const double tm = 0.5 * (s.t0 + s.t1);
    const Cx fm = probe(tm);
    const double d0 = principal_step(s.f0, fm);
    const double d1 = principal_step(fm, s.f1);
    if (std::abs(d0) < kTrustStep && std::abs(d1) < kTrustStep) {
      total += d0 + d1;
      continue;
    }
    if (s.depth >= 60)
      fail(Errc::NonConvergent, "winding number: phase step will not shrink");
    todo.push_back({s.t0, tm, s.f0, fm, s.depth + 1});
    todo.push_back({tm, s.t1, fm, s.f1, s.depth + 1});
  }

  const double w = total / (2.0 * std::numbers::pi);
  const long k = std::lround(w);
  if (std::abs(w - double(k)) > 0.25)
    fail(Errc::NonConvergent, "winding number: phase sum is not integral");
  return int(k);
}

std::function<Cx(double)> rect_path(const SearchRegion& r) {
  return [r](double t) -> Cx {
    const double u = 4.0 * (t - std::floor(t));
    const int edge = std::min(3, int(u));
    const double s = u - edge;
    switch (edge) {
      case 0:
        return {r.re_min + s * r.width(), r.im_min};
      case 1:
        return {r.re_max, r.im_min + s * r.height()};
      case 2:
        return {r.re_max - s * r.width(), r.im_max};
      default:
        return {r.re_min, r.im_max - s * r.height()};
    }
  };
}

std::function<Cx(double)> circle_path(Cx center, double radius) {
  return [center, radius](double t) -> Cx {
    return center + std::polar(radius, 2.0 * std::numbers::pi * t);
  };
}

// initial sampling density halves with depth; phase speed along an edge
// scales with its length, so capacity per segment is preserved. boost
// doubles the density per step when a coarser scan has come under suspicion
int rect_winding(const Evaluator& f, const SearchRegion& r, int depth,
                 double zero_tol, const ScaleFn& contour_scale,
                 int boost = 0) {
  const int per_edge = std::min(
      kRectSegments, std::max(kMinSegments, kRectSegments >> depth) << boost);
  return winding_number(f, rect_path(r), 4 * per_edge, zero_tol,
                        contour_scale);
}

// winding on a circle; the radius is nudged when a sample meets a zero
int circle_winding(const Evaluator& f, Cx center, double radius,
                   double zero_tol, const ScaleFn& contour_scale) {
  static constexpr double kNudge[] = {1.0, 1.07, 0.93, 1.13, 0.87};
  for (const double n : kNudge) {
    try {
      return winding_number(f, circle_path(center, n * radius),
                            kCircleSegments, zero_tol, contour_scale);
    } catch (const BoundaryHit&) {
    }
  }
  fail(Errc::BoundaryZero, "circle contour keeps meeting zeros");
}

// order of the zero at the origin. Starts on the exclusion circle and
// escalates the radius when the values there sit below phase resolution,
// which happens for orders >= 2.
int zero_order_at_origin(const Evaluator& delta, const RootFinderConfig& cfg) {
  const double radii[] = {cfg.zero_exclusion_radius,
                          1e2 * cfg.zero_exclusion_radius,
                          1e4 * cfg.zero_exclusion_radius};
  for (const double r : radii) {
    try {
      return circle_winding(delta, Cx(0.0), r, kExactHit, {});
    } catch (const Error& e) {
      if (e.code() != Errc::NonConvergent && e.code() != Errc::BoundaryZero)
        throw;
    }
  }
  fail(Errc::NonConvergent, "order at the origin is not resolvable");
}

struct NewtonResult {
  Cx z;
  bool step_converged;
};

// mult > 1 takes the multiplicity-weighted step, which restores quadratic
// convergence at an exact multiple zero
std::optional<NewtonResult> newton(const Evaluator& f, const Evaluator& df,
                                   Cx z, int mult = 1) {
  try {
    for (int it = 0; it < 50; ++it) {
      const Cx fz = f(z);
      if (!finite(fz)) return std::nullopt;
      if (fz == Cx(0.0)) return NewtonResult{z, true};
      const Cx d = df(z);
      if (!finite(d) || d == Cx(0.0)) return std::nullopt;
      const Cx step = double(mult) * fz / d;
      const Cx next = z - step;
      if (!finite(next)) return std::nullopt;
      z = next;
      if (std::abs(step) < 1e-14 * (1.0 + std::abs(z)))
        return NewtonResult{z, true};
    }
  } catch (const Error& e) {
    // wandering outside the representable range counts as divergence
    if (e.code() == Errc::Overflow) return std::nullopt;
    throw;
  }
  return NewtonResult{z, false};
}

// candidate split lines through the cell, best (largest minimum of scaled
// |f|) first
std::vector<double> ranked_lines(const Evaluator& f, const SearchRegion& r,
                                 bool vertical, const ScaleFn& contour_scale) {
  static constexpr double kOffsets[] = {0.0, 0.07, -0.07, 0.13, -0.19};
  constexpr int kProbes = 17;
  struct Scored {
    double line, score;
  };
  std::vector<Scored> scored;
  scored.reserve(std::size(kOffsets));
  for (const double off : kOffsets) {
    const double line = vertical ? 0.5 * (r.re_min + r.re_max) + off * r.width()
                                 : 0.5 * (r.im_min + r.im_max) + off * r.height();
    const double lo = vertical ? r.im_min : r.re_min;
    const double hi = vertical ? r.im_max : r.re_max;
    double m = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kProbes; ++i) {
      const double s = lo + (hi - lo) * (i + 0.5) / kProbes;
      const Cx z = vertical ? Cx{line, s} : Cx{s, line};
      try {
        const double v = std::abs(f(z));
        const double sc = contour_scale ? contour_scale(z) : 1.0;
        m = std::min(m, v / (sc > 0.0 ? sc : 1.0));
      } catch (const Error& e) {
        // overflow means far from zero, which is what the score wants
        if (e.code() != Errc::Overflow) throw;
      } catch (const BoundaryHit&) {
        m = 0.0;  // the probe landed on the excluded origin
      }
    }
    scored.push_back({line, m});
  }
  std::stable_sort(scored.begin(), scored.end(),
                   [](const Scored& a, const Scored& b) {
                     return a.score > b.score;
                   });
  std::vector<double> lines;
  lines.reserve(scored.size());
  for (const Scored& s : scored) lines.push_back(s.line);
  return lines;
}

struct Candidate {
  Cx z;
  int mult;
};

void subdivide(const Evaluator& g, const Evaluator& dg,
               const SearchRegion& cell, int count, int depth,
               const RootFinderConfig& cfg, const ScaleFn& contour_scale,
               std::vector<Candidate>& out) {
  if (count < 0) fail(Errc::Internal, "negative winding over a cell");
  if (count == 0) return;

  const double diam = cell.diameter();
  if (diam < cfg.min_box_diameter || depth >= cfg.max_depth) {
    if (count > cfg.max_multiplicity)
      fail(Errc::MultiplicityCapExceeded,
           "zero cluster exceeds the multiplicity cap");
    out.push_back({cell.center(), count});
    return;
  }

  if (count == 1) {
    // the refined point must land strictly inside this cell; a point near
    // the boundary may belong to a neighbor and would be counted twice
    const auto r = newton(g, dg, cell.center());
    if (r && r->step_converged && cell.contains(r->z, -0.01 * diam)) {
      out.push_back({r->z, 1});
      return;
    }
    // center missed the basin; fall through and shrink the cell
  }

  const auto xs = ranked_lines(g, cell, true, contour_scale);
  const auto ys = ranked_lines(g, cell, false, contour_scale);
  SearchRegion last_kids[4] = {cell, cell, cell, cell};
  int last_counts[4] = {0, 0, 0, 0};
  int last_sum = -1;
  bool sums_consistent = true;
  for (int attempt = 0; attempt < 5; ++attempt) {
    const double sx = xs[attempt % xs.size()];
    const double sy = ys[attempt % ys.size()];
    const SearchRegion kids[4] = {
        {cell.re_min, sx, cell.im_min, sy},
        {sx, cell.re_max, cell.im_min, sy},
        {cell.re_min, sx, sy, cell.im_max},
        {sx, cell.re_max, sy, cell.im_max},
    };
    int counts[4];
    int sum = 0;
    bool scanned = true;
    try {
      for (int i = 0; i < 4; ++i) {
        // density rises with each retry; a passage close to an edge can
        // hide a full turn from a grid that is locally too coarse
        counts[i] = rect_winding(g, kids[i], depth + 1, cfg.residual_tol,
                                 contour_scale, attempt);
        sum += counts[i];
      }
    } catch (const BoundaryHit&) {
      scanned = false;
    }
    if (!scanned) continue;
    // children partition the cell exactly, so counts must add up; a
    // mismatch means either a zero slipped onto a split line between
    // samples or the cell count itself is wrong
    if (sum == count) {
      for (int i = 0; i < 4; ++i)
        subdivide(g, dg, kids[i], counts[i], depth + 1, cfg, contour_scale,
                  out);
      return;
    }
    if (last_sum >= 0 && sum != last_sum) sums_consistent = false;
    last_sum = sum;
    for (int i = 0; i < 4; ++i) {
      last_kids[i] = kids[i];
      last_counts[i] = counts[i];
    }
  }
  // every offered line met the zero set within the magnitude floor: the
  // zeros are packed tighter than any split can separate. Polish the
  // centroid with a multiplicity-weighted step and let the certificate
  // pass judge the result
  if (last_sum < 0) {
    if (count > cfg.max_multiplicity)
      fail(Errc::MultiplicityCapExceeded,
           "zero cluster exceeds the multiplicity cap");
    Cx z = cell.center();
    if (const auto p = newton(g, dg, z, count);
        p && p->step_converged && cell.contains(p->z, 0.1 * diam))
      z = p->z;
    out.push_back({z, count});
    return;
  }
  // every split produced the same total, so the inherited count is the
  // suspect: it came from an edge this cell shares with a sibling, where a
  // near-miss passage of an even-order zero can alias a turn away from one
  // side and onto the other. A dense rescan of this boundary arbitrates.
  if (sums_consistent && last_sum != count &&
      rect_winding(g, cell, 0, cfg.residual_tol, contour_scale, 1) ==
          last_sum) {
    for (int i = 0; i < 4; ++i)
      subdivide(g, dg, last_kids[i], last_counts[i], depth + 1, cfg,
                contour_scale, out);
    return;
  }
  fail(Errc::NonConvergent, "no zero-free split lines found for subdivision");
}

std::vector<EigenvalueEntry> assemble(const Evaluator& g, const Evaluator& dg,
                                      std::vector<Candidate> cands,
                                      int expected_total,
                                      const RootFinderConfig& cfg,
                                      const Evaluator& resid_f,
                                      const ScaleFn& scale,
                                      const ScaleFn& contour_scale,
                                      double drop_radius) {
  std::sort(cands.begin(), cands.end(),
            [](const Candidate& a, const Candidate& b) {
              return lex_less(a.z, b.z);
            });

  // merge candidates closer than dedup_radius; the weighted centroid keeps
  // the certificate circle centered on the cluster
  std::vector<Candidate> merged;
  for (const Candidate& c : cands) {
    bool joined = false;
    for (Candidate& m : merged) {
      if (std::abs(c.z - m.z) <= cfg.dedup_radius) {
        const double wm = m.mult, wc = c.mult;
        m.z = (m.z * wm + c.z * wc) / (wm + wc);
        m.mult += c.mult;
        joined = true;
        break;
      }
    }
    if (!joined) merged.push_back(c);
  }

  // the yardstick is sampled on the certificate circle as well as at the
  // point itself; a scale that vanishes at the zero (an explicit polynomial
  // factor, say) would otherwise reject every nearby candidate
  auto rel_residual = [&](Cx z, double rc) {
    double sc = 1.0;
    if (scale) {
      sc = scale(z);
      for (Cx d : {Cx(rc, 0), Cx(-rc, 0), Cx(0, rc), Cx(0, -rc)})
        sc = std::max(sc, scale(z + d));
    }
    return std::abs(resid_f(z)) / (sc > 0.0 ? sc : 1.0);
  };

  int certified_sum = 0;
  std::vector<EigenvalueEntry> kept;
  for (const Candidate& m : merged) {
    double nearest = std::numeric_limits<double>::infinity();
    for (const Candidate& o : merged)
      if (&o != &m) nearest = std::min(nearest, std::abs(m.z - o.z));
    const double rc = std::min(10.0 * cfg.dedup_radius, 0.45 * nearest);
    const int mult = circle_winding(g, m.z, rc, kExactHit, contour_scale);
    if (mult <= 0)
      fail(Errc::Internal, "located zero fails its winding certificate");
    if (mult > cfg.max_multiplicity)
      fail(Errc::MultiplicityCapExceeded,
           "certified multiplicity exceeds the cap");
    certified_sum += mult;
    if (std::abs(m.z) <= drop_radius) continue;

    EigenvalueEntry e;
    e.lambda = m.z;
    e.multiplicity = mult;
    e.residual = rel_residual(e.lambda, rc);
    if (e.residual > cfg.residual_tol) {
      const auto p = newton(g, dg, e.lambda);
      if (p && std::abs(p->z - e.lambda) <= rc) {
        e.lambda = p->z;
        e.residual = rel_residual(e.lambda, rc);
      }
    }
    if (e.residual > cfg.residual_tol)
      fail(Errc::NonConvergent, "refined zero fails the residual test");
    kept.push_back(e);
  }
  if (certified_sum != expected_total)
    fail(Errc::Internal, "winding certificates disagree with the total count");

  std::sort(kept.begin(), kept.end(),
            [](const EigenvalueEntry& a, const EigenvalueEntry& b) {
              return lex_less(a.lambda, b.lambda);
            });
  return kept;
}

template <typename Body>
auto with_growth(SearchRegion region, const RootFinderConfig& cfg,
                 Body&& body) {
  for (int attempt = 0;; ++attempt) {
    try {
      return body(region);
    } catch (const BoundaryHit&) {
      if (attempt >= 5)
        fail(Errc::BoundaryZero,
             "contour still meets a zero after growth retries");
      region = region.grown(cfg.edge_jitter * (1.0 + region.diameter()));
    }
  }
}

Cx pow_int(Cx z, int n) {
  Cx p = 1.0;
  for (int i = 0; i < n; ++i) p *= z;
  return p;
}

}  // namespace

void validate(const RootFinderConfig& cfg) {
  const bool positives = cfg.zero_exclusion_radius > 0.0 &&
                         cfg.dedup_radius > 0.0 && cfg.residual_tol > 0.0 &&
                         cfg.min_box_diameter > 0.0 && cfg.edge_jitter > 0.0;
  if (!positives || cfg.max_multiplicity < 1 || cfg.max_depth < 1)
    fail(Errc::InvalidConfig, "root finder tolerances must be positive");
  if (!(cfg.min_box_diameter < cfg.dedup_radius))
    fail(Errc::InvalidConfig, "min_box_diameter must stay below dedup_radius");
}

long count_zeros(const Evaluator& f, const SearchRegion& region,
                 const RootFinderConfig& cfg, const ScaleFn& scale) {
  validate(cfg);
  make_region(region.re_min, region.re_max, region.im_min, region.im_max);
  if (!f) fail(Errc::InvalidConfig, "count_zeros: empty evaluator");
  return with_growth(region, cfg, [&](const SearchRegion& reg) -> long {
    const int w = rect_winding(f, reg, 0, cfg.residual_tol, scale);
    if (w < 0) fail(Errc::Internal, "negative winding over the region");
    return long(w);
  });
}

Cx refine_root(const Evaluator& f, const Evaluator& df, Cx seed,
               const RootFinderConfig& cfg) {
  validate(cfg);
  if (!f || !df) fail(Errc::InvalidConfig, "refine_root: empty evaluator");
  if (!finite(seed)) fail(Errc::InvalidConfig, "refine_root: seed not finite");
  double seed_mag = 0.0;
  try {
    seed_mag = std::abs(f(seed));
  } catch (const Error& e) {
    if (e.code() != Errc::Overflow) throw;
    fail(Errc::NewtonDiverged, "refine_root: seed outside evaluable range");
  }
  const auto r = newton(f, df, seed);
  if (!r) fail(Errc::NewtonDiverged, "Newton left the evaluable range");
  // scale-aware residual gate: |f(seed)| reflects the local magnitude when
  // the seed sits in the basin
  const double res = std::abs(f(r->z));
  if (res > cfg.residual_tol * (1.0 + seed_mag))
    fail(Errc::NewtonDiverged, "Newton result fails the residual test");
  return r->z;
}

std::pair<double, double> choose_split_lines(const Evaluator& f,
                                             const SearchRegion& region) {
  if (!f) fail(Errc::InvalidConfig, "choose_split_lines: empty evaluator");
  make_region(region.re_min, region.re_max, region.im_min, region.im_max);
  return {ranked_lines(f, region, true, {}).front(),
          ranked_lines(f, region, false, {}).front()};
}

ZeroSearch locate_zeros(const Evaluator& f, const Evaluator& df,
                        const SearchRegion& region, const RootFinderConfig& cfg,
                        const ScaleFn& scale) {
  validate(cfg);
  make_region(region.re_min, region.re_max, region.im_min, region.im_max);
  if (!f || !df) fail(Errc::InvalidConfig, "locate_zeros: empty evaluator");
  return with_growth(region, cfg, [&](const SearchRegion& reg) -> ZeroSearch {
    const int total = rect_winding(f, reg, 0, cfg.residual_tol, scale);
    if (total < 0) fail(Errc::Internal, "negative winding over the region");
    std::vector<Candidate> cands;
    subdivide(f, df, reg, total, 0, cfg, scale, cands);
    ZeroSearch out;
    out.region = reg;
    out.zeros = assemble(f, df, std::move(cands), total, cfg, f, scale, scale,
                         /*drop_radius=*/0.0);
    return out;
  });
}

Spectrum find_eigenvalues(const Evaluator& delta, const Evaluator& ddelta,
                          const ScaleFn& scale, const SearchRegion& region,
                          const RootFinderConfig& cfg) {
  validate(cfg);
  make_region(region.re_min, region.re_max, region.im_min, region.im_max);
  if (!delta || !ddelta || !scale)
    fail(Errc::InvalidConfig, "find_eigenvalues: empty evaluator");

  return with_growth(region, cfg, [&](const SearchRegion& reg) -> Spectrum {
    int zo = 0;
    if (reg.contains(Cx(0.0), -3.0 * cfg.zero_exclusion_radius))
      zo = zero_order_at_origin(delta, cfg);
    if (zo < 0) fail(Errc::Internal, "negative order at the origin");

    Evaluator g = delta;
    Evaluator dg = ddelta;
    ScaleFn gscale = scale;
    if (zo > 0) {
      // dividing out the origin zero leaves g regular; a contour sample at
      // exactly zero cannot be divided and is treated as a boundary hit
      g = [delta, zo](Cx z) {
        if (z == Cx(0.0)) throw BoundaryHit{};
        return delta(z) / pow_int(z, zo);
      };
      dg = [delta, ddelta, zo](Cx z) {
        return (ddelta(z) * z - double(zo) * delta(z)) / pow_int(z, zo + 1);
      };
      gscale = [scale, zo](Cx z) {
        return scale(z) / std::pow(std::abs(z), zo);
      };
    }

    const int total = rect_winding(g, reg, 0, cfg.residual_tol, gscale);
    if (total < 0) fail(Errc::Internal, "negative winding over the region");
    std::vector<Candidate> cands;
    subdivide(g, dg, reg, total, 0, cfg, gscale, cands);

    Spectrum sp;
    sp.region = reg;
    sp.zero_order = zo;
    sp.eigenvalues = assemble(g, dg, std::move(cands), total, cfg, delta,
                              scale, gscale, cfg.zero_exclusion_radius);
    return sp;
  });
}

Spectrum find_eigenvalues(const Problem& problem, const SearchRegion& region,
                          const RootFinderConfig& cfg) {
  const bool dbl = char_roots(problem.pencil).kind == RootKind::Double;
  const Evaluator delta =
      dbl ? Evaluator([problem](Cx z) { return delta_direct(problem, z); })
          : Evaluator([problem](Cx z) { return delta_minor(problem, z); });
  const Evaluator ddelta = [problem](Cx z) {
    return delta_derivative(problem, z, 1);
  };
  const ScaleFn scale = [problem](Cx z) { return delta_scale(problem, z); };
  return find_eigenvalues(delta, ddelta, scale, region, cfg);
}

}  // namespace qpencil
