#include "pcm/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pcm/errors.hpp"
#include "pcm/roots.hpp"

namespace pcm {

namespace {

constexpr int kMaxRefinements = 24;
constexpr double kRingClosureTol = 1e-8;
constexpr double kNodeJitterTrigger = 1e-6;
constexpr double kNodeJitterShift = 3e-6;

struct Fiber {
  std::array<Complex, 3> roots;
  int nearest(Complex v) const {
    int best = 0;
    double bd = std::abs(roots[0] - v);
    for (int k = 1; k < 3; ++k) {
      const double d = std::abs(roots[k] - v);
      if (d < bd) {
        bd = d;
        best = k;
      }
    }
    return best;
  }
  double min_separation() const {
    return std::min({std::abs(roots[0] - roots[1]), std::abs(roots[0] - roots[2]),
                     std::abs(roots[1] - roots[2])});
  }
};

// Per-track state: the derivative of B is needed for tangent prediction.
struct TrackContext {
  const DepressedCubic& p;
  const FiniteBlaschkeProduct& B;
  ComplexRational dB;
};

Fiber fiber_at(const TrackContext& ctx, Complex z) {
  return Fiber{fiber_roots(ctx.p, blaschke_eval(ctx.B, z))};
}

// Continuation along the straight segment from za (value known) to zb.
// The target is predicted to first order with phi' = B' / p'(phi); two fiber
// sheets can cross inside the disk (at the critical points of B, where the
// fiber is tangentially degenerate without being ramified), and proximity to
// the previous value alone picks the wrong sheet when the segment passes
// such a crossing.  The prediction separates the sheets by their tangents.
// A step is accepted only when the nearest fiber root lies within half the
// minimal fiber separation of the prediction; otherwise the segment is
// bisected, up to 24 levels.
Complex continue_segment(const TrackContext& ctx, Complex value, Complex za,
                         Complex zb, int depth, int& max_depth) {
  const Complex p_prime = 3.0 * value * value + ctx.p.c;
  Complex prediction = value;
  if (std::abs(p_prime) > 1e-12 * (1.0 + std::abs(ctx.p.c)))
    prediction += rational_eval(ctx.dB, za) / p_prime * (zb - za);

  const Fiber fib = fiber_at(ctx, zb);
  const int k = fib.nearest(prediction);
  if (std::abs(fib.roots[k] - prediction) < 0.5 * fib.min_separation()) {
    max_depth = std::max(max_depth, depth);
    return fib.roots[k];
  }
  if (depth >= kMaxRefinements)
    throw StepCollapse("fiber roots collided on the continuation path", zb);
  const Complex zm = 0.5 * (za + zb);
  const Complex vm = continue_segment(ctx, value, za, zm, depth + 1, max_depth);
  return continue_segment(ctx, vm, zm, zb, depth + 1, max_depth);
}

Eigen::MatrixXcd grid_nodes(const PolarGridSpec& spec,
                            const std::vector<Complex>& avoid) {
  const std::vector<double> radii = grid_radii(spec);
  Eigen::MatrixXcd nodes(spec.n_radii, spec.n_angles);
  for (int i = 0; i < spec.n_radii; ++i) {
    for (int j = 0; j < spec.n_angles; ++j) {
      const Complex dir = unit_phase(2.0 * kPi * j / spec.n_angles);
      double r = radii[i];
      Complex z = r * dir;
      for (Complex c : avoid) {
        if (std::abs(z - c) < kNodeJitterTrigger) {
          r += kNodeJitterShift;
          z = r * dir;
        }
      }
      nodes(i, j) = z;
    }
  }
  return nodes;
}

void validate_spec(const PolarGridSpec& spec) {
  if (spec.n_radii < 1 || spec.n_angles < 8)
    throw InvalidInput("polar grid needs n_radii >= 1 and n_angles >= 8");
  if (!(spec.r_max > 0.0 && spec.r_max < 1.0))
    throw InvalidInput("polar grid r_max must lie in (0, 1)");
}

}  // namespace

std::vector<double> grid_radii(const PolarGridSpec& spec) {
  validate_spec(spec);
  std::vector<double> radii(spec.n_radii);
  for (int i = 0; i < spec.n_radii; ++i)
    radii[i] = spec.r_max * std::sin(kPi * (i + 1) / (2.0 * spec.n_radii));
  return radii;
}

std::array<Complex, 3> fiber_roots(const DepressedCubic& p, Complex w) {
  const ComplexPolynomial cubic{p.d - w, p.c, Complex{0.0, 0.0}, Complex{1.0, 0.0}};
  const std::vector<Complex> roots = solve_low_degree(cubic);
  return {roots[0], roots[1], roots[2]};
}

UVRadicals algebraic_phi(const DepressedCubic& p, Complex w, int branch) {
  if (branch < 0 || branch > 2) throw InvalidInput("branch index must be 0, 1 or 2");
  const Complex q = p.d - w;
  const Complex c3 = p.c * p.c * p.c;

  UVRadicals uv;
  Complex s = std::sqrt(q * q / 4.0 + c3 / 27.0);
  if ((std::conj(-q / 2.0) * s).real() < 0.0) s = -s;
  uv.discriminant_sqrt = s;

  const Complex u3 = -q / 2.0 + s;
  const double scale = std::abs(q) / 2.0 + std::abs(s);
  if (std::abs(u3) <= 1e-13 * scale || scale == 0.0)
    throw ZeroU("U radicand vanished; the target is a critical value");

  const Complex omega{-0.5, 0.8660254037844386467637231707529362};
  Complex u = principal_nth_root(u3, 3);
  for (int k = 0; k < branch; ++k) u *= omega;
  uv.U = u;
  uv.V = (-p.c / 3.0) / u;
  return uv;
}

BranchGrid track_branch(const DepressedCubic& p, const FiniteBlaschkeProduct& B,
                        const PolarGridSpec& spec, int seed_index) {
  validate_spec(spec);
  if (B.degree() != 3) throw WrongDegree("track_branch expects a degree-3 product");
  if (seed_index < 0 || seed_index > 2)
    throw InvalidInput("seed index must be 0, 1 or 2");

  std::vector<Complex> avoid;
  for (const auto& [point, mult] : critical_points_in_disk(B).points)
    avoid.push_back(point);

  BranchGrid grid;
  grid.spec = spec;
  grid.seed_index = seed_index;
  grid.nodes = grid_nodes(spec, avoid);
  grid.values.resize(spec.n_radii, spec.n_angles);

  const auto seeds = fiber_roots(p, blaschke_eval(B, Complex{0.0, 0.0}));
  grid.seed_value = seeds[seed_index];

  const TrackContext ctx{p, B, rational_derivative(as_rational(B))};
  int max_depth = 0;
  bool monodromy = true;

  Complex ring_entry = grid.seed_value;
  Complex ring_entry_z{0.0, 0.0};
  for (int i = 0; i < spec.n_radii; ++i) {
    // Step outward to this ring's first node, then sweep the ring.
    ring_entry = continue_segment(ctx, ring_entry, ring_entry_z, grid.nodes(i, 0),
                                  0, max_depth);
    ring_entry_z = grid.nodes(i, 0);
    grid.values(i, 0) = ring_entry;

    Complex current = ring_entry;
    for (int j = 1; j < spec.n_angles; ++j) {
      current = continue_segment(ctx, current, grid.nodes(i, j - 1),
                                 grid.nodes(i, j), 0, max_depth);
      grid.values(i, j) = current;
    }
    const Complex closed =
        continue_segment(ctx, current, grid.nodes(i, spec.n_angles - 1),
                         grid.nodes(i, 0), 0, max_depth);
    if (std::abs(closed - grid.values(i, 0)) > kRingClosureTol) monodromy = false;

    // Ring closure alone cannot see a sheet swap whose branch points both
    // fall between consecutive radii (encircling the pair is trivial); every
    // radial edge is therefore continued and compared as well, which makes a
    // monodromy_ok grid consistent across the whole covered annulus.
    if (i > 0) {
      for (int j = 1; j < spec.n_angles; ++j) {
        const Complex radial =
            continue_segment(ctx, grid.values(i - 1, j), grid.nodes(i - 1, j),
                             grid.nodes(i, j), 0, max_depth);
        if (std::abs(radial - grid.values(i, j)) > kRingClosureTol) {
          monodromy = false;
          break;
        }
      }
    }
  }

  grid.monodromy_ok = monodromy;
  grid.max_step_refinements = max_depth;
  return grid;
}

BranchSelection select_analytic_branch_detailed(const DepressedCubic& p,
                                                const FiniteBlaschkeProduct& B,
                                                const PolarGridSpec& spec) {
  const auto seeds = fiber_roots(p, blaschke_eval(B, Complex{0.0, 0.0}));
  std::vector<int> distinct;
  for (int k = 0; k < 3; ++k) {
    bool dup = false;
    for (int j : distinct)
      if (std::abs(seeds[k] - seeds[j]) <= 1e-9) dup = true;
    if (!dup) distinct.push_back(k);
  }

  std::vector<int> passing;
  std::vector<BranchGrid> grids;
  for (int k : distinct) {
    BranchGrid grid;
    try {
      grid = track_branch(p, B, spec, k);
    } catch (const StepCollapse&) {
      continue;
    }
    if (!grid.monodromy_ok) continue;

    // Residual gate over the tracked nodes.
    double resid = 0.0;
    for (int i = 0; i < spec.n_radii; ++i)
      for (int j = 0; j < spec.n_angles; ++j)
        resid = std::max(resid, std::abs(blaschke_eval(B, grid.nodes(i, j)) -
                                         cubic_eval(p, grid.values(i, j))));
    if (resid > 1e-8) continue;

    // Injectivity spot-check on a coarse subsample: distant nodes must not
    // share a value.
    bool injective = true;
    std::vector<std::pair<Complex, Complex>> sample;
    for (int i = 0; i < spec.n_radii && injective; i += 4)
      for (int j = 0; j < spec.n_angles; j += 8)
        sample.emplace_back(grid.nodes(i, j), grid.values(i, j));
    for (std::size_t a = 0; a < sample.size() && injective; ++a)
      for (std::size_t b = a + 1; b < sample.size(); ++b) {
        if (std::abs(sample[a].first - sample[b].first) < 1e-2) continue;
        if (std::abs(sample[a].second - sample[b].second) <= 1e-9) {
          injective = false;
          break;
        }
      }
    if (!injective) continue;

    passing.push_back(k);
    grids.push_back(std::move(grid));
  }

  if (passing.size() != 1)
    throw BranchSelectionFailure(std::to_string(passing.size()) + " of " +
                                 std::to_string(distinct.size()) +
                                 " seeds passed branch selection; expected exactly 1");

  BranchSelection sel;
  sel.grid = std::move(grids.front());
  sel.passing_seeds = std::move(passing);
  sel.seeds_tried = static_cast<int>(distinct.size());
  return sel;
}

BranchGrid select_analytic_branch(const DepressedCubic& p,
                                  const FiniteBlaschkeProduct& B,
                                  const PolarGridSpec& spec) {
  return select_analytic_branch_detailed(p, B, spec).grid;
}

Complex phi_eval(const BranchGrid& grid, const DepressedCubic& p,
                 const FiniteBlaschkeProduct& B, Complex z) {
  if (!grid.monodromy_ok)
    throw InvalidInput("phi_eval requires a grid with monodromy_ok");
  if (std::abs(z) >= 1.0) throw InvalidInput("phi_eval requires |z| < 1");

  const PolarGridSpec& spec = grid.spec;
  const std::vector<double> radii = grid_radii(spec);
  const double r = std::abs(z);
  double theta = std::arg(z);
  if (theta < 0.0) theta += 2.0 * kPi;

  const double step = 2.0 * kPi / spec.n_angles;
  int ja = static_cast<int>(theta / step);
  if (ja >= spec.n_angles) ja = spec.n_angles - 1;
  const int jb = (ja + 1) % spec.n_angles;
  const double t = theta / step - ja;

  auto ring_value = [&](int i) {
    return (1.0 - t) * grid.values(i, ja) + t * grid.values(i, jb);
  };

  Complex interp;
  if (r <= radii.front()) {
    const double s = r / radii.front();
    interp = (1.0 - s) * grid.seed_value + s * ring_value(0);
  } else if (r >= radii.back()) {
    interp = ring_value(spec.n_radii - 1);
  } else {
    const auto it = std::upper_bound(radii.begin(), radii.end(), r);
    const int hi = static_cast<int>(it - radii.begin());
    const int lo = hi - 1;
    const double s = (r - radii[lo]) / (radii[hi] - radii[lo]);
    interp = (1.0 - s) * ring_value(lo) + s * ring_value(hi);
  }

  const auto roots = fiber_roots(p, blaschke_eval(B, z));
  int best = 0, second = 1;
  double bd = std::abs(roots[0] - interp), sd = std::abs(roots[1] - interp);
  if (sd < bd) {
    std::swap(best, second);
    std::swap(bd, sd);
  }
  const double d2 = std::abs(roots[2] - interp);
  if (d2 < bd) {
    second = best;
    sd = bd;
    best = 2;
    bd = d2;
  } else if (d2 < sd) {
    second = 2;
    sd = d2;
  }
  if (std::abs(roots[best] - roots[second]) < 1e-9 && bd < 1e-9 && sd < 1e-9)
    throw AmbiguousFiber("two fiber roots within 1e-9 of the interpolant");
  return roots[best];
}

UVComboReport uv_combo_constancy(const BranchGrid& grid, const DepressedCubic& p,
                                 const FiniteBlaschkeProduct& B) {
  UVComboReport report;
  int counts[3] = {0, 0, 0};
  for (int i = 0; i < grid.spec.n_radii; ++i) {
    for (int j = 0; j < grid.spec.n_angles; ++j) {
      const Complex w = blaschke_eval(B, grid.nodes(i, j));
      int match = -1;
      double best = 1e300;
      try {
        for (int k = 0; k < 3; ++k) {
          const UVRadicals uv = algebraic_phi(p, w, k);
          const double d = std::abs(uv.U + uv.V - grid.values(i, j));
          if (d < best) {
            best = d;
            match = k;
          }
        }
      } catch (const ZeroU&) {
        ++report.skipped_nodes;
        continue;
      }
      if (best > 1e-7) {
        ++report.mismatched_nodes;
        continue;
      }
      ++counts[match];
    }
  }
  int dominant = 0;
  for (int k = 1; k < 3; ++k)
    if (counts[k] > counts[dominant]) dominant = k;
  report.dominant_branch = dominant;
  const int matched = counts[0] + counts[1] + counts[2];
  report.constant = report.mismatched_nodes == 0 && counts[dominant] == matched;
  return report;
}

}  // namespace pcm
