#pragma once

#include <Eigen/Core>
#include <array>
#include <vector>

#include "pcm/blaschke.hpp"
#include "pcm/depressed_cubic.hpp"

namespace pcm {

struct PolarGridSpec {
  int n_radii = 64;
  int n_angles = 256;   // >= 8
  double r_max = 0.999; // < 1
};

// Radii cluster toward r_max (Chebyshev-type spacing); the last entry is
// exactly r_max.  Angles are uniform, theta_j = 2 pi j / n_angles.
std::vector<double> grid_radii(const PolarGridSpec& spec);

// One single-valued branch of p(phi) = B tracked over the polar grid.
// Node positions are the ideal lattice except that nodes within 1e-6 of a
// critical point of B are pushed 3e-6 outward radially.
struct BranchGrid {
  PolarGridSpec spec;
  Eigen::MatrixXcd nodes;   // n_radii x n_angles node positions
  Eigen::MatrixXcd values;  // tracked phi per node
  Complex seed_value;       // phi(0)
  int seed_index = 0;       // index into the sorted fiber over B(0)
  bool monodromy_ok = false;
  int max_step_refinements = 0;
};

// The three solutions of x^3 + c x + (d - w) = 0, sorted by (re, im).
std::array<Complex, 3> fiber_roots(const DepressedCubic& p, Complex w);

// Cardano radicals for one cube-root branch.  The square root sign is the
// principal one flipped, when needed, to keep -(d-w)/2 and the root from
// cancelling; V is derived from U so the coupling UV = -c/3 holds exactly.
struct UVRadicals {
  Complex discriminant_sqrt;  // a square root of (d-w)^2/4 + c^3/27
  Complex U;
  Complex V;
};

// Requires c != 0.  Throws ZeroU when the U radicand vanishes.
UVRadicals algebraic_phi(const DepressedCubic& p, Complex w, int branch);

// Continues the seed fiber root outward ring by ring and around each ring.
// Steps are tangent-predicted (phi' = B'/p'(phi)) and accepted only when the
// nearest fiber root lies within half the minimal pairwise fiber separation
// of the prediction; otherwise the step is bisected (up to 24 levels, then
// StepCollapse).  monodromy_ok records whether every ring closes within
// 1e-8 and every radial edge continues consistently, so a true grid is
// single-valued over the whole covered annulus.
BranchGrid track_branch(const DepressedCubic& p, const FiniteBlaschkeProduct& B,
                        const PolarGridSpec& spec, int seed_index);

struct BranchSelection {
  BranchGrid grid;                 // the unique passing branch
  std::vector<int> passing_seeds;  // seeds that passed every gate
  int seeds_tried = 0;
};

// Tracks every distinct seed and gates each grid on monodromy, grid
// residual <= 1e-8 and an injectivity spot-check.  Exactly one seed must
// pass; otherwise BranchSelectionFailure.
BranchSelection select_analytic_branch_detailed(const DepressedCubic& p,
                                                const FiniteBlaschkeProduct& B,
                                                const PolarGridSpec& spec);
BranchGrid select_analytic_branch(const DepressedCubic& p,
                                  const FiniteBlaschkeProduct& B,
                                  const PolarGridSpec& spec);

// Bilinear interpolation in (r, theta) snapped to the nearest fiber root of
// p over B(z); the snap restores |p(result) - B(z)| to solver precision.
// Throws AmbiguousFiber when two fiber roots are within 1e-9 of each other
// and of the interpolant.
Complex phi_eval(const BranchGrid& grid, const DepressedCubic& p,
                 const FiniteBlaschkeProduct& B, Complex z);

// Diagnostic: for each node, the algebraic_phi branch index whose candidate
// matches the tracked value; reports whether one index covers the grid.
// Matching is informational and never gates anything.
struct UVComboReport {
  bool constant = false;
  int dominant_branch = -1;
  int mismatched_nodes = 0;
  int skipped_nodes = 0;  // nodes where the U radicand degenerated
};
UVComboReport uv_combo_constancy(const BranchGrid& grid, const DepressedCubic& p,
                                 const FiniteBlaschkeProduct& B);

}  // namespace pcm
