#pragma once

#include <cstdint>

#include "pcm/modeler.hpp"

namespace pcm {

// Every gate tolerance lives here; the defaults are the certification
// targets used throughout.
struct VerifyConfig {
  PolarGridSpec grid;
  double residual_tol = 1e-8;
  double critical_value_tol = 1e-10;
  double boundary_slack = 1e-12;
  int n_pairs = 2000;
  double pair_delta = 1e-3;
  std::uint64_t seed = 0;
};

struct VerificationReport {
  double residual_sup = 0.0;
  double injectivity_min_separation = 0.0;
  int image_containment_violations = 0;
  double critical_value_defect = 0.0;
  double boundary_defect = 0.0;
  bool passed = false;
  std::uint64_t seed = 0;
};

// sup over the polar grid of |B(z) - p(phi_total(z))|.
double residual_sup(const FiniteBlaschkeProduct& B, const ConformalModel& m,
                    const PolarGridSpec& spec);

// sup over the outermost grid ring of ||p(phi(z))| - |B(z)||.  Equal moduli
// as functions, so this is a floating-point echo of residual_sup.
double boundary_defect(const FiniteBlaschkeProduct& B, const ConformalModel& m,
                       const PolarGridSpec& spec);

// Minimum |phi(z) - phi(w)| over quasi-random pairs with |z - w| >= delta
// (R2 low-discrepancy sequence offset by the seed, so reports reproduce
// bit for bit), plus a self-intersection scan of the boundary polyline
// phi(r_max e^{i theta}) at 4 * n_angles samples.  Throws SelfIntersection.
double injectivity_check(const ConformalModel& m, int n_pairs, double delta,
                         std::uint64_t seed = 0,
                         const PolarGridSpec& spec = {});

// Number of grid nodes with |p(phi(z))| >= 1; must be zero.
int image_containment(const ConformalModel& m, const PolarGridSpec& spec);

// Hausdorff distance between the critical values of m.p (substituting the
// square roots of -c/3) and {k1, k2}.  Throws WrongCase unless the model is
// the generic degree-3 case.
double critical_value_defect(const ConformalModel& m, Complex k1, Complex k2);

// True iff the critical values are numerically distinct (|k1 - k2| > 1e-10)
// and re-running branch selection finds exactly one passing seed.
bool uniqueness_probe(const FiniteBlaschkeProduct& B, const ConformalModel& m);

VerificationReport run_verification(const FiniteBlaschkeProduct& B,
                                    const ConformalModel& m,
                                    const VerifyConfig& cfg = {});

}  // namespace pcm
