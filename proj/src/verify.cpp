#include "pcm/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "pcm/errors.hpp"

namespace pcm {

namespace {

// R2 low-discrepancy sequence (additive recurrence on the plastic constant),
// mapped to the disk.  The seed is an index offset, so any run is
// reproducible bit for bit.
class DiskSequence {
 public:
  explicit DiskSequence(std::uint64_t seed, double r_max)
      : index_(seed + 1), r_max_(r_max) {}

  Complex next() {
    constexpr double a1 = 0.7548776662466927;  // 1/g, g the plastic constant
    constexpr double a2 = 0.5698402909980532;  // 1/g^2
    const double k = static_cast<double>(index_++);
    const double u = std::fmod(0.5 + a1 * k, 1.0);
    const double v = std::fmod(0.5 + a2 * k, 1.0);
    return r_max_ * std::sqrt(u) * unit_phase(2.0 * kPi * v);
  }

 private:
  std::uint64_t index_;
  double r_max_;
};

bool segments_properly_intersect(const Complex& a1, const Complex& a2,
                                 const Complex& b1, const Complex& b2) {
  auto cross = [](const Complex& o, const Complex& p, const Complex& q) {
    return (p.real() - o.real()) * (q.imag() - o.imag()) -
           (p.imag() - o.imag()) * (q.real() - o.real());
  };
  const double d1 = cross(a1, a2, b1);
  const double d2 = cross(a1, a2, b2);
  const double d3 = cross(b1, b2, a1);
  const double d4 = cross(b1, b2, a2);
  return ((d1 > 0.0) != (d2 > 0.0)) && ((d3 > 0.0) != (d4 > 0.0));
}

}  // namespace

double residual_sup(const FiniteBlaschkeProduct& B, const ConformalModel& m,
                    const PolarGridSpec& spec) {
  const std::vector<double> radii = grid_radii(spec);
  double sup = 0.0;
  for (double r : radii) {
    for (int j = 0; j < spec.n_angles; ++j) {
      const Complex z = r * unit_phase(2.0 * kPi * j / spec.n_angles);
      const Complex defect =
          blaschke_eval(B, z) - poly_eval(m.p, evaluate_phi(m, z));
      sup = std::max(sup, std::abs(defect));
    }
  }
  return sup;
}

double boundary_defect(const FiniteBlaschkeProduct& B, const ConformalModel& m,
                       const PolarGridSpec& spec) {
  double sup = 0.0;
  for (int j = 0; j < spec.n_angles; ++j) {
    const Complex z = spec.r_max * unit_phase(2.0 * kPi * j / spec.n_angles);
    const double defect = std::abs(std::abs(poly_eval(m.p, evaluate_phi(m, z))) -
                                   std::abs(blaschke_eval(B, z)));
    sup = std::max(sup, defect);
  }
  return sup;
}

double injectivity_check(const ConformalModel& m, int n_pairs, double delta,
                         std::uint64_t seed, const PolarGridSpec& spec) {
  if (n_pairs < 1) throw InvalidInput("injectivity_check needs n_pairs >= 1");

  DiskSequence points(seed, spec.r_max);
  double min_sep = std::numeric_limits<double>::infinity();
  int accepted = 0;
  long attempts = 0;
  const long attempt_cap = 100L * n_pairs;
  while (accepted < n_pairs && attempts++ < attempt_cap) {
    const Complex z = points.next();
    const Complex w = points.next();
    if (std::abs(z - w) < delta) continue;
    min_sep = std::min(min_sep, std::abs(evaluate_phi(m, z) - evaluate_phi(m, w)));
    ++accepted;
  }

  // Boundary image: a closed polyline that must be free of proper
  // self-intersections.
  const int n_samples = 4 * spec.n_angles;
  std::vector<Complex> boundary(n_samples);
  for (int t = 0; t < n_samples; ++t)
    boundary[t] =
        evaluate_phi(m, spec.r_max * unit_phase(2.0 * kPi * t / n_samples));
  for (int i = 0; i < n_samples; ++i) {
    const Complex& a1 = boundary[i];
    const Complex& a2 = boundary[(i + 1) % n_samples];
    for (int k = i + 2; k < n_samples; ++k) {
      if (i == 0 && k == n_samples - 1) continue;  // adjacent around the wrap
      const Complex& b1 = boundary[k];
      const Complex& b2 = boundary[(k + 1) % n_samples];
      if (segments_properly_intersect(a1, a2, b1, b2))
        throw SelfIntersection(
            "boundary curve segments " + std::to_string(i) + " and " +
            std::to_string(k) + " cross (theta = " +
            std::to_string(2.0 * kPi * i / n_samples) + ", " +
            std::to_string(2.0 * kPi * k / n_samples) + ")");
    }
  }
  return min_sep;
}

int image_containment(const ConformalModel& m, const PolarGridSpec& spec) {
  const std::vector<double> radii = grid_radii(spec);
  int violations = 0;
  for (double r : radii)
    for (int j = 0; j < spec.n_angles; ++j) {
      const Complex z = r * unit_phase(2.0 * kPi * j / spec.n_angles);
      if (std::abs(poly_eval(m.p, evaluate_phi(m, z))) >= 1.0) ++violations;
    }
  return violations;
}

double critical_value_defect(const ConformalModel& m, Complex k1, Complex k2) {
  if (m.kind != ModelCase::Degree3Generic || !m.depressed)
    throw WrongCase("critical_value_defect applies to generic degree-3 models");
  const auto pts = cubic_critical_points(*m.depressed);
  const Complex v1 = poly_eval(m.p, pts[0]);
  const Complex v2 = poly_eval(m.p, pts[1]);
  const double pairing_a = std::max(std::abs(v1 - k1), std::abs(v2 - k2));
  const double pairing_b = std::max(std::abs(v1 - k2), std::abs(v2 - k1));
  return std::min(pairing_a, pairing_b);
}

bool uniqueness_probe(const FiniteBlaschkeProduct& B, const ConformalModel& m) {
  if (m.kind != ModelCase::Degree3Generic || !m.depressed || !m.phi_grid)
    return false;
  if (m.critical_values.size() != 2) return false;
  if (std::abs(m.critical_values[0] - m.critical_values[1]) <= 1e-10) return false;
  try {
    const BranchSelection sel =
        select_analytic_branch_detailed(*m.depressed, B, m.phi_grid->spec);
    return sel.passing_seeds.size() == 1;
  } catch (const Error&) {
    return false;
  }
}

VerificationReport run_verification(const FiniteBlaschkeProduct& B,
                                    const ConformalModel& m,
                                    const VerifyConfig& cfg) {
  VerificationReport report;
  report.seed = cfg.seed;
  report.residual_sup = residual_sup(B, m, cfg.grid);
  report.boundary_defect = boundary_defect(B, m, cfg.grid);
  report.image_containment_violations = image_containment(m, cfg.grid);

  bool injectivity_ok = true;
  try {
    report.injectivity_min_separation =
        injectivity_check(m, cfg.n_pairs, cfg.pair_delta, cfg.seed, cfg.grid);
  } catch (const Error&) {  // SelfIntersection or a fiber ambiguity
    injectivity_ok = false;
    report.injectivity_min_separation = 0.0;
  }

  bool critical_ok = true;
  if (m.kind == ModelCase::Degree3Generic) {
    report.critical_value_defect =
        critical_value_defect(m, m.critical_values[0], m.critical_values[1]);
    critical_ok = report.critical_value_defect <= cfg.critical_value_tol;
  }

  report.passed = report.residual_sup <= cfg.residual_tol &&
                  report.image_containment_violations == 0 &&
                  report.boundary_defect <=
                      report.residual_sup + cfg.boundary_slack &&
                  injectivity_ok && report.injectivity_min_separation > 0.0 &&
                  critical_ok;
  return report;
}

}  // namespace pcm
