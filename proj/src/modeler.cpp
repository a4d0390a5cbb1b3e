#include "pcm/modeler.hpp"

#include <cmath>
#include <utility>

#include "pcm/errors.hpp"
#include "pcm/roots.hpp"
#include "pcm/verify.hpp"

namespace pcm {

namespace {

Complex equally_spaced_phi(const EquallySpacedForm& form, Complex z) {
  const Complex cn = ipow(form.base, form.n);
  const Complex radicand = 1.0 - std::conj(cn) * ipow(z, form.n);
  return unit_phase(kPi / form.n) * z / principal_nth_root(radicand, form.n);
}

ConformalModel finalize(ConformalModel m, const FiniteBlaschkeProduct& B,
                        const ModelOptions& opt) {
  m.residual_certificate = residual_sup(B, m, opt.grid);
  if (m.residual_certificate > opt.residual_tolerance)
    throw SolverFailure("model residual " + std::to_string(m.residual_certificate) +
                        " exceeds the construction tolerance");
  return m;
}

// Common tail of the degree-2 and degenerate degree-3 paths: pull the given
// critical point to the origin, canonicalize, model the closed form.
ConformalModel model_via_precomposition(const FiniteBlaschkeProduct& B,
                                        Complex critical_point,
                                        const ModelOptions& opt) {
  const MobiusDisk tau = disk_automorphism(critical_point);
  const FiniteBlaschkeProduct pulled = precompose(B, tau);
  const EquallySpacedForm form = canonicalize_equally_spaced(pulled);
  ConformalModel m = model_equally_spaced(form, opt);
  m.pre_automorphism = tau;
  m.modeled = pulled;
  return finalize(std::move(m), B, opt);
}

}  // namespace

Complex evaluate_phi(const ConformalModel& m, Complex z) {
  const Complex zz =
      m.pre_automorphism ? mobius_apply_inverse(*m.pre_automorphism, z) : z;
  switch (m.kind) {
    case ModelCase::Degree1:
      return blaschke_eval(m.modeled, zz);
    case ModelCase::EquallySpaced:
      return equally_spaced_phi(*m.equally_spaced, zz);
    case ModelCase::Degree3Generic:
      return phi_eval(*m.phi_grid, *m.depressed, m.modeled, zz);
  }
  throw Error("unreachable model case");
}

DepressedCubic depressed_cubic_coeffs(Complex k1, Complex k2) {
  if (std::abs(k1 - k2) <= 1e-10 * (1.0 + std::abs(k1) + std::abs(k2)))
    throw DegenerateCriticalValues("critical values coincide");
  const Complex cr = principal_nth_root((k2 - k1) / 4.0, 3);
  return DepressedCubic{-3.0 * cr * cr, (k1 + k2) / 2.0};
}

ConformalModel model_degree_one(const FiniteBlaschkeProduct& B,
                                const ModelOptions& opt) {
  if (B.degree() != 1) throw WrongDegree("model_degree_one expects degree 1");
  ConformalModel m{ModelCase::Degree1,
                   ComplexPolynomial{Complex{0.0, 0.0}, Complex{1.0, 0.0}},
                   std::nullopt,
                   B,
                   std::nullopt,
                   std::nullopt,
                   std::nullopt,
                   {},
                   0.0};
  return finalize(std::move(m), B, opt);
}

ConformalModel model_equally_spaced(const EquallySpacedForm& form,
                                    const ModelOptions& opt) {
  if (!(std::abs(form.base) < 1.0) || form.n < 1)
    throw InvalidInput("equally spaced form needs |base| < 1 and n >= 1");

  const Complex cn = ipow(form.base, form.n);
  const double mod2n = std::norm(cn);  // |base|^(2n)
  Eigen::VectorXcd coeffs = Eigen::VectorXcd::Zero(form.n + 1);
  coeffs[0] = -form.lambda * cn;
  coeffs[form.n] = form.lambda * (mod2n - 1.0);

  const FiniteBlaschkeProduct modeled = to_blaschke(form);
  ConformalModel m{ModelCase::EquallySpaced,
                   ComplexPolynomial{std::move(coeffs)},
                   std::nullopt,
                   modeled,
                   form,
                   std::nullopt,
                   std::nullopt,
                   {},
                   0.0};
  if (form.n >= 2) m.critical_values = {-form.lambda * cn};
  return finalize(std::move(m), modeled, opt);
}

ConformalModel model_degree_three(const FiniteBlaschkeProduct& B,
                                  const ModelOptions& opt) {
  if (B.degree() != 3) throw WrongDegree("model_degree_three expects degree 3");

  const CriticalData crit = critical_points_in_disk(B);
  if (crit.points.size() == 1)  // double critical point
    return model_via_precomposition(B, crit.points[0].first, opt);
  if (std::abs(crit.points[0].first - crit.points[1].first) <= 1e-8)
    return model_via_precomposition(B, crit.points[0].first, opt);

  const Complex k1 = crit.values[0];
  const Complex k2 = crit.values[1];
  const DepressedCubic cubic = depressed_cubic_coeffs(k1, k2);
  BranchSelection sel = select_analytic_branch_detailed(cubic, B, opt.grid);

  ConformalModel m{ModelCase::Degree3Generic,
                   to_polynomial(cubic),
                   std::nullopt,
                   B,
                   std::nullopt,
                   cubic,
                   std::move(sel.grid),
                   {k1, k2},
                   0.0};
  return finalize(std::move(m), B, opt);
}

ConformalModel model(const FiniteBlaschkeProduct& B, const ModelOptions& opt) {
  if (B.degree() == 1) return model_degree_one(B, opt);
  try {
    const EquallySpacedForm form = canonicalize_equally_spaced(B);
    ConformalModel m = model_equally_spaced(form, opt);
    m.modeled = B;
    return finalize(std::move(m), B, opt);
  } catch (const NotEquallySpaced&) {
  }
  if (B.degree() == 2) {
    const CriticalData crit = critical_points_in_disk(B);
    return model_via_precomposition(B, crit.points[0].first, opt);
  }
  if (B.degree() == 3) return model_degree_three(B, opt);
  throw UnsupportedInput(
      "no construction for degree >= 4 unless the zeros are equally spaced "
      "on a circle centered at the origin");
}

}  // namespace pcm
