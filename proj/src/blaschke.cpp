#include "pcm/blaschke.hpp"

#include <algorithm>
#include <cmath>

#include "pcm/errors.hpp"
#include "pcm/roots.hpp"

namespace pcm {

namespace {

bool lex_less(Complex a, Complex b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

// Deterministic sample points sprinkled over the disk (golden-angle spiral).
std::vector<Complex> disk_samples(int count, double r_max = 0.95) {
  std::vector<Complex> pts;
  pts.reserve(count);
  const double golden = 0.6180339887498949;
  for (int k = 0; k < count; ++k) {
    const double r = r_max * std::sqrt((k + 0.5) / count);
    const double th = 2.0 * kPi * golden * k;
    pts.push_back(r * unit_phase(th));
  }
  return pts;
}

// Reference point farthest from every zero, for recovering lambda from a
// factored quotient without hitting 0/0.
Complex reference_point(const std::vector<Complex>& zeros) {
  static const Complex candidates[] = {{0.0, 0.0}, {0.3, 0.0}, {0.0, 0.7}};
  Complex best = candidates[0];
  double best_dist = -1.0;
  for (Complex cand : candidates) {
    double dist = 2.0;
    for (Complex a : zeros) dist = std::min(dist, std::abs(cand - a));
    if (dist > best_dist) {
      best_dist = dist;
      best = cand;
    }
  }
  return best;
}

Complex factored_part(const std::vector<Complex>& zeros, Complex z) {
  Complex w{1.0, 0.0};
  for (Complex a : zeros) w *= (z - a) / (1.0 - std::conj(a) * z);
  return w;
}

}  // namespace

FiniteBlaschkeProduct::FiniteBlaschkeProduct(Complex lambda,
                                             std::vector<Complex> zeros)
    : lambda_(lambda), zeros_(std::move(zeros)) {
  if (!is_finite(lambda_)) throw InvalidInput("non-finite lambda");
  if (std::abs(std::abs(lambda_) - 1.0) > 1e-12)
    throw InvalidInput("lambda is not unimodular");
  if (zeros_.empty()) throw InvalidInput("a Blaschke product needs at least one zero");
  for (Complex a : zeros_) {
    if (!is_finite(a)) throw InvalidInput("non-finite zero");
    if (std::abs(a) >= 1.0 - 1e-12)
      throw OutsideDisk("zero too close to the unit circle");
  }
}

Complex blaschke_eval(const FiniteBlaschkeProduct& B, Complex z) {
  return B.lambda() * factored_part(B.zeros(), z);
}

ComplexRational as_rational(const FiniteBlaschkeProduct& B) {
  ComplexRational r;
  r.num = ComplexPolynomial::from_roots(B.zeros(), B.lambda());
  ComplexPolynomial den{Complex{1.0, 0.0}};
  for (Complex a : B.zeros())
    den = den * ComplexPolynomial{Complex{1.0, 0.0}, -std::conj(a)};
  r.den = den;
  return r;
}

CriticalData critical_points_in_disk(const FiniteBlaschkeProduct& B) {
  if (B.degree() > 3)
    throw DegreeOutOfRange("critical point extraction is limited to degree <= 3");

  CriticalData data;
  const int expected = B.degree() - 1;
  if (expected == 0) return data;

  const ComplexRational deriv = rational_derivative(as_rational(B));
  // The top coefficient of the derivative numerator cancels analytically
  // (the critical points reflect across the circle); trim the rounding
  // residue it leaves behind.
  const ComplexPolynomial numer = trim_leading(deriv.num);
  if (numer.degree() < 1) throw SolverFailure("derivative numerator is constant");

  std::vector<Complex> inside;
  for (Complex r : solve_low_degree(numer))
    if (std::abs(r) < 1.0) inside.push_back(r);

  auto clustered = cluster_roots(inside, 1e-7);
  // A multiple root polished one by one lands only ~sqrt(eps) close; refine
  // the cluster representative against derivative numerators where it is a
  // simple root again.
  for (auto& [point, mult] : clustered) {
    ComplexPolynomial target = numer;
    for (int k = 1; k < mult; ++k) target = poly_derivative(target);
    point = newton_polish(target, point);
  }

  int total = 0;
  for (const auto& [point, mult] : clustered) total += mult;
  if (total != expected)
    throw SolverFailure("found " + std::to_string(total) +
                        " critical points in the disk, expected " +
                        std::to_string(expected));

  data.points = std::move(clustered);
  for (const auto& [point, mult] : data.points)
    data.values.push_back(blaschke_eval(B, point));
  return data;
}

MobiusDisk disk_automorphism(Complex a) {
  if (!is_finite(a) || std::abs(a) >= 1.0)
    throw OutsideDisk("automorphism base point must lie inside the disk");
  return MobiusDisk{a, 0.0};
}

Complex mobius_apply(const MobiusDisk& tau, Complex z) {
  const Complex rot = unit_phase(tau.theta);
  return (rot * z + tau.a) / (1.0 + std::conj(tau.a) * rot * z);
}

Complex mobius_apply_inverse(const MobiusDisk& tau, Complex z) {
  const Complex rot = unit_phase(-tau.theta);
  return rot * (z - tau.a) / (1.0 - std::conj(tau.a) * z);
}

FiniteBlaschkeProduct precompose(const FiniteBlaschkeProduct& B,
                                 const MobiusDisk& tau) {
  std::vector<Complex> zeros;
  zeros.reserve(B.zeros().size());
  for (Complex a : B.zeros()) zeros.push_back(mobius_apply_inverse(tau, a));

  const Complex z0 = reference_point(zeros);
  const Complex lambda =
      blaschke_eval(B, mobius_apply(tau, z0)) / factored_part(zeros, z0);
  return FiniteBlaschkeProduct(lambda, std::move(zeros));
}

EquallySpacedForm canonicalize_equally_spaced(const FiniteBlaschkeProduct& B) {
  const int n = B.degree();
  std::vector<Complex> powers;
  powers.reserve(n);
  Complex mean{0.0, 0.0};
  for (Complex a : B.zeros()) {
    powers.push_back(ipow(a, n));
    mean += powers.back();
  }
  mean /= static_cast<double>(n);
  for (Complex w : powers)
    if (std::abs(w - mean) > 1e-9)
      throw NotEquallySpaced("n-th powers of the zeros disagree");

  EquallySpacedForm form;
  form.n = n;
  form.base = (mean == Complex{0.0, 0.0}) ? Complex{0.0, 0.0}
                                          : principal_nth_root(mean, n);

  const Complex z0 = reference_point(B.zeros());
  const Complex z0n = ipow(z0, n);
  Complex lambda = blaschke_eval(B, z0) * (1.0 - std::conj(mean) * z0n) / (z0n - mean);
  lambda /= std::abs(lambda);
  form.lambda = lambda;

  for (Complex z : disk_samples(100)) {
    if (std::abs(equally_spaced_eval(form, z) - blaschke_eval(B, z)) > 1e-10)
      throw NotEquallySpaced("equally spaced form does not reproduce the product");
  }
  return form;
}

Complex equally_spaced_eval(const EquallySpacedForm& form, Complex z) {
  const Complex cn = ipow(form.base, form.n);
  const Complex zn = ipow(z, form.n);
  return form.lambda * (zn - cn) / (1.0 - std::conj(cn) * zn);
}

FiniteBlaschkeProduct to_blaschke(const EquallySpacedForm& form) {
  std::vector<Complex> zeros;
  zeros.reserve(form.n);
  for (int k = 0; k < form.n; ++k)
    zeros.push_back(form.base * unit_phase(2.0 * kPi * k / form.n));
  std::sort(zeros.begin(), zeros.end(), lex_less);
  return FiniteBlaschkeProduct(form.lambda, std::move(zeros));
}

}  // namespace pcm
