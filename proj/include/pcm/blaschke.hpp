#pragma once

#include <utility>
#include <vector>

#include "pcm/complex.hpp"
#include "pcm/rational.hpp"

namespace pcm {

// lambda * prod_j (z - a_j) / (1 - conj(a_j) z) with |lambda| = 1 and every
// zero strictly inside the unit disk.  Zeros within 1e-12 of the circle are
// rejected at construction.
class FiniteBlaschkeProduct {
 public:
  FiniteBlaschkeProduct(Complex lambda, std::vector<Complex> zeros);

  int degree() const { return static_cast<int>(zeros_.size()); }
  Complex lambda() const { return lambda_; }
  const std::vector<Complex>& zeros() const { return zeros_; }

 private:
  Complex lambda_;
  std::vector<Complex> zeros_;
};

// Disk automorphism tau(z) = (e^{i theta} z + a) / (1 + conj(a) e^{i theta} z),
// parameterized so that tau(0) = a for every theta.
struct MobiusDisk {
  Complex a{0.0, 0.0};  // tau(0)
  double theta = 0.0;
};

struct CriticalData {
  std::vector<std::pair<Complex, int>> points;  // (z, multiplicity), |z| < 1
  std::vector<Complex> values;                  // B at each point
};

// Canonical equally-spaced-zeros shape
//   B(z) = lambda (z^n - base^n) / (1 - conj(base)^n z^n),
// whose zeros are base times the n-th roots of unity.
struct EquallySpacedForm {
  Complex lambda;
  Complex base;
  int n = 1;
};

Complex blaschke_eval(const FiniteBlaschkeProduct& B, Complex z);

// Expanded numerator/denominator; agrees with blaschke_eval to ~1e-12 on the
// closed disk.
ComplexRational as_rational(const FiniteBlaschkeProduct& B);

// Roots of the derivative numerator inside the disk, clustered into
// multiplicities and paired with critical values.  Requires degree <= 3
// (quartic solver limit); throws SolverFailure when the count inside the
// disk does not come out to degree - 1.
CriticalData critical_points_in_disk(const FiniteBlaschkeProduct& B);

MobiusDisk disk_automorphism(Complex a);
Complex mobius_apply(const MobiusDisk& tau, Complex z);
Complex mobius_apply_inverse(const MobiusDisk& tau, Complex z);

// B composed with tau, returned in canonical (lambda, zeros) form:
// zeros pull back through tau^{-1} and lambda is recovered by evaluating the
// factored quotient at a reference point away from the zeros.
FiniteBlaschkeProduct precompose(const FiniteBlaschkeProduct& B,
                                 const MobiusDisk& tau);

// Succeeds iff the n-th powers of all zeros agree within 1e-9 and the
// resulting form reproduces blaschke_eval within 1e-10; base is the
// principal n-th root of the common power.  Throws NotEquallySpaced.
EquallySpacedForm canonicalize_equally_spaced(const FiniteBlaschkeProduct& B);

Complex equally_spaced_eval(const EquallySpacedForm& form, Complex z);
FiniteBlaschkeProduct to_blaschke(const EquallySpacedForm& form);

}  // namespace pcm
