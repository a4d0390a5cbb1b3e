#pragma once

#include <Eigen/Core>
#include <initializer_list>
#include <span>

#include "pcm/complex.hpp"

namespace pcm {

// Dense complex polynomial, coefficients lowest power first.  The zero
// polynomial is the empty coefficient vector; otherwise the leading
// coefficient is nonzero (exactly-zero leading entries are trimmed on
// construction, near-zero ones are left to the solvers to reject).
class ComplexPolynomial {
 public:
  ComplexPolynomial() = default;
  explicit ComplexPolynomial(Eigen::VectorXcd coeffs);
  ComplexPolynomial(std::initializer_list<Complex> coeffs);

  static ComplexPolynomial from_roots(std::span<const Complex> roots,
                                      Complex leading = Complex{1.0, 0.0});

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.size() == 0; }
  const Eigen::VectorXcd& coeffs() const { return coeffs_; }
  Complex coeff(int k) const {
    return (k >= 0 && k < coeffs_.size()) ? coeffs_[k] : Complex{0.0, 0.0};
  }
  Complex leading() const {
    return is_zero() ? Complex{0.0, 0.0} : coeffs_[coeffs_.size() - 1];
  }
  double max_abs_coeff() const;

 private:
  Eigen::VectorXcd coeffs_;
};

// Horner evaluation.
Complex poly_eval(const ComplexPolynomial& p, Complex z);

// Coefficient-shift derivative; the degree drops by exactly one (the
// derivative of a constant is the zero polynomial).
ComplexPolynomial poly_derivative(const ComplexPolynomial& p);

// Drops leading coefficients of size <= rel_tol * max|coeff|; cancellation
// in polynomial combinations leaves analytically-zero leading terms as
// rounding residue.
ComplexPolynomial trim_leading(const ComplexPolynomial& p, double rel_tol = 1e-12);

ComplexPolynomial operator+(const ComplexPolynomial& a, const ComplexPolynomial& b);
ComplexPolynomial operator-(const ComplexPolynomial& a, const ComplexPolynomial& b);
ComplexPolynomial operator*(const ComplexPolynomial& a, const ComplexPolynomial& b);
ComplexPolynomial operator*(Complex s, const ComplexPolynomial& p);

}  // namespace pcm
