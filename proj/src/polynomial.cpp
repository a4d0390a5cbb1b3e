#include "pcm/polynomial.hpp"

#include <algorithm>

#include "pcm/errors.hpp"

namespace pcm {

namespace {

Eigen::VectorXcd trim_exact_zeros(Eigen::VectorXcd c) {
  Eigen::Index n = c.size();
  while (n > 0 && c[n - 1] == Complex{0.0, 0.0}) --n;
  c.conservativeResize(n);
  return c;
}

}  // namespace

ComplexPolynomial::ComplexPolynomial(Eigen::VectorXcd coeffs)
    : coeffs_(trim_exact_zeros(std::move(coeffs))) {
  for (Eigen::Index k = 0; k < coeffs_.size(); ++k) {
    if (!is_finite(coeffs_[k])) throw InvalidInput("non-finite polynomial coefficient");
  }
}

ComplexPolynomial::ComplexPolynomial(std::initializer_list<Complex> coeffs)
    : ComplexPolynomial(Eigen::Map<const Eigen::VectorXcd>(
          coeffs.begin(), static_cast<Eigen::Index>(coeffs.size()))) {}

ComplexPolynomial ComplexPolynomial::from_roots(std::span<const Complex> roots,
                                                Complex leading) {
  Eigen::VectorXcd c(1);
  c[0] = leading;
  for (Complex r : roots) {
    Eigen::VectorXcd next = Eigen::VectorXcd::Zero(c.size() + 1);
    next.tail(c.size()) += c;      // z * c
    next.head(c.size()) -= r * c;  // -r * c
    c = std::move(next);
  }
  return ComplexPolynomial(std::move(c));
}

double ComplexPolynomial::max_abs_coeff() const {
  double m = 0.0;
  for (Eigen::Index k = 0; k < coeffs_.size(); ++k)
    m = std::max(m, std::abs(coeffs_[k]));
  return m;
}

ComplexPolynomial trim_leading(const ComplexPolynomial& p, double rel_tol) {
  const double cutoff = rel_tol * p.max_abs_coeff();
  Eigen::Index n = p.coeffs().size();
  while (n > 0 && std::abs(p.coeffs()[n - 1]) <= cutoff) --n;
  return ComplexPolynomial(Eigen::VectorXcd(p.coeffs().head(n)));
}

Complex poly_eval(const ComplexPolynomial& p, Complex z) {
  const auto& c = p.coeffs();
  Complex acc{0.0, 0.0};
  for (Eigen::Index k = c.size() - 1; k >= 0; --k) acc = acc * z + c[k];
  return acc;
}

ComplexPolynomial poly_derivative(const ComplexPolynomial& p) {
  const auto& c = p.coeffs();
  if (c.size() <= 1) return ComplexPolynomial();
  Eigen::VectorXcd d(c.size() - 1);
  for (Eigen::Index k = 1; k < c.size(); ++k) d[k - 1] = static_cast<double>(k) * c[k];
  return ComplexPolynomial(std::move(d));
}

ComplexPolynomial operator+(const ComplexPolynomial& a, const ComplexPolynomial& b) {
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(std::max(a.coeffs().size(), b.coeffs().size()));
  c.head(a.coeffs().size()) += a.coeffs();
  c.head(b.coeffs().size()) += b.coeffs();
  return ComplexPolynomial(std::move(c));
}

ComplexPolynomial operator-(const ComplexPolynomial& a, const ComplexPolynomial& b) {
  return a + (Complex{-1.0, 0.0} * b);
}

ComplexPolynomial operator*(const ComplexPolynomial& a, const ComplexPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return ComplexPolynomial();
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(a.coeffs().size() + b.coeffs().size() - 1);
  for (Eigen::Index i = 0; i < a.coeffs().size(); ++i)
    for (Eigen::Index j = 0; j < b.coeffs().size(); ++j)
      c[i + j] += a.coeffs()[i] * b.coeffs()[j];
  return ComplexPolynomial(std::move(c));
}

ComplexPolynomial operator*(Complex s, const ComplexPolynomial& p) {
  return ComplexPolynomial(Eigen::VectorXcd(s * p.coeffs()));
}

}  // namespace pcm
