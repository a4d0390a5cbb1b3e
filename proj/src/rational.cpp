#include "pcm/rational.hpp"

#include "pcm/errors.hpp"

namespace pcm {

Complex rational_eval(const ComplexRational& r, Complex z) {
  return poly_eval(r.num, z) / poly_eval(r.den, z);
}

ComplexRational rational_derivative(const ComplexRational& r) {
  if (r.den.is_zero()) throw InvalidInput("rational with zero denominator");
  ComplexRational d;
  d.num = poly_derivative(r.num) * r.den - r.num * poly_derivative(r.den);
  d.den = r.den * r.den;
  return d;
}

}  // namespace pcm
