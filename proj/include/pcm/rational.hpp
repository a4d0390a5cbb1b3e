#pragma once

#include "pcm/polynomial.hpp"

namespace pcm {

// Quotient of dense polynomials.  No common-factor reduction is performed
// anywhere; callers must not assume num and den are coprime.
struct ComplexRational {
  ComplexPolynomial num;
  ComplexPolynomial den;  // never the zero polynomial
};

Complex rational_eval(const ComplexRational& r, Complex z);

// (num' den - num den') / den^2, left uncancelled.
ComplexRational rational_derivative(const ComplexRational& r);

}  // namespace pcm
