#pragma once

#include <array>

#include "pcm/polynomial.hpp"

namespace pcm {

// p(z) = z^3 + c z + d.  The critical points are the two square roots of
// -c/3; degenerate (c = 0) instances are handled by the equally-spaced path
// and never reach the generic machinery.
struct DepressedCubic {
  Complex c;
  Complex d;
};

inline Complex cubic_eval(const DepressedCubic& p, Complex z) {
  return (z * z + p.c) * z + p.d;
}

ComplexPolynomial to_polynomial(const DepressedCubic& p);

// {+s, -s} with s the principal square root of -c/3.
std::array<Complex, 2> cubic_critical_points(const DepressedCubic& p);

// p evaluated at the critical points, in the same order.
std::array<Complex, 2> cubic_critical_values(const DepressedCubic& p);

}  // namespace pcm
