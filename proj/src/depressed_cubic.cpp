#include "pcm/depressed_cubic.hpp"

namespace pcm {

ComplexPolynomial to_polynomial(const DepressedCubic& p) {
  return ComplexPolynomial{p.d, p.c, Complex{0.0, 0.0}, Complex{1.0, 0.0}};
}

std::array<Complex, 2> cubic_critical_points(const DepressedCubic& p) {
  const Complex s = std::sqrt(-p.c / 3.0);
  return {s, -s};
}

std::array<Complex, 2> cubic_critical_values(const DepressedCubic& p) {
  const auto pts = cubic_critical_points(p);
  return {cubic_eval(p, pts[0]), cubic_eval(p, pts[1])};
}

}  // namespace pcm
