#pragma once

#include <cmath>
#include <complex>

namespace pcm {

using Complex = std::complex<double>;

constexpr double kPi = 3.141592653589793238462643383279502884;

inline bool is_finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline Complex unit_phase(double theta) {
  return {std::cos(theta), std::sin(theta)};
}

// Integer power by repeated multiplication; exact for small n.
inline Complex ipow(Complex z, int n) {
  Complex w{1.0, 0.0};
  for (int k = 0; k < n; ++k) w *= z;
  return w;
}

}  // namespace pcm
