#pragma once

#include <utility>
#include <vector>

#include "pcm/polynomial.hpp"

namespace pcm {

// Principal n-th root: modulus |w|^(1/n), argument arg(w)/n with
// arg in (-pi, pi].  Continuous everywhere off the negative real axis.
// Throws ZeroInput for w = 0.
Complex principal_nth_root(Complex w, int n);

// Newton refinement of a closed-form seed.  At most 50 steps; stops when
// |p(z)| <= 1e-13 * (1 + max|coeff|) or the step falls below 1e-15; returns
// the iterate with the smallest residual seen.  If p' vanishes at the
// current iterate no further progress is attempted and the best iterate so
// far (possibly the seed itself) is returned.
Complex newton_polish(const ComplexPolynomial& p, Complex z0);

// Closed-form roots with multiplicity (quadratic / Cardano / Ferrari), each
// Newton-polished, sorted by (re, im).  Throws DegreeOutOfRange unless
// 1 <= degree <= 4 or when |leading| < 1e-14 * max|coeff|.
std::vector<Complex> solve_low_degree(const ComplexPolynomial& p);

// Durand-Kerner simultaneous iteration, any degree >= 1.  Independent test
// oracle: production code paths must use solve_low_degree instead.  Throws
// NonConvergence when the iteration cap is exhausted.
std::vector<Complex> all_roots_oracle(const ComplexPolynomial& p,
                                      int max_iterations = 1000);

// Groups roots lying within tol of a cluster mean; returns (representative,
// multiplicity) pairs sorted by (re, im) of the representative.
std::vector<std::pair<Complex, int>> cluster_roots(
    const std::vector<Complex>& roots, double tol = 1e-7);

}  // namespace pcm
