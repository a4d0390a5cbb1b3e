#pragma once

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "pcm/blaschke.hpp"
#include "pcm/complex.hpp"

namespace pcm::testing {

inline std::mt19937_64 make_rng(std::uint64_t seed) {
  return std::mt19937_64(seed);
}

inline Complex random_in_disk(std::mt19937_64& rng, double r_max = 1.0) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = r_max * std::sqrt(u(rng));
  const double th = 2.0 * kPi * u(rng);
  return r * unit_phase(th);
}

inline Complex random_unimodular(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * kPi);
  return unit_phase(u(rng));
}

inline Complex random_on_circle(std::mt19937_64& rng, double radius) {
  return radius * random_unimodular(rng);
}

inline FiniteBlaschkeProduct random_blaschke(std::mt19937_64& rng, int degree,
                                             double zero_radius = 0.9) {
  std::vector<Complex> zeros;
  for (int k = 0; k < degree; ++k) zeros.push_back(random_in_disk(rng, zero_radius));
  return FiniteBlaschkeProduct(random_unimodular(rng), std::move(zeros));
}

// Minimum over assignments of the largest per-root distance; infinity when
// the multiset sizes differ.  Brute force over permutations (n <= 8 here).
inline double multiset_match_distance(std::vector<Complex> a,
                                      std::vector<Complex> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  std::vector<std::size_t> perm(b.size());
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
      worst = std::max(worst, std::abs(a[i] - b[perm[i]]));
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Zeros drawn until every pairwise separation clears min_sep.
inline std::vector<Complex> random_separated_points(std::mt19937_64& rng, int count,
                                                    double radius, double min_sep) {
  std::vector<Complex> pts;
  while (static_cast<int>(pts.size()) < count) {
    const Complex cand = random_in_disk(rng, radius);
    bool ok = true;
    for (Complex p : pts)
      if (std::abs(cand - p) < min_sep) ok = false;
    if (ok) pts.push_back(cand);
  }
  return pts;
}

// The worked example used across the suite: lambda = 1, zeros 0, 3/4 and
// 1/4 + 7i/8.
inline FiniteBlaschkeProduct example_product() {
  return FiniteBlaschkeProduct(Complex{1.0, 0.0},
                               {Complex{0.0, 0.0}, Complex{0.75, 0.0},
                                Complex{0.25, 0.875}});
}

}  // namespace pcm::testing
