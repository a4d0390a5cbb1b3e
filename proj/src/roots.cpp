#include "pcm/roots.hpp"

#include <algorithm>
#include <cmath>

#include "pcm/errors.hpp"

namespace pcm {

namespace {

bool lex_less(Complex a, Complex b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

// Square root of d with the sign chosen so that adding it to ref does not
// cancel: Re(conj(ref) * s) >= 0.
Complex directed_sqrt(Complex d, Complex ref) {
  Complex s = std::sqrt(d);
  if ((std::conj(ref) * s).real() < 0.0) s = -s;
  return s;
}

// Monic z^2 + b z + c.
void roots_quadratic(Complex b, Complex c, std::vector<Complex>& out) {
  Complex s = directed_sqrt(b * b - 4.0 * c, -b);
  Complex q = 0.5 * (-b + s);
  if (q == Complex{0.0, 0.0}) {
    out.push_back({0.0, 0.0});
    out.push_back(-b);
  } else {
    out.push_back(q);
    out.push_back(c / q);  // Viete
  }
}

// Monic z^3 + a2 z^2 + a1 z + a0, via depression and Cardano.
void roots_cubic(Complex a2, Complex a1, Complex a0, std::vector<Complex>& out) {
  const Complex shift = a2 / 3.0;
  const Complex pc = a1 - a2 * a2 / 3.0;
  const Complex qc = a0 - a2 * a1 / 3.0 + 2.0 * a2 * a2 * a2 / 27.0;

  const double scale = std::abs(pc) + std::abs(qc);
  if (scale < 1e-300) {  // triple root
    for (int k = 0; k < 3; ++k) out.push_back(-shift);
    return;
  }

  const Complex s = directed_sqrt(qc * qc / 4.0 + pc * pc * pc / 27.0, -qc / 2.0);
  const Complex u3 = -qc / 2.0 + s;
  const Complex omega{-0.5, 0.8660254037844386467637231707529362};
  if (std::abs(u3) < 1e-300) {
    // pc ~ 0 with qc != 0 cannot reach here thanks to the sqrt sign; this is
    // the fully degenerate fallback.
    Complex r = principal_nth_root(-qc, 3);
    Complex w{1.0, 0.0};
    for (int k = 0; k < 3; ++k, w *= omega) out.push_back(r * w - shift);
    return;
  }
  const Complex u = principal_nth_root(u3, 3);
  const Complex v = -pc / (3.0 * u);
  Complex wu{1.0, 0.0}, wv{1.0, 0.0};
  const Complex omega2 = omega * omega;
  for (int k = 0; k < 3; ++k) {
    out.push_back(u * wu + v * wv - shift);
    wu *= omega;
    wv *= omega2;
  }
}

// Monic z^4 + a3 z^3 + a2 z^2 + a1 z + a0, Ferrari through the resolvent
// cubic.
void roots_quartic(Complex a3, Complex a2, Complex a1, Complex a0,
                   std::vector<Complex>& out) {
  const Complex shift = a3 / 4.0;
  const Complex p4 = a2 - 3.0 * a3 * a3 / 8.0;
  const Complex q4 = a1 - a3 * a2 / 2.0 + a3 * a3 * a3 / 8.0;
  const Complex r4 = a0 - a3 * a1 / 4.0 + a3 * a3 * a2 / 16.0 -
                     3.0 * a3 * a3 * a3 * a3 / 256.0;

  std::vector<Complex> ts;
  const double scale = 1.0 + std::abs(p4) + std::abs(r4);
  if (std::abs(q4) <= 1e-14 * scale) {
    // Biquadratic: y^2 + p4 y + r4 with t = +-sqrt(y).
    std::vector<Complex> ys;
    roots_quadratic(p4, r4, ys);
    for (Complex y : ys) {
      Complex s = std::sqrt(y);
      ts.push_back(s);
      ts.push_back(-s);
    }
  } else {
    // Resolvent m^3 + p4 m^2 + (p4^2/4 - r4) m - q4^2/8 = 0; any root works,
    // the largest keeps sqrt(2m) well away from zero.
    std::vector<Complex> ms;
    roots_cubic(p4, p4 * p4 / 4.0 - r4, -q4 * q4 / 8.0, ms);
    Complex m = ms[0];
    for (Complex cand : ms)
      if (std::abs(cand) > std::abs(m)) m = cand;

    const Complex w = std::sqrt(2.0 * m);
    const Complex shift_q = q4 / (2.0 * w);
    // (t^2 + p4/2 + m)^2 = (w t - shift_q)^2
    roots_quadratic(-w, p4 / 2.0 + m + shift_q, ts);
    roots_quadratic(w, p4 / 2.0 + m - shift_q, ts);
  }
  for (Complex t : ts) out.push_back(t - shift);
}

}  // namespace

Complex principal_nth_root(Complex w, int n) {
  if (n < 1) throw InvalidInput("principal_nth_root requires n >= 1");
  if (w == Complex{0.0, 0.0}) throw ZeroInput("principal_nth_root of zero");
  if (n == 1) return w;
  const double r = std::pow(std::abs(w), 1.0 / static_cast<double>(n));
  const double a = std::arg(w) / static_cast<double>(n);
  return {r * std::cos(a), r * std::sin(a)};
}

Complex newton_polish(const ComplexPolynomial& p, Complex z0) {
  const ComplexPolynomial dp = poly_derivative(p);
  const double target = 1e-13 * (1.0 + p.max_abs_coeff());

  Complex z = z0;
  Complex best = z0;
  double best_res = std::abs(poly_eval(p, z0));
  for (int iter = 0; iter < 50; ++iter) {
    const Complex f = poly_eval(p, z);
    const double res = std::abs(f);
    if (res < best_res) {
      best_res = res;
      best = z;
    }
    if (best_res <= target) break;
    const Complex df = poly_eval(dp, z);
    if (std::abs(df) < 1e-300) break;  // no usable step: keep best iterate
    const Complex step = f / df;
    z -= step;
    if (std::abs(step) < 1e-15 * (1.0 + std::abs(z))) {
      const double final_res = std::abs(poly_eval(p, z));
      if (final_res < best_res) best = z;
      break;
    }
  }
  return best;
}

std::vector<Complex> solve_low_degree(const ComplexPolynomial& p) {
  const int deg = p.degree();
  if (deg < 1 || deg > 4)
    throw DegreeOutOfRange("solve_low_degree handles degrees 1 through 4, got " +
                           std::to_string(deg));
  if (std::abs(p.leading()) < 1e-14 * p.max_abs_coeff())
    throw DegreeOutOfRange("leading coefficient is degenerately small");

  const Complex lead = p.leading();
  Eigen::VectorXcd monic = p.coeffs() / lead;
  const ComplexPolynomial pm{Eigen::VectorXcd(monic)};

  std::vector<Complex> roots;
  switch (deg) {
    case 1:
      roots.push_back(-monic[0]);
      break;
    case 2:
      roots_quadratic(monic[1], monic[0], roots);
      break;
    case 3:
      roots_cubic(monic[2], monic[1], monic[0], roots);
      break;
    default:
      roots_quartic(monic[3], monic[2], monic[1], monic[0], roots);
      break;
  }
  for (Complex& r : roots) r = newton_polish(pm, r);

  // A double root polished one residual at a time lands only ~sqrt(eps)
  // close, which is not tight enough for multiplicity clustering.  Where two
  // roots nearly coincide, their midpoint is re-polished against p' (where
  // the double root is simple again) and adopted whenever it still satisfies
  // p itself.
  const ComplexPolynomial dpm = poly_derivative(pm);
  const double snap_target = 1e-12 * (1.0 + pm.max_abs_coeff());
  for (std::size_t i = 0; i < roots.size(); ++i) {
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      if (std::abs(roots[i] - roots[j]) > 1e-6) continue;
      const Complex candidate = newton_polish(dpm, 0.5 * (roots[i] + roots[j]));
      if (std::abs(poly_eval(pm, candidate)) <= snap_target)
        roots[i] = roots[j] = candidate;
    }
  }

  std::sort(roots.begin(), roots.end(), lex_less);
  return roots;
}

std::vector<Complex> all_roots_oracle(const ComplexPolynomial& p,
                                      int max_iterations) {
  const int deg = p.degree();
  if (deg < 1) throw DegreeOutOfRange("all_roots_oracle requires degree >= 1");
  if (std::abs(p.leading()) < 1e-14 * p.max_abs_coeff())
    throw DegreeOutOfRange("leading coefficient is degenerately small");

  Eigen::VectorXcd monic = p.coeffs() / p.leading();
  const ComplexPolynomial pm{Eigen::VectorXcd(monic)};

  double bound = 0.0;
  for (Eigen::Index k = 0; k + 1 < monic.size(); ++k)
    bound = std::max(bound, std::abs(monic[k]));
  bound += 1.0;

  std::vector<Complex> z(deg);
  const Complex spin{0.4, 0.9};
  Complex w = spin;
  for (int k = 0; k < deg; ++k) {
    z[k] = bound * w / std::abs(w);
    w *= spin;
  }

  const double coeff_scale = 1.0 + pm.max_abs_coeff();
  bool converged = false;
  for (int iter = 0; iter < max_iterations && !converged; ++iter) {
    double max_step = 0.0;
    double max_mod = 0.0;
    for (int k = 0; k < deg; ++k) {
      Complex denom{1.0, 0.0};
      for (int j = 0; j < deg; ++j) {
        if (j == k) continue;
        denom *= z[k] - z[j];
      }
      if (denom == Complex{0.0, 0.0}) {
        z[k] += Complex{1e-8, 1e-8};
        max_step = 1.0;
        continue;
      }
      const Complex step = poly_eval(pm, z[k]) / denom;
      z[k] -= step;
      max_step = std::max(max_step, std::abs(step));
      max_mod = std::max(max_mod, std::abs(z[k]));
    }
    if (max_step < 1e-13 * (1.0 + max_mod)) {
      converged = true;
      break;
    }
    double max_res = 0.0;
    for (int k = 0; k < deg; ++k)
      max_res = std::max(max_res, std::abs(poly_eval(pm, z[k])));
    if (max_res <= 1e-13 * coeff_scale) converged = true;
  }
  if (!converged)
    throw NonConvergence("Durand-Kerner did not converge within " +
                         std::to_string(max_iterations) + " iterations");

  for (Complex& r : z) r = newton_polish(pm, r);
  std::sort(z.begin(), z.end(), lex_less);
  return z;
}

std::vector<std::pair<Complex, int>> cluster_roots(
    const std::vector<Complex>& roots, double tol) {
  struct Cluster {
    Complex sum{0.0, 0.0};
    int count = 0;
    Complex mean() const { return sum / static_cast<double>(count); }
  };
  std::vector<Cluster> clusters;
  for (Complex r : roots) {
    Cluster* home = nullptr;
    for (Cluster& c : clusters) {
      if (std::abs(r - c.mean()) <= tol) {
        home = &c;
        break;
      }
    }
    if (!home) {
      clusters.push_back({});
      home = &clusters.back();
    }
    home->sum += r;
    home->count += 1;
  }
  std::vector<std::pair<Complex, int>> out;
  out.reserve(clusters.size());
  for (const Cluster& c : clusters) out.emplace_back(c.mean(), c.count);
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return lex_less(a.first, b.first); });
  return out;
}

}  // namespace pcm
