#pragma once

#include <optional>
#include <vector>

#include "pcm/blaschke.hpp"
#include "pcm/continuation.hpp"
#include "pcm/depressed_cubic.hpp"

namespace pcm {

enum class ModelCase { Degree1, EquallySpaced, Degree3Generic };

// The polynomial conformal model for a finite Blaschke product B: a
// polynomial p of the same degree and a conformal phi with B = p(phi(z)) on
// the disk.  When pre_automorphism tau is set, the product actually modeled
// is B composed with tau and phi_total = phi o tau^{-1}; evaluate_phi
// performs that composition so callers always see B = p o phi_total.
struct ConformalModel {
  ModelCase kind;
  ComplexPolynomial p;
  std::optional<MobiusDisk> pre_automorphism;
  FiniteBlaschkeProduct modeled;  // B o tau (B itself when tau is absent)
  std::optional<EquallySpacedForm> equally_spaced;
  std::optional<DepressedCubic> depressed;
  std::optional<BranchGrid> phi_grid;
  std::vector<Complex> critical_values;
  double residual_certificate = 0.0;  // sup |B - p o phi_total| over the grid
};

struct ModelOptions {
  PolarGridSpec grid;
  double residual_tolerance = 1e-8;
};

Complex evaluate_phi(const ConformalModel& m, Complex z);

// c = -3 ((k2 - k1)/4)^{2/3} via the square of the principal cube root,
// d = (k1 + k2)/2.  Any cube-root branch yields the same critical-value set;
// the principal one is this library's canonical choice.  Throws
// DegenerateCriticalValues when |k1 - k2| <= 1e-10 (1 + |k1| + |k2|).
DepressedCubic depressed_cubic_coeffs(Complex k1, Complex k2);

ConformalModel model_degree_one(const FiniteBlaschkeProduct& B,
                                const ModelOptions& opt = {});
ConformalModel model_equally_spaced(const EquallySpacedForm& form,
                                    const ModelOptions& opt = {});
ConformalModel model_degree_three(const FiniteBlaschkeProduct& B,
                                  const ModelOptions& opt = {});

// Dispatch: degree 1 directly; equally spaced zeros (any degree) through the
// closed form; degree 2 through precomposition at the critical point; generic
// degree 3 through the depressed cubic and branch continuation.  Throws
// UnsupportedInput for degree >= 4 with zeros not equally spaced.
ConformalModel model(const FiniteBlaschkeProduct& B, const ModelOptions& opt = {});

}  // namespace pcm
