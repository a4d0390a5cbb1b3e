#pragma once

#include <Eigen/Core>
#include <array>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pcm/modeler.hpp"

namespace pcm {

struct Bounds {
  double re_min, re_max, im_min, im_max;
};

// |f| sampled on a node lattice; NaN marks nodes outside the domain of
// interest (they are excluded from flood fill and marching squares).
struct ScalarField {
  Bounds bounds{};
  int nx = 0, ny = 0;
  Eigen::MatrixXd values;  // values(iy, ix)
};

using Polyline = std::vector<std::array<double, 2>>;

// Critical level curves plus shaded modulus bands.  levels are strictly
// increasing in (0, 1]; band k covers moduli between levels[k-1] and
// levels[k] and band 0 everything below levels[0] (rendered lightest).
// disk_rim, when set, stands in for the level-1 contour of a disk-masked
// field whose samples never reach that level.
struct LevelCurveFigure {
  ScalarField field;
  std::vector<double> levels;
  std::vector<int> band_grays;  // 0..255, lightest first
  std::vector<std::vector<Polyline>> contours;  // per level
  std::optional<double> disk_rim;
};

ScalarField sample_modulus(const std::function<Complex(Complex)>& f,
                           const Bounds& bounds, int nx, int ny,
                           const std::function<bool(Complex)>& mask = {});

// Marching squares with linear edge interpolation; closed loops repeat
// their first vertex.
std::vector<Polyline> extract_contours(const ScalarField& field, double level);

// 4-connected components of {values < threshold}.
int component_count(const ScalarField& field, double threshold);

LevelCurveFigure make_level_curve_figure(ScalarField field,
                                         std::vector<double> levels,
                                         std::optional<double> disk_rim);

// Deterministic SVG 1.1 text; identical inputs yield identical bytes.
std::string render_figure(const LevelCurveFigure& fig, int size_px);

// Half-width of a square box guaranteed to contain {|p| <= 1}: Cauchy bound
// on the roots of p(z) - w over |w| = 1, padded 10%.
double lemniscate_box_halfwidth(const ComplexPolynomial& p);

// Left: |B| on the unit disk.  Right: |p| on the lemniscate bounding box.
// Shared levels {|k| : k critical value} + 1 and a shared grayscale, so
// corresponding bands match shade.
std::pair<std::string, std::string> figure_pair(const FiniteBlaschkeProduct& B,
                                                const ConformalModel& m,
                                                int size_px, int grid_n = 512);

}  // namespace pcm
