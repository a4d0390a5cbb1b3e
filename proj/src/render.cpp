#include "pcm/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <unordered_map>

#include "pcm/errors.hpp"

namespace pcm {

namespace {

double node_x(const ScalarField& f, int ix) {
  return f.bounds.re_min + (f.bounds.re_max - f.bounds.re_min) * ix / (f.nx - 1);
}
double node_y(const ScalarField& f, int iy) {
  return f.bounds.im_min + (f.bounds.im_max - f.bounds.im_min) * iy / (f.ny - 1);
}

// Grid edges carry contour vertices: horizontal edge (ix,iy)-(ix+1,iy) and
// vertical edge (ix,iy)-(ix,iy+1) get distinct keys.
std::int64_t h_edge(int ix, int iy, int nx) { return 2 * (std::int64_t(iy) * nx + ix); }
std::int64_t v_edge(int ix, int iy, int nx) {
  return 2 * (std::int64_t(iy) * nx + ix) + 1;
}

struct ContourAccumulator {
  std::unordered_map<std::int64_t, std::array<double, 2>> vertex;
  std::unordered_map<std::int64_t, std::vector<std::int64_t>> adjacency;

  void segment(std::int64_t a, std::int64_t b) {
    adjacency[a].push_back(b);
    adjacency[b].push_back(a);
  }
};

void fmt(std::string& out, const char* format, double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, value);
  out += buf;
}

std::string path_data(const Polyline& line,
                      const std::function<std::array<double, 2>(double, double)>& to_px,
                      bool close) {
  std::string d;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const auto px = to_px(line[i][0], line[i][1]);
    d += (i == 0) ? "M" : "L";
    fmt(d, "%.3f", px[0]);
    d += " ";
    fmt(d, "%.3f", px[1]);
    d += " ";
  }
  if (close) d += "Z";
  return d;
}

Polyline circle_polyline(double radius, int segments = 512) {
  Polyline line;
  line.reserve(segments + 1);
  for (int k = 0; k <= segments; ++k) {
    const double th = 2.0 * kPi * k / segments;
    line.push_back({radius * std::cos(th), radius * std::sin(th)});
  }
  return line;
}

bool is_closed(const Polyline& line) {
  return line.size() > 2 && line.front() == line.back();
}

}  // namespace

ScalarField sample_modulus(const std::function<Complex(Complex)>& f,
                           const Bounds& bounds, int nx, int ny,
                           const std::function<bool(Complex)>& mask) {
  if (nx < 16 || ny < 16) throw InvalidInput("sample_modulus needs nx, ny >= 16");
  ScalarField field;
  field.bounds = bounds;
  field.nx = nx;
  field.ny = ny;
  field.values.resize(ny, nx);
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      const Complex z{node_x(field, ix), node_y(field, iy)};
      field.values(iy, ix) =
          (mask && !mask(z)) ? std::nan("") : std::abs(f(z));
    }
  }
  return field;
}

std::vector<Polyline> extract_contours(const ScalarField& field, double level) {
  ContourAccumulator acc;
  const int nx = field.nx, ny = field.ny;
  const auto& v = field.values;

  auto edge_vertex = [&](std::int64_t key, int ix0, int iy0, int ix1, int iy1) {
    if (acc.vertex.count(key)) return;
    const double va = v(iy0, ix0), vb = v(iy1, ix1);
    const double t = (level - va) / (vb - va);
    acc.vertex[key] = {node_x(field, ix0) + t * (node_x(field, ix1) - node_x(field, ix0)),
                       node_y(field, iy0) + t * (node_y(field, iy1) - node_y(field, iy0))};
  };

  for (int iy = 0; iy + 1 < ny; ++iy) {
    for (int ix = 0; ix + 1 < nx; ++ix) {
      const double v00 = v(iy, ix), v10 = v(iy, ix + 1);
      const double v11 = v(iy + 1, ix + 1), v01 = v(iy + 1, ix);
      if (std::isnan(v00) || std::isnan(v10) || std::isnan(v11) || std::isnan(v01))
        continue;

      int code = 0;
      if (v00 < level) code |= 1;
      if (v10 < level) code |= 2;
      if (v11 < level) code |= 4;
      if (v01 < level) code |= 8;
      if (code == 0 || code == 15) continue;

      const std::int64_t bottom = h_edge(ix, iy, nx);
      const std::int64_t top = h_edge(ix, iy + 1, nx);
      const std::int64_t left = v_edge(ix, iy, nx);
      const std::int64_t right = v_edge(ix + 1, iy, nx);
      auto B = [&] { edge_vertex(bottom, ix, iy, ix + 1, iy); return bottom; };
      auto T = [&] { edge_vertex(top, ix, iy + 1, ix + 1, iy + 1); return top; };
      auto L = [&] { edge_vertex(left, ix, iy, ix, iy + 1); return left; };
      auto R = [&] { edge_vertex(right, ix + 1, iy, ix + 1, iy + 1); return right; };

      switch (code) {
        case 1:  acc.segment(L(), B()); break;
        case 2:  acc.segment(B(), R()); break;
        case 3:  acc.segment(L(), R()); break;
        case 4:  acc.segment(R(), T()); break;
        case 6:  acc.segment(B(), T()); break;
        case 7:  acc.segment(L(), T()); break;
        case 8:  acc.segment(T(), L()); break;
        case 9:  acc.segment(B(), T()); break;
        case 11: acc.segment(R(), T()); break;
        case 12: acc.segment(R(), L()); break;
        case 13: acc.segment(B(), R()); break;
        case 14: acc.segment(L(), B()); break;
        case 5: {  // saddle: resolve with the cell-center value
          const double center = 0.25 * (v00 + v10 + v11 + v01);
          if (center < level) {
            acc.segment(L(), T());
            acc.segment(B(), R());
          } else {
            acc.segment(L(), B());
            acc.segment(R(), T());
          }
          break;
        }
        case 10: {
          const double center = 0.25 * (v00 + v10 + v11 + v01);
          if (center < level) {
            acc.segment(B(), L());
            acc.segment(R(), T());
          } else {
            acc.segment(B(), R());
            acc.segment(T(), L());
          }
          break;
        }
        default: break;
      }
    }
  }

  // Chain segments into polylines: open chains first (endpoints of degree
  // one), then the remaining closed loops.
  std::unordered_map<std::int64_t, std::vector<std::int64_t>> remaining = acc.adjacency;
  auto consume = [&](std::int64_t from, std::int64_t to) {
    auto& fa = remaining[from];
    fa.erase(std::find(fa.begin(), fa.end(), to));
    auto& ta = remaining[to];
    ta.erase(std::find(ta.begin(), ta.end(), from));
  };

  std::vector<Polyline> polylines;
  auto walk = [&](std::int64_t start) {
    std::deque<std::int64_t> chain{start};
    for (int dir = 0; dir < 2; ++dir) {
      std::int64_t cur = (dir == 0) ? chain.back() : chain.front();
      while (!remaining[cur].empty()) {
        const std::int64_t nxt = remaining[cur].front();
        consume(cur, nxt);
        if (nxt == start) break;  // loop closed; the caller re-appends the start
        if (dir == 0)
          chain.push_back(nxt);
        else
          chain.push_front(nxt);
        cur = nxt;
      }
    }
    Polyline line;
    line.reserve(chain.size());
    for (std::int64_t key : chain) line.push_back(acc.vertex.at(key));
    return line;
  };

  std::vector<std::int64_t> keys;
  keys.reserve(remaining.size());
  for (const auto& [key, adj] : remaining) keys.push_back(key);
  std::sort(keys.begin(), keys.end());  // deterministic traversal order

  for (std::int64_t key : keys)
    if (remaining[key].size() == 1) polylines.push_back(walk(key));
  for (std::int64_t key : keys)
    if (!remaining[key].empty()) {
      Polyline loop = walk(key);
      loop.push_back(loop.front());
      polylines.push_back(std::move(loop));
    }
  return polylines;
}

int component_count(const ScalarField& field, double threshold) {
  const int nx = field.nx, ny = field.ny;
  auto inside = [&](int ix, int iy) {
    const double v = field.values(iy, ix);
    return !std::isnan(v) && v < threshold;
  };
  std::vector<char> seen(static_cast<std::size_t>(nx) * ny, 0);
  int components = 0;
  std::vector<std::pair<int, int>> stack;
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      if (seen[std::size_t(iy) * nx + ix] || !inside(ix, iy)) continue;
      ++components;
      stack.push_back({ix, iy});
      seen[std::size_t(iy) * nx + ix] = 1;
      while (!stack.empty()) {
        const auto [cx, cy] = stack.back();
        stack.pop_back();
        const int dx[4] = {1, -1, 0, 0};
        const int dy[4] = {0, 0, 1, -1};
        for (int d = 0; d < 4; ++d) {
          const int qx = cx + dx[d], qy = cy + dy[d];
          if (qx < 0 || qy < 0 || qx >= nx || qy >= ny) continue;
          if (seen[std::size_t(qy) * nx + qx] || !inside(qx, qy)) continue;
          seen[std::size_t(qy) * nx + qx] = 1;
          stack.push_back({qx, qy});
        }
      }
    }
  }
  return components;
}

LevelCurveFigure make_level_curve_figure(ScalarField field,
                                         std::vector<double> levels,
                                         std::optional<double> disk_rim) {
  if (levels.empty()) throw InvalidInput("a figure needs at least one level");
  for (std::size_t k = 0; k < levels.size(); ++k) {
    if (levels[k] <= 0.0 || levels[k] > 1.0)
      throw InvalidInput("levels must lie in (0, 1]");
    if (k > 0 && levels[k] <= levels[k - 1])
      throw InvalidInput("levels must be strictly increasing");
  }

  LevelCurveFigure fig;
  fig.levels = std::move(levels);
  const int bands = static_cast<int>(fig.levels.size());
  for (int k = 0; k < bands; ++k) {
    const int gray =
        bands == 1 ? 242 : 242 - (104 * k) / (bands - 1);  // 242 down to 138
    fig.band_grays.push_back(gray);
  }

  double finite_max = 0.0;
  for (int iy = 0; iy < field.ny; ++iy)
    for (int ix = 0; ix < field.nx; ++ix) {
      const double v = field.values(iy, ix);
      if (!std::isnan(v)) finite_max = std::max(finite_max, v);
    }

  for (double level : fig.levels) {
    if (disk_rim && level >= finite_max)
      fig.contours.push_back({});  // the rim stands in for this level
    else
      fig.contours.push_back(extract_contours(field, level));
  }
  fig.field = std::move(field);
  fig.disk_rim = disk_rim;
  return fig;
}

std::string render_figure(const LevelCurveFigure& fig, int size_px) {
  if (size_px < 100) throw InvalidInput("size_px must be at least 100");

  const Bounds& b = fig.field.bounds;
  const double sx = size_px / (b.re_max - b.re_min);
  const double sy = size_px / (b.im_max - b.im_min);
  auto to_px = [&](double x, double y) -> std::array<double, 2> {
    return {(x - b.re_min) * sx, (b.im_max - y) * sy};
  };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(size_px) + "\" height=\"" + std::to_string(size_px) +
         "\" viewBox=\"0 0 " + std::to_string(size_px) + " " +
         std::to_string(size_px) + "\">\n";
  svg += "<rect width=\"" + std::to_string(size_px) + "\" height=\"" +
         std::to_string(size_px) + "\" fill=\"#ffffff\"/>\n";

  auto gray_hex = [](int g) {
    char buf[8];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", g, g, g);
    return std::string(buf);
  };

  // Bands, darkest sublevel first so lighter inner bands overpaint it.
  for (int k = static_cast<int>(fig.levels.size()) - 1; k >= 0; --k) {
    std::string d;
    for (const Polyline& line : fig.contours[k]) d += path_data(line, to_px, true);
    if (fig.disk_rim && fig.contours[k].empty() && k + 1 == static_cast<int>(fig.levels.size()))
      d += path_data(circle_polyline(*fig.disk_rim), to_px, true);
    if (d.empty()) continue;
    svg += "<path class=\"band\" fill=\"" + gray_hex(fig.band_grays[k]) +
           "\" stroke=\"none\" d=\"" + d + "\"/>\n";
  }

  // Contour strokes, one path element per level.
  for (std::size_t k = 0; k < fig.levels.size(); ++k) {
    std::string d;
    for (const Polyline& line : fig.contours[k])
      d += path_data(line, to_px, is_closed(line));
    if (fig.disk_rim && fig.contours[k].empty() && k + 1 == fig.levels.size())
      d += path_data(circle_polyline(*fig.disk_rim), to_px, true);
    if (d.empty()) continue;
    svg += "<path class=\"level\" fill=\"none\" stroke=\"#000000\" "
           "stroke-width=\"1.5\" d=\"" + d + "\"/>\n";
  }

  svg += "</svg>\n";
  return svg;
}

double lemniscate_box_halfwidth(const ComplexPolynomial& p) {
  if (p.degree() < 1) throw InvalidInput("needs a nonconstant polynomial");
  const double lead = std::abs(p.leading());
  double m = (std::abs(p.coeff(0)) + 1.0) / lead;  // constant term shifted by |w| = 1
  for (int k = 1; k < p.degree(); ++k)
    m = std::max(m, std::abs(p.coeff(k)) / lead);
  return 1.1 * (1.0 + m);
}

std::pair<std::string, std::string> figure_pair(const FiniteBlaschkeProduct& B,
                                                const ConformalModel& m,
                                                int size_px, int grid_n) {
  std::vector<double> levels;
  for (Complex k : m.critical_values) levels.push_back(std::abs(k));
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-9; }),
               levels.end());
  levels.push_back(1.0);

  const ScalarField disk_field = sample_modulus(
      [&](Complex z) { return blaschke_eval(B, z); },
      Bounds{-1.0, 1.0, -1.0, 1.0}, grid_n, grid_n,
      [](Complex z) { return std::abs(z) < 1.0; });
  const LevelCurveFigure left = make_level_curve_figure(disk_field, levels, 1.0);

  const double half = lemniscate_box_halfwidth(m.p);
  const ScalarField box_field = sample_modulus(
      [&](Complex z) { return poly_eval(m.p, z); },
      Bounds{-half, half, -half, half}, grid_n, grid_n);
  const LevelCurveFigure right = make_level_curve_figure(box_field, levels, std::nullopt);

  return {render_figure(left, size_px), render_figure(right, size_px)};
}

}  // namespace pcm
