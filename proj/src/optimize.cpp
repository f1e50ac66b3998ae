#include "supgof/optimize.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

namespace supgof {

namespace {

constexpr double kEdge = 1e-9;  // stay strictly inside the open square

double eval(const std::function<double(double, double)>& g, double x, double y) {
  if (x < kEdge || x > 1.0 - kEdge || y < kEdge || y > 1.0 - kEdge)
    return -1e300;
  return g(x, y);
}

struct Vertex {
  double x, y, f;  // f = -g, we minimize
};

double diameter(const Vertex* v) {
  double d = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      d = std::max(d, std::hypot(v[i].x - v[j].x, v[i].y - v[j].y));
  return d;
}

// Standard two-dimensional Nelder-Mead on -g, started at (x0,y0) with edge h.
Vertex nelder_mead(const std::function<double(double, double)>& g, double x0,
                   double y0, double h, double xtol) {
  auto F = [&](double x, double y) { return -eval(g, x, y); };
  Vertex v[3] = {{x0, y0, F(x0, y0)},
                 {x0 + h, y0, F(x0 + h, y0)},
                 {x0, y0 + h, F(x0, y0 + h)}};
  for (int iter = 0; iter < 600 && diameter(v) > xtol; ++iter) {
    std::sort(v, v + 3, [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
    const double cx = 0.5 * (v[0].x + v[1].x), cy = 0.5 * (v[0].y + v[1].y);
    auto make = [&](double t) {
      Vertex p{cx + t * (cx - v[2].x), cy + t * (cy - v[2].y), 0.0};
      p.f = F(p.x, p.y);
      return p;
    };
    Vertex r = make(1.0);
    if (r.f < v[0].f) {
      Vertex e = make(2.0);
      v[2] = e.f < r.f ? e : r;
    } else if (r.f < v[1].f) {
      v[2] = r;
    } else {
      Vertex c = r.f < v[2].f ? make(0.5) : make(-0.5);
      if (c.f < std::min(r.f, v[2].f)) {
        v[2] = c;
      } else {  // shrink toward the best vertex
        for (int i = 1; i < 3; ++i) {
          v[i].x = v[0].x + 0.5 * (v[i].x - v[0].x);
          v[i].y = v[0].y + 0.5 * (v[i].y - v[0].y);
          v[i].f = F(v[i].x, v[i].y);
        }
      }
    }
  }
  std::sort(v, v + 3, [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
  return v[0];
}

}  // namespace

MaxResult maximize_unit_square(const std::function<double(double, double)>& g,
                               int coarse, int restarts, double xtol) {
  struct Cell {
    double v, x, y;
  };
  std::vector<Cell> cells;
  cells.reserve(static_cast<std::size_t>(coarse) * coarse);
  for (int i = 1; i <= coarse; ++i)
    for (int j = 1; j <= coarse; ++j) {
      const double x = static_cast<double>(i) / (coarse + 1);
      const double y = static_cast<double>(j) / (coarse + 1);
      cells.push_back({eval(g, x, y), x, y});
    }
  std::sort(cells.begin(), cells.end(),
            [](const Cell& a, const Cell& b) { return a.v > b.v; });

  // Seeds: best cells, kept mutually separated so restarts explore distinct
  // basins instead of piling onto the incumbent.
  const double sep = 2.5 / (coarse + 1);
  std::vector<Cell> seeds;
  for (const Cell& c : cells) {
    bool close = false;
    for (const Cell& s : seeds)
      if (std::max(std::abs(c.x - s.x), std::abs(c.y - s.y)) < sep) {
        close = true;
        break;
      }
    if (!close) seeds.push_back(c);
    if (static_cast<int>(seeds.size()) >= restarts) break;
  }

  MaxResult best{-1e300, 0.5, 0.5};
  const double h = 1.0 / (coarse + 1);
  for (const Cell& s : seeds) {
    Vertex v = nelder_mead(g, s.x, s.y, h, xtol);
    if (-v.f > best.value) best = {-v.f, v.x, v.y};
  }
  return best;
}

double minimize_scalar(const std::function<double(double)>& f, double lo,
                       double hi, double xtol) {
  const double span = std::max(hi - lo, 1e-30);
  int bits = static_cast<int>(std::ceil(std::log2(span / xtol)));
  bits = std::clamp(bits, 10, 50);
  auto r = boost::math::tools::brent_find_minima(f, lo, hi, bits);
  return r.first;
}

}  // namespace supgof
