#include "fractmap/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

namespace fractmap::dimension {

namespace {

constexpr double kHalfSqrt3 = 0.8660254037844386;  // sqrt(3)/2
constexpr double kParamTol = 1e-12;
constexpr double kVertexSnapTol = 1e-9;
// Overlap below this fraction of a cell's scale is treated as boundary
// contact, not occupancy.
constexpr double kAreaTolFactor = 1e-9;

// Yardsticks / box sizes: validated positive, sorted descending, exact
// duplicates dropped.
std::vector<double> descending_distinct(std::span<const double> values,
                                        const char* what) {
  std::vector<double> out(values.begin(), values.end());
  for (double v : out) {
    if (!std::isfinite(v) || v <= 0.0) {
      throw NonPositiveValue(std::string(what) + " values must be finite and positive");
    }
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.size() < 2) {
    throw DegenerateFit(std::string(what) + " needs at least 2 distinct values");
  }
  return out;
}

using Ring = std::vector<Point>;

double cross(const Point& o, const Point& a, const Point& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

double ring_area(const Ring& ring) {
  double twice = 0.0;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const Point& a = ring[i];
    const Point& b = ring[(i + 1) % ring.size()];
    twice += a.x * b.y - a.y * b.x;
  }
  return std::abs(twice) / 2.0;
}

// Keep the part of `subject` on or left of edge a->b (Sutherland-Hodgman
// step; the clip window must be convex and counter-clockwise).
Ring clip_to_edge(const Ring& subject, const Point& a, const Point& b) {
  Ring out;
  std::size_t n = subject.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& cur = subject[i];
    const Point& nxt = subject[(i + 1) % n];
    double dc = cross(a, b, cur);
    double dn = cross(a, b, nxt);
    bool cur_in = dc >= 0.0;
    bool nxt_in = dn >= 0.0;
    if (cur_in) out.push_back(cur);
    if (cur_in != nxt_in) {
      double t = dc / (dc - dn);
      out.push_back({cur.x + t * (nxt.x - cur.x), cur.y + t * (nxt.y - cur.y)});
    }
  }
  return out;
}

double clipped_area(const Ring& subject, const Ring& window) {
  Ring cur = subject;
  for (std::size_t i = 0; i < window.size() && cur.size() >= 3; ++i) {
    cur = clip_to_edge(cur, window[i], window[(i + 1) % window.size()]);
  }
  return cur.size() >= 3 ? ring_area(cur) : 0.0;
}

// Parameter range of segment p->q inside a convex counter-clockwise
// window; false when the overlap is empty.
bool clip_segment(const Point& p, const Point& q, const Ring& window,
                  double& t0, double& t1) {
  t0 = 0.0;
  t1 = 1.0;
  for (std::size_t i = 0; i < window.size(); ++i) {
    const Point& a = window[i];
    const Point& b = window[(i + 1) % window.size()];
    double dp = cross(a, b, p);
    double dq = cross(a, b, q);
    if (dp < 0.0 && dq < 0.0) return false;
    if (dp >= 0.0 && dq >= 0.0) continue;
    double t = dp / (dp - dq);
    if (dp < 0.0) {
      t0 = std::max(t0, t);
    } else {
      t1 = std::min(t1, t);
    }
    if (t0 > t1) return false;
  }
  return true;
}

// Occupied-cell key: (a, b, kind). Square cells use kind 0; triangular
// rows alternate upward (1) and downward (2) cells.
using CellKey = std::tuple<long long, long long, int>;

struct Grid {
  Point origin;
  double size = 1.0;
  GridLattice lattice = GridLattice::Square;

  double row_height() const { return size * kHalfSqrt3; }
  double row_x(long long r) const {
    return origin.x + static_cast<double>(r) * size / 2.0;
  }

  Ring square_window(long long i, long long j) const {
    double x = origin.x + static_cast<double>(i) * size;
    double y = origin.y + static_cast<double>(j) * size;
    return {{x, y}, {x + size, y}, {x + size, y + size}, {x, y + size}};
  }
  Ring up_window(long long r, long long m) const {
    double x = row_x(r) + static_cast<double>(m) * size;
    double y = origin.y + static_cast<double>(r) * row_height();
    return {{x, y}, {x + size, y}, {x + size / 2.0, y + row_height()}};
  }
  Ring down_window(long long r, long long m) const {
    double x = row_x(r) + static_cast<double>(m) * size;
    double y = origin.y + static_cast<double>(r) * row_height();
    return {{x + size, y},
            {x + 1.5 * size, y + row_height()},
            {x + size / 2.0, y + row_height()}};
  }
};

long long floor_index(double offset, double step) {
  return static_cast<long long>(std::floor(offset / step));
}

void add_point(const Grid& g, const Point& p, std::set<CellKey>& cells) {
  if (g.lattice == GridLattice::Square) {
    cells.insert({floor_index(p.x - g.origin.x, g.size),
                  floor_index(p.y - g.origin.y, g.size), 0});
    return;
  }
  double h = g.row_height();
  long long r = floor_index(p.y - g.origin.y, h);
  double lx = p.x - g.row_x(r);
  long long m = floor_index(lx, g.size);
  double u = lx - static_cast<double>(m) * g.size;
  double v = p.y - (g.origin.y + static_cast<double>(r) * h);
  double edge = (v / h) * (g.size / 2.0);
  if (u >= edge && u <= g.size - edge) {
    cells.insert({r, m, 1});
  } else if (u < edge) {
    cells.insert({r, m - 1, 2});
  } else {
    cells.insert({r, m, 2});
  }
}

// Cells crossed by segment p->q on a square grid, via the parameter
// intervals between grid-line crossings (midpoint of each interval names
// the cell).
void add_segment_square(const Grid& g, const Point& p, const Point& q,
                        std::set<CellKey>& cells) {
  double dx = q.x - p.x;
  double dy = q.y - p.y;
  std::vector<double> ts{0.0, 1.0};
  auto collect = [&](double p0, double delta, double origin) {
    if (delta == 0.0) return;
    double lo = std::min(p0, p0 + delta);
    double hi = std::max(p0, p0 + delta);
    long long first = floor_index(lo - origin, g.size);
    long long last = floor_index(hi - origin, g.size) + 1;
    for (long long i = first; i <= last; ++i) {
      double line = origin + static_cast<double>(i) * g.size;
      double t = (line - p0) / delta;
      if (t > 0.0 && t < 1.0) ts.push_back(t);
    }
  };
  collect(p.x, dx, g.origin.x);
  collect(p.y, dy, g.origin.y);
  std::sort(ts.begin(), ts.end());
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    if (ts[i + 1] - ts[i] <= kParamTol) continue;
    double t = (ts[i] + ts[i + 1]) / 2.0;
    add_point(g, {p.x + t * dx, p.y + t * dy}, cells);
  }
}

// Candidate triangular cells around an axis-aligned box, with one cell of
// margin; the caller decides occupancy by clipping.
template <typename Fn>
void for_triangular_candidates(const Grid& g, const BoundingBox& box, Fn&& fn) {
  double h = g.row_height();
  long long r0 = floor_index(box.min.y - g.origin.y, h) - 1;
  long long r1 = floor_index(box.max.y - g.origin.y, h) + 1;
  for (long long r = r0; r <= r1; ++r) {
    long long m0 = floor_index(box.min.x - g.row_x(r), g.size) - 1;
    long long m1 = floor_index(box.max.x - g.row_x(r), g.size) + 1;
    for (long long m = m0; m <= m1; ++m) fn(r, m);
  }
}

void add_segment_triangular(const Grid& g, const Point& p, const Point& q,
                            std::set<CellKey>& cells) {
  BoundingBox box{{std::min(p.x, q.x), std::min(p.y, q.y)},
                  {std::max(p.x, q.x), std::max(p.y, q.y)}};
  double min_span = kParamTol;
  for_triangular_candidates(g, box, [&](long long r, long long m) {
    double t0 = 0.0, t1 = 0.0;
    if (clip_segment(p, q, g.up_window(r, m), t0, t1) && t1 - t0 > min_span) {
      cells.insert({r, m, 1});
    }
    if (clip_segment(p, q, g.down_window(r, m), t0, t1) && t1 - t0 > min_span) {
      cells.insert({r, m, 2});
    }
  });
}

void add_ring(const Grid& g, const Ring& ring, std::set<CellKey>& cells) {
  BoundingBox box{ring.front(), ring.front()};
  for (const Point& p : ring) {
    box.min.x = std::min(box.min.x, p.x);
    box.min.y = std::min(box.min.y, p.y);
    box.max.x = std::max(box.max.x, p.x);
    box.max.y = std::max(box.max.y, p.y);
  }
  double area_tol = kAreaTolFactor * g.size * g.size;
  if (g.lattice == GridLattice::Square) {
    long long i0 = floor_index(box.min.x - g.origin.x, g.size) - 1;
    long long i1 = floor_index(box.max.x - g.origin.x, g.size) + 1;
    long long j0 = floor_index(box.min.y - g.origin.y, g.size) - 1;
    long long j1 = floor_index(box.max.y - g.origin.y, g.size) + 1;
    for (long long i = i0; i <= i1; ++i) {
      for (long long j = j0; j <= j1; ++j) {
        if (clipped_area(ring, g.square_window(i, j)) > area_tol) {
          cells.insert({i, j, 0});
        }
      }
    }
    return;
  }
  for_triangular_candidates(g, box, [&](long long r, long long m) {
    if (clipped_area(ring, g.up_window(r, m)) > area_tol) {
      cells.insert({r, m, 1});
    }
    if (clipped_area(ring, g.down_window(r, m)) > area_tol) {
      cells.insert({r, m, 2});
    }
  });
}

void add_feature(const Grid& g, const Feature& f, std::set<CellKey>& cells) {
  if (const Point* p = std::get_if<Point>(&f.geometry)) {
    add_point(g, *p, cells);
    return;
  }
  const Polyline& line = std::get<Polyline>(f.geometry);
  validate_polyline(line);
  if (line.closed()) {
    Ring ring(line.vertices.begin(), line.vertices.end() - 1);
    add_ring(g, ring, cells);
    return;
  }
  for (std::size_t i = 0; i + 1 < line.vertices.size(); ++i) {
    const Point& p = line.vertices[i];
    const Point& q = line.vertices[i + 1];
    if (g.lattice == GridLattice::Square) {
      add_segment_square(g, p, q, cells);
    } else {
      add_segment_triangular(g, p, q, cells);
    }
  }
}

std::pair<MeasurementTable, PowerLawFit> box_count_impl(
    const FeatureSet& set, std::span<const double> box_sizes, GridLattice lattice) {
  if (set.empty()) throw EmptyGeometry("cannot box-count an empty feature set");
  std::vector<double> sizes = descending_distinct(box_sizes, "box sizes");
  BoundingBox bounds = bounding_box(set);

  MeasurementTable table;
  std::vector<double> inv_sizes;
  std::vector<double> counts;
  for (double s : sizes) {
    Grid grid{bounds.min, s, lattice};
    std::set<CellKey> cells;
    for (const Feature& f : set.features) add_feature(grid, f, cells);
    double n = static_cast<double>(cells.size());
    table.rows.push_back({s, n, n * s});
    inv_sizes.push_back(1.0 / s);
    counts.push_back(n);
  }
  PowerLawFit fit = fit_power_law(inv_sizes, counts);
  return {std::move(table), fit};
}

}  // namespace

double divider_walk(const Polyline& line, double yardstick) {
  validate_polyline(line);
  if (!std::isfinite(yardstick) || yardstick <= 0.0) {
    throw NonPositiveValue("yardstick must be finite and positive");
  }
  const std::vector<Point>& v = line.vertices;
  double reach = 0.0;
  for (const Point& p : v) reach = std::max(reach, distance(v.front(), p));
  if (reach < yardstick) {
    throw YardstickTooLarge("yardstick exceeds the polyline's reach from its start");
  }

  Point anchor = v.front();
  std::size_t seg = 0;
  double lo = 0.0;
  long long steps = 0;
  for (;;) {
    bool advanced = false;
    for (std::size_t i = seg; i + 1 < v.size(); ++i) {
      double t_lo = (i == seg) ? lo : 0.0;
      const Point& a = v[i];
      const Point& b = v[i + 1];
      double dx = b.x - a.x;
      double dy = b.y - a.y;
      double fx = a.x - anchor.x;
      double fy = a.y - anchor.y;
      double qa = dx * dx + dy * dy;
      double qb = 2.0 * (dx * fx + dy * fy);
      double qc = fx * fx + fy * fy - yardstick * yardstick;
      double disc = qb * qb - 4.0 * qa * qc;
      if (disc < 0.0) continue;
      double sq = std::sqrt(disc);
      double root1 = (-qb - sq) / (2.0 * qa);
      double root2 = (-qb + sq) / (2.0 * qa);
      double t;
      if (root1 >= t_lo - kParamTol && root1 <= 1.0 + kParamTol) {
        t = root1;
      } else if (root2 >= t_lo - kParamTol && root2 <= 1.0 + kParamTol) {
        t = root2;
      } else {
        continue;
      }
      t = std::clamp(t, t_lo, 1.0);
      ++steps;
      if (t >= 1.0 - kVertexSnapTol) {
        // Land on the stored vertex so vertex-aligned walks stay exact.
        anchor = b;
        seg = i + 1;
        lo = 0.0;
      } else {
        anchor = {a.x + t * dx, a.y + t * dy};
        seg = i;
        lo = t;
      }
      advanced = true;
      break;
    }
    if (!advanced) break;
  }
  return static_cast<double>(steps) + distance(anchor, v.back()) / yardstick;
}

std::pair<MeasurementTable, PowerLawFit> richardson_fit(
    const Polyline& line, std::span<const double> yardsticks) {
  std::vector<double> sticks = descending_distinct(yardsticks, "yardsticks");
  MeasurementTable table;
  std::vector<double> inv;
  std::vector<double> counts;
  for (double eps : sticks) {
    double n = divider_walk(line, eps);
    table.rows.push_back({eps, n, n * eps});
    inv.push_back(1.0 / eps);
    counts.push_back(n);
  }
  PowerLawFit fit = fit_power_law(inv, counts);
  return {std::move(table), fit};
}

std::pair<MeasurementTable, PowerLawFit> box_count(
    const FeatureSet& set, std::span<const double> box_sizes, GridLattice lattice) {
  return box_count_impl(set, box_sizes, lattice);
}

std::pair<MeasurementTable, PowerLawFit> box_count(
    const Polyline& line, std::span<const double> box_sizes, GridLattice lattice) {
  validate_polyline(line);
  Feature f;
  f.geometry = line;
  FeatureSet set{{std::move(f)}};
  return box_count_impl(set, box_sizes, lattice);
}

PowerLawFit fit_power_law(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw DegenerateFit("x and y series must have equal length");
  }
  if (xs.size() < 2) throw DegenerateFit("need at least 2 samples to fit");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(xs[i]) || xs[i] <= 0.0 || !std::isfinite(ys[i]) ||
        ys[i] <= 0.0) {
      throw NonPositiveValue("power-law fit requires positive finite data");
    }
  }
  bool all_equal = true;
  for (double x : xs) all_equal = all_equal && x == xs.front();
  if (all_equal) throw DegenerateFit("x values do not span");

  std::size_t n = xs.size();
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    lx[i] = std::log(xs[i]);
    ly[i] = std::log(ys[i]);
  }
  double mean_x = 0.0, mean_y = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_x += lx[i];
    mean_y += ly[i];
  }
  mean_x /= static_cast<double>(n);
  mean_y /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mean_x) * (lx[i] - mean_x);
    sxy += (lx[i] - mean_x) * (ly[i] - mean_y);
  }
  PowerLawFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = mean_y - fit.slope * mean_x;
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double predicted = fit.intercept + fit.slope * lx[i];
    ss_res += (ly[i] - predicted) * (ly[i] - predicted);
    ss_tot += (ly[i] - mean_y) * (ly[i] - mean_y);
  }
  fit.r_squared = ss_tot == 0.0 ? 1.0 : 1.0 - ss_res / ss_tot;
  fit.r_squared = std::clamp(fit.r_squared, 0.0, 1.0);
  fit.dimension = fit.slope;
  return fit;
}

}  // namespace fractmap::dimension
