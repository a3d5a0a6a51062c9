#include "crep/hull.hpp"

#include <algorithm>

#include "crep/error.hpp"

namespace crep {

namespace {

// Height of b above the chord from a to c.
double excess_over_chord(const Point2& a, const Point2& b, const Point2& c) {
  const double w = (b.x - a.x) / (c.x - a.x);
  return b.y - (a.y + w * (c.y - a.y));
}

template <typename Drop>
std::vector<std::size_t> monotone_chain(std::span<const Point2> pts, Drop drop) {
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (!(pts[i].x > pts[i - 1].x)) {
      throw Error(ErrorKind::InvalidArgument, "hull: x coordinates must be strictly increasing");
    }
  }
  std::vector<std::size_t> h;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (h.size() >= 2 && drop(pts[h[h.size() - 2]], pts[h.back()], pts[i])) h.pop_back();
    h.push_back(i);
  }
  return h;
}

}  // namespace

std::vector<std::size_t> upper_hull(std::span<const Point2> pts, double tol) {
  return monotone_chain(pts, [tol](const Point2& a, const Point2& b, const Point2& c) {
    return excess_over_chord(a, b, c) <= tol;
  });
}

std::vector<std::size_t> lower_hull(std::span<const Point2> pts, double tol) {
  return monotone_chain(pts, [tol](const Point2& a, const Point2& b, const Point2& c) {
    return excess_over_chord(a, b, c) >= -tol;
  });
}

double interpolate(std::span<const Point2> pts, std::span<const std::size_t> vertices, double x) {
  if (vertices.empty()) throw Error(ErrorKind::EmptyGrid, "interpolate: no vertices");
  if (x <= pts[vertices.front()].x) return pts[vertices.front()].y;
  if (x >= pts[vertices.back()].x) return pts[vertices.back()].y;
  const auto it = std::upper_bound(vertices.begin(), vertices.end(), x,
                                   [&](double v, std::size_t idx) { return v < pts[idx].x; });
  const Point2& b = pts[*it];
  const Point2& a = pts[*(it - 1)];
  if (x == a.x) return a.y;
  return a.y + (b.y - a.y) * ((x - a.x) / (b.x - a.x));
}

}  // namespace crep
