#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace crep {

struct Point2 {
  double x;
  double y;
};

/// Indices of the upper convex hull vertices of points sorted by strictly
/// increasing x. A point is dropped when it lies no more than `tol` above the
/// chord of its neighbours. Both endpoints are always kept.
std::vector<std::size_t> upper_hull(std::span<const Point2> pts, double tol = 0.0);

/// Lower hull counterpart: a point is dropped when it lies no more than `tol`
/// below the chord.
std::vector<std::size_t> lower_hull(std::span<const Point2> pts, double tol = 0.0);

/// Linear interpolation of y between hull vertices, exact at the vertices.
double interpolate(std::span<const Point2> pts, std::span<const std::size_t> vertices, double x);

}  // namespace crep
