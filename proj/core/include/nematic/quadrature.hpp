#pragma once

#include <vector>

namespace nematic {

/// Quadrature rule on the reference triangle in barycentric coordinates.
/// Weights sum to 1; the caller scales by element area.
struct QuadratureRule {
  int degree = 0;
  std::vector<double> points;   // 3 barycentric coordinates per point
  std::vector<double> weights;  // one per point

  int n_points() const { return static_cast<int>(weights.size()); }
  const double* bary(int q) const { return &points[3 * q]; }
};

/// Supported degrees: 1 (centroid), 2 (edge midpoints), 4 (6-point rule).
QuadratureRule quadrature(int degree);

}  // namespace nematic
