#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace nus {

/// Squared gradient norm per cell of a regular grid over the unit cube,
/// flattened row-major (last axis fastest).
struct GradientField {
  std::vector<std::size_t> shape;
  std::vector<double> beta2;

  std::size_t dimension() const noexcept { return shape.size(); }
  std::size_t cells() const noexcept { return beta2.size(); }
  void validate() const;
};

struct DensityField {
  std::vector<double> values;
};

/// Normalized moment of inertia of the cells: a constant, or one value per cell.
struct InertialProfile {
  double constant = 1.0 / 12.0;
  std::vector<double> per_cell;

  double at(std::size_t c) const { return per_cell.empty() ? constant : per_cell[c]; }
};

/// lambda proportional to max(beta2, eps)^(K / (K + 2)).
DensityField optimal_density_kd(const GradientField& field, double epsilon);

/// (K / N^(2/K)) * integral beta2 * m / lambda^(2/K).
double bennett_mse_kd(const GradientField& field, const DensityField& density, const InertialProfile& m,
                      std::size_t n);

/// (K * M_K / N^(2/K)) * (integral beta2^(K / (K + 2)))^((K + 2) / K).
double mse_lower_bound_kd(const GradientField& field, std::size_t n, double m_k);

/// `shape,n1,n2,...` header line, then one value per line.
GradientField read_gradient_csv(std::istream& in);
GradientField read_gradient_csv_file(const std::string& path);

using Point2 = std::array<double, 2>;

/// Second moment about the centroid over K * V^(1 + 2/K), K = 2, for a
/// convex polygon given counter-clockwise. Integrated with an edge-midpoint
/// rule on the centroid fan, which is exact for the quadratic integrand.
double polygon_inertia(const std::vector<Point2>& vertices);

std::vector<Point2> regular_polygon(std::size_t sides);

/// M_2 of the regular hexagon, by polygon_inertia.
double hexagon_inertia();

}  // namespace nus
