#include "nus/multidim.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <sstream>

#include "nus/error.hpp"

namespace nus {

namespace {

// K = 1 goes through cbrt so that it agrees bit-for-bit with the 1-D module.
double density_power(double x, std::size_t k) {
  if (k == 1) return std::cbrt(x);
  return std::pow(x, static_cast<double>(k) / static_cast<double>(k + 2));
}

double parse_field(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data() + b, s.data() + e, v);
  if (b == e || ec != std::errc{} || ptr != s.data() + e)
    throw ParameterError("malformed gradient value '" + s + "'");
  return v;
}

}  // namespace

void GradientField::validate() const {
  if (shape.empty()) throw ParameterError("gradient field needs at least one axis");
  std::size_t total = 1;
  for (std::size_t n : shape) {
    if (n == 0) throw ParameterError("gradient field axis of length 0");
    total *= n;
  }
  if (total != beta2.size()) throw ParameterError("gradient values do not match the shape");
  for (double v : beta2)
    if (!(v >= 0.0) || !std::isfinite(v)) throw ParameterError("gradient energy must be finite and >= 0");
}

DensityField optimal_density_kd(const GradientField& field, double epsilon) {
  field.validate();
  if (!(epsilon > 0.0)) throw ParameterError("epsilon must be positive");
  const std::size_t k = field.dimension();
  DensityField out{std::vector<double>(field.cells())};
  double mass = 0.0;
  for (std::size_t c = 0; c < field.cells(); ++c) {
    out.values[c] = density_power(std::max(field.beta2[c], epsilon), k);
    mass += out.values[c];
  }
  mass *= 1.0 / static_cast<double>(field.cells());
  for (double& v : out.values) v /= mass;
  return out;
}

double bennett_mse_kd(const GradientField& field, const DensityField& density, const InertialProfile& m,
                      std::size_t n) {
  field.validate();
  if (n < 1) throw ParameterError("N must be positive");
  if (density.values.size() != field.cells()) throw ParameterError("density and gradient grids differ");
  if (!m.per_cell.empty() && m.per_cell.size() != field.cells())
    throw ParameterError("inertial profile and gradient grids differ");
  const std::size_t k = field.dimension();
  const double kd = static_cast<double>(k);
  double sum = 0.0;
  for (std::size_t c = 0; c < field.cells(); ++c) {
    const double e = field.beta2[c];
    if (e == 0.0) continue;
    const double lam = density.values[c];
    if (!(lam > 0.0)) throw ParameterError("density vanishes where the gradient does not");
    const double denom = k == 1 ? lam * lam : k == 2 ? lam : std::pow(lam, 2.0 / kd);
    sum += e * m.at(c) / denom;
  }
  const double integral = sum / static_cast<double>(field.cells());
  return kd * integral / std::pow(static_cast<double>(n), 2.0 / kd);
}

double mse_lower_bound_kd(const GradientField& field, std::size_t n, double m_k) {
  field.validate();
  if (!(m_k > 0.0)) throw ParameterError("M_K must be positive");
  if (n < 1) throw ParameterError("N must be positive");
  const std::size_t k = field.dimension();
  const double kd = static_cast<double>(k);
  double sum = 0.0;
  for (double e : field.beta2) sum += density_power(e, k);
  const double integral = sum / static_cast<double>(field.cells());
  const double power = k == 1 ? integral * integral * integral : std::pow(integral, (kd + 2.0) / kd);
  return kd * m_k * power / std::pow(static_cast<double>(n), 2.0 / kd);
}

GradientField read_gradient_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParameterError("empty gradient file");
  GradientField f;
  std::stringstream header(line);
  std::string item;
  std::getline(header, item, ',');
  if (item.find("shape") == std::string::npos) throw ParameterError("gradient file needs a shape header");
  while (std::getline(header, item, ',')) {
    const double v = parse_field(item);
    if (v < 1.0 || v != std::floor(v)) throw ParameterError("shape entries must be positive integers");
    f.shape.push_back(static_cast<std::size_t>(v));
  }
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    f.beta2.push_back(parse_field(line));
  }
  f.validate();
  return f;
}

GradientField read_gradient_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open gradient file '" + path + "'");
  return read_gradient_csv(in);
}

double polygon_inertia(const std::vector<Point2>& v) {
  if (v.size() < 3) throw ParameterError("polygon needs at least three vertices");
  const std::size_t n = v.size();
  double cx = 0.0, cy = 0.0;
  for (const auto& p : v) {
    cx += p[0];
    cy += p[1];
  }
  cx /= static_cast<double>(n);
  cy /= static_cast<double>(n);

  // Fan triangles (c, v_i, v_{i+1}); the vertex mean lies inside a convex polygon.
  double area = 0.0, mx = 0.0, my = 0.0, second = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = v[i];
    const Point2& b = v[(i + 1) % n];
    const double t = 0.5 * ((a[0] - cx) * (b[1] - cy) - (b[0] - cx) * (a[1] - cy));
    if (!(t > 0.0)) throw ParameterError("polygon must be convex and counter-clockwise");
    const Point2 mids[3] = {{0.5 * (cx + a[0]), 0.5 * (cy + a[1])},
                            {0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])},
                            {0.5 * (b[0] + cx), 0.5 * (b[1] + cy)}};
    area += t;
    for (const auto& q : mids) {
      mx += t / 3.0 * q[0];
      my += t / 3.0 * q[1];
      second += t / 3.0 * (q[0] * q[0] + q[1] * q[1]);
    }
  }
  const double gx = mx / area, gy = my / area;
  const double central = second - area * (gx * gx + gy * gy);
  return central / (2.0 * area * area);
}

std::vector<Point2> regular_polygon(std::size_t sides) {
  if (sides < 3) throw ParameterError("polygon needs at least three sides");
  std::vector<Point2> out(sides);
  for (std::size_t i = 0; i < sides; ++i) {
    const double a = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(sides);
    out[i] = {std::cos(a), std::sin(a)};
  }
  return out;
}

double hexagon_inertia() { return polygon_inertia(regular_polygon(6)); }

}  // namespace nus
