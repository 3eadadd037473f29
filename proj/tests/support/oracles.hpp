#pragma once
// Independent reference computations used by the unit and acceptance tests.
// Nothing here calls into nus_core.

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

// --- closed forms for phi(t) = exp(alpha t) --------------------------------

inline double exp_nonuniform_mse(double alpha, double n) {
  const double g = std::exp(2.0 * alpha / 3.0) - 1.0;
  return 9.0 / (32.0 * alpha * n * n) * g * g * g;
}

inline double exp_uniform_mse(double alpha, double n) {
  return alpha * (std::exp(2.0 * alpha) - 1.0) / (24.0 * n * n);
}

// Optimal density and compressor; lambda(t) = (2a/3) e^{2at/3} / (e^{2a/3} - 1).
inline double exp_density(double alpha, double t) {
  const double c = 2.0 * alpha / 3.0;
  return c * std::exp(c * t) / (std::exp(c) - 1.0);
}

inline double exp_compressor(double alpha, double t) {
  const double c = 2.0 * alpha / 3.0;
  return (std::exp(c * t) - 1.0) / (std::exp(c) - 1.0);
}

// Inverse compressor: boundary i of N.
inline double exp_expander(double alpha, double tau) {
  const double c = 2.0 * alpha / 3.0;
  return std::log(1.0 + tau * (std::exp(c) - 1.0)) / c;
}

// p(x) = 2a e^{2ax} / (e^{2a} - 1).
inline double exp_pdf(double alpha, double x) {
  return 2.0 * alpha * std::exp(2.0 * alpha * x) / (std::exp(2.0 * alpha) - 1.0);
}

// --- dense linear algebra --------------------------------------------------

// Gaussian elimination with partial pivoting on a 3x3 system.
inline std::array<double, 3> solve3(std::array<std::array<double, 3>, 3> a, std::array<double, 3> b) {
  for (int c = 0; c < 3; ++c) {
    int p = c;
    for (int r = c + 1; r < 3; ++r)
      if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
    std::swap(a[c], a[p]);
    std::swap(b[c], b[p]);
    for (int r = c + 1; r < 3; ++r) {
      const double f = a[r][c] / a[c][c];
      for (int k = c; k < 3; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  std::array<double, 3> x{};
  for (int r = 2; r >= 0; --r) {
    double s = b[r];
    for (int k = r + 1; k < 3; ++k) s -= a[r][k] * x[k];
    x[r] = s / a[r][r];
  }
  return x;
}

// Left quadratic as (c2, c1, c0): values at a and x, zero slope at x.
inline std::array<double, 3> left_fit(double a, double phi_a, double x, double phi_x) {
  return solve3({{{a * a, a, 1.0}, {x * x, x, 1.0}, {2.0 * x, 1.0, 0.0}}}, {phi_a, phi_x, 0.0});
}

// --- monotone integer coding ----------------------------------------------

// Symbols emitted by repeated subtraction of the escape value.
inline std::vector<std::uint32_t> monotone_symbols(const std::vector<std::size_t>& ints, unsigned b) {
  const std::size_t esc = (std::size_t{1} << b) - 1;
  std::vector<std::uint32_t> out;
  std::size_t prev = 0;
  for (std::size_t v : ints) {
    std::size_t d = v - prev;
    while (d >= esc) {
      out.push_back(static_cast<std::uint32_t>(esc));
      d -= esc;
    }
    out.push_back(static_cast<std::uint32_t>(d));
    prev = v;
  }
  return out;
}

inline std::size_t monotone_bits(const std::vector<std::size_t>& ints, unsigned b) {
  return monotone_symbols(ints, b).size() * b;
}

inline unsigned best_b(const std::vector<std::size_t>& ints, unsigned lo = 1, unsigned hi = 15) {
  unsigned best = lo;
  for (unsigned b = lo; b <= hi; ++b)
    if (monotone_bits(ints, b) < monotone_bits(ints, best)) best = b;
  return best;
}

// --- companding --------------------------------------------------------------

// Boundaries from the normalized cumulative of w on a grid: smallest edge k
// whose cumulative reaches i / N.
inline std::vector<std::size_t> cumulative_boundaries(const std::vector<double>& w, std::size_t n) {
  std::vector<double> cum(w.size() + 1, 0.0);
  for (std::size_t k = 0; k < w.size(); ++k) cum[k + 1] = cum[k] + w[k];
  for (double& c : cum) c /= cum.back();
  std::vector<std::size_t> out{0};
  std::size_t k = 0;
  for (std::size_t i = 1; i < n; ++i) {
    while (cum[k] < static_cast<double>(i) / static_cast<double>(n) - 1e-12) ++k;
    out.push_back(k);
  }
  out.push_back(w.size());
  return out;
}

// Direct cube-root companding of a pdf sampled on a grid.
inline std::vector<std::size_t> cube_root_companding(const std::vector<double>& pdf, std::size_t n) {
  std::vector<double> w(pdf.size());
  for (std::size_t k = 0; k < pdf.size(); ++k) w[k] = std::cbrt(pdf[k]);
  return cumulative_boundaries(w, n);
}

// --- geometry -------------------------------------------------------------

inline double hexagon_inertia_closed_form() { return 5.0 / (36.0 * std::sqrt(3.0)); }

// Midpoint-rule integration of |x|^2 over the unit-circumradius hexagon.
inline double hexagon_inertia_grid(int cells_per_axis) {
  const double s3 = std::sqrt(3.0);
  const double h = 2.0 / cells_per_axis;
  double area = 0.0, second = 0.0;
  for (int i = 0; i < cells_per_axis; ++i)
    for (int j = 0; j < cells_per_axis; ++j) {
      const double x = -1.0 + (i + 0.5) * h;
      const double y = -1.0 + (j + 0.5) * h;
      const double ax = std::abs(x), ay = std::abs(y);
      // Flat-topped hexagon with vertices at (+-1, 0).
      if (ay <= s3 / 2.0 && s3 * ax + ay <= s3) {
        area += h * h;
        second += (x * x + y * y) * h * h;
      }
    }
  return second / (2.0 * area * area);
}

// --- random inputs -----------------------------------------------------------

inline std::vector<std::size_t> random_monotone(std::mt19937_64& rng, std::size_t max_len = 60) {
  std::uniform_int_distribution<std::size_t> len(1, max_len);
  std::uniform_int_distribution<int> scale(0, 14);
  std::vector<std::size_t> out(len(rng));
  std::uniform_int_distribution<std::size_t> step(0, (std::size_t{1} << scale(rng)));
  std::size_t acc = 0;
  for (auto& v : out) v = (acc += step(rng));
  return out;
}

}  // namespace oracle
