#include <doctest.h>

#include <cmath>
#include <vector>

#include "nus/error.hpp"
#include "nus/segmenter.hpp"
#include "oracles.hpp"

using namespace nus;

namespace {

constexpr std::size_t kNu = 1 << 16;

DerivativeGrid exp_deriv() { return derivative(generate(AnalyticSignalSpec::parse("exp:alpha=3"), kNu)); }

std::vector<std::size_t> edges(const Segmentation& s) { return {s.boundaries().begin(), s.boundaries().end()}; }

}  // namespace

TEST_CASE("optimal density") {
  SUBCASE("constant slope is uniform") {
    const auto d = optimal_density(derivative(generate(AnalyticSignalSpec::parse("linear:slope=3"), 1000)));
    for (double v : d.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("constant signal falls back to the floor, still uniform") {
    const auto d = optimal_density(derivative(UniformSignal(std::vector<double>(64, 2.0))));
    for (double v : d.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("exponential matches the closed form") {
    const auto d = optimal_density(exp_deriv());
    CHECK(oracle::exp_density(3.0, 0.0) == doctest::Approx(0.3130).epsilon(1e-4));
    CHECK(d[0] == doctest::Approx(oracle::exp_density(3.0, 0.0)).epsilon(1e-4));
    CHECK(d[kNu / 2] == doctest::Approx(oracle::exp_density(3.0, 0.5)).epsilon(1e-4));
  }
  SUBCASE("integrates to one") {
    const auto d = optimal_density(derivative(generate(AnalyticSignalSpec::parse("chirp:alpha=5"), 4096)));
    double s = 0.0;
    for (double v : d.values) s += v * d.cell_width();
    CHECK(s == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("invariant to amplitude scaling") {
    const auto a = optimal_density(derivative(generate(AnalyticSignalSpec::parse("cos:alpha=5"), 4096)));
    const auto b = optimal_density(derivative(generate(AnalyticSignalSpec::parse("cos:alpha=5,scale=255"), 4096)));
    for (std::size_t k = 0; k < a.size(); k += 7) CHECK(a[k] == doctest::Approx(b[k]).epsilon(1e-6));
  }
  CHECK_THROWS_AS(optimal_density(exp_deriv(), 0.0), ParameterError);
}

TEST_CASE("compressor") {
  const auto uni = compressor(DensityGrid{std::vector<double>(1000, 1.0)});
  CHECK(uni.grid_size() == 1000);
  CHECK(uni[0] == 0.0);
  CHECK(uni[250] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(uni[1000] == 1.0);

  const auto u = compressor(optimal_density(exp_deriv()));
  CHECK(oracle::exp_compressor(3.0, 0.5) == doctest::Approx(0.26894).epsilon(1e-4));
  CHECK(u[kNu / 2] == doctest::Approx(oracle::exp_compressor(3.0, 0.5)).epsilon(1e-4));
  CHECK(u[kNu] == 1.0);
  for (std::size_t k = 1; k <= kNu; ++k) REQUIRE(u[k] >= u[k - 1]);
}

TEST_CASE("segment_by_expander") {
  const auto id = compressor(DensityGrid{std::vector<double>(1000, 1.0)});
  CHECK(edges(segment_by_expander(id, 4)) == std::vector<std::size_t>{0, 250, 500, 750, 1000});
  CHECK(edges(segment_by_expander(id, 1)) == std::vector<std::size_t>{0, 1000});

  const auto seg = segment_by_expander(compressor(optimal_density(exp_deriv())), 2);
  REQUIRE(seg.segments() == 2);
  const double a1 = oracle::exp_expander(3.0, 0.5);
  CHECK(a1 == doctest::Approx(0.71689).epsilon(1e-5));
  CHECK(std::abs(static_cast<double>(seg.left(1)) - a1 * kNu) <= 2.0);

  CHECK_THROWS_AS(segment_by_expander(id, 1001), ResolutionError);
  CHECK_THROWS_AS(segment_by_expander(id, 0), ResolutionError);
}

TEST_CASE("expander boundaries track the exponential's closed form") {
  const auto seg = segment_by_expander(compressor(optimal_density(exp_deriv())), 50);
  REQUIRE(seg.segments() == 50);
  for (std::size_t i = 1; i < 50; ++i) {
    const double expect = oracle::exp_expander(3.0, static_cast<double>(i) / 50.0) * kNu;
    CHECK(std::abs(static_cast<double>(seg.left(i)) - expect) <= 3.0);
  }
}

TEST_CASE("segment_by_threshold") {
  SUBCASE("constant slope gives uniform boundaries") {
    const auto r = segment_by_threshold(derivative(generate(AnalyticSignalSpec::parse("linear:slope=1"), 1000)), 5);
    CHECK(edges(r.segmentation) == std::vector<std::size_t>{0, 200, 400, 600, 800, 1000});
    CHECK(r.threshold == doctest::Approx(0.2).epsilon(1e-9));
  }
  SUBCASE("cosine segments are widest around the extrema") {
    const auto d = derivative(generate(AnalyticSignalSpec::parse("cos:alpha=5,scale=255"), kNu));
    const auto seg = segment_by_threshold(d, 100).segmentation;
    const std::size_t at_extremum = seg.segment_of(kNu / 10);  // sin = 0 there
    const std::size_t at_slope = seg.segment_of(kNu / 20);     // |sin| = 1 there
    CHECK(seg.length(at_extremum) > 2 * seg.length(at_slope));
  }
  SUBCASE("every segment carries T_opt within one cell") {
    for (const char* spec : {"exp:alpha=3", "cos:alpha=5,scale=255", "chirp:alpha=5,scale=255"}) {
      const auto d = derivative(generate(AnalyticSignalSpec::parse(spec), kNu));
      const double cmax = max_cell_mass(d);
      for (std::size_t n : {7u, 50u, 333u}) {
        const auto r = segment_by_threshold(d, n);
        CHECK(r.segmentation.segments() == n);
        for (double m : segment_masses(d, r.segmentation)) REQUIRE(std::abs(m - r.threshold) <= cmax * (1 + 1e-9));
      }
    }
  }
  SUBCASE("constant signal is degenerate") {
    CHECK_THROWS_AS(segment_by_threshold(derivative(UniformSignal(std::vector<double>(10, 1.0))), 2),
                    DegenerateSignalError);
  }
  CHECK_THROWS_AS(segment_by_threshold(exp_deriv(), kNu + 1), ResolutionError);
}

TEST_CASE("expander and threshold agree on monotone signals") {
  for (const char* spec : {"exp:alpha=3", "exp:alpha=1", "linear:slope=-2"}) {
    const auto d = derivative(generate(AnalyticSignalSpec::parse(spec), kNu));
    for (std::size_t n : {10u, 100u, 1000u}) {
      const auto a = segment_by_expander(compressor(optimal_density(d)), n);
      const auto b = segment_by_threshold(d, n).segmentation;
      REQUIRE(a.segments() == b.segments());
      for (std::size_t i = 0; i <= n; ++i) {
        const auto x = static_cast<long>(a.boundaries()[i]);
        const auto y = static_cast<long>(b.boundaries()[i]);
        REQUIRE(std::labs(x - y) <= 1);
      }
    }
  }
}

TEST_CASE("a single heavy cell merges coincident boundaries") {
  std::vector<double> v(100, 0.0);
  for (std::size_t k = 50; k < 100; ++k) v[k] = 1.0;  // one jump
  const auto r = segment_by_threshold(derivative(UniformSignal(v)), 10);
  CHECK(r.segmentation.segments() < 10);
  CHECK(r.segmentation.grid_size() == 100);
}

TEST_CASE("uniform segmentation") {
  CHECK(edges(uniform_segmentation(1000, 4)) == std::vector<std::size_t>{0, 250, 500, 750, 1000});
  CHECK(edges(uniform_segmentation(10, 3)) == std::vector<std::size_t>{0, 3, 7, 10});
  CHECK(uniform_segmentation(16, 16).segments() == 16);
  CHECK_THROWS_AS(uniform_segmentation(10, 11), ResolutionError);
}

TEST_CASE("Segmentation invariants") {
  CHECK_THROWS_AS(Segmentation({0}), ParameterError);
  CHECK_THROWS_AS(Segmentation({1, 5}), ParameterError);
  CHECK_THROWS_AS(Segmentation({0, 5, 5}), ParameterError);
  const Segmentation s({0, 3, 7, 10});
  CHECK(s.segment_of(0) == 0);
  CHECK(s.segment_of(2) == 0);
  CHECK(s.segment_of(3) == 1);
  CHECK(s.segment_of(9) == 2);
  CHECK(s.length(1) == 4);
}
