#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "nus/duality.hpp"
#include "nus/error.hpp"
#include "nus/sampler.hpp"
#include "oracles.hpp"

using namespace nus;

namespace {

PdfGrid triangular(std::size_t cells) {
  std::vector<double> v(cells);
  for (std::size_t m = 0; m < cells; ++m) v[m] = 2.0 * (static_cast<double>(m) + 0.5) / static_cast<double>(cells);
  return PdfGrid::normalized(0.0, 1.0, std::move(v));
}

long gap(std::size_t a, std::size_t b) { return std::labs(static_cast<long>(a) - static_cast<long>(b)); }

}  // namespace

TEST_CASE("pdf_from_signal") {
  const auto lin = pdf_from_signal(generate(AnalyticSignalSpec::parse("linear:slope=2"), 1000));
  for (double v : lin.pdf.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(lin.energy == doctest::Approx(4.0).epsilon(1e-9));

  const auto e = pdf_from_signal(generate(AnalyticSignalSpec::parse("exp:alpha=3"), 1 << 16));
  CHECK(6.0 / (std::exp(6.0) - 1.0) == doctest::Approx(0.014910).epsilon(1e-4));
  CHECK(e.pdf.values[0] == doctest::Approx(oracle::exp_pdf(3.0, 0.0)).epsilon(1e-3));
  CHECK(e.pdf.values[1 << 15] == doctest::Approx(oracle::exp_pdf(3.0, 0.5)).epsilon(1e-3));
  CHECK_NOTHROW(e.pdf.validate());

  CHECK_THROWS_AS(pdf_from_signal(UniformSignal(std::vector<double>(8, 1.0))), DegenerateSignalError);
}

TEST_CASE("signal_from_pdf") {
  const auto u = PdfGrid::normalized(0.0, 2.0, std::vector<double>(1000, 1.0));
  const auto phi = signal_from_pdf(u);
  for (std::size_t k = 0; k < phi.size(); k += 37) CHECK(phi[k] == doctest::Approx(phi.time(k) / std::sqrt(2.0)));

  const auto tri = signal_from_pdf(triangular(512));
  for (std::size_t k = 1; k < tri.size(); ++k) REQUIRE(tri[k] >= tri[k - 1]);

  CHECK_THROWS_AS(signal_from_pdf(PdfGrid{0.0, 1.0, {0.5, 0.5}}), ParameterError);
  CHECK_THROWS_AS(PdfGrid::normalized(0.0, 1.0, {0.0, 0.0}), DegenerateSignalError);
  CHECK_THROWS_AS((PdfGrid{1.0, 0.0, {1.0, 1.0}}).validate(), ParameterError);
}

TEST_CASE("uniform pdf gives a uniform quantizer") {
  const auto q = design_quantizer_via_sampling(PdfGrid::normalized(0.0, 1.0, std::vector<double>(1000, 1.0)), 4);
  CHECK(q.grid_edges == std::vector<std::size_t>{0, 250, 500, 750, 1000});
  const double expect_b[] = {0.0, 0.25, 0.5, 0.75, 1.0};
  const double expect_r[] = {0.125, 0.375, 0.625, 0.875};
  for (int i = 0; i < 5; ++i) CHECK(q.boundaries[i] == doctest::Approx(expect_b[i]));
  for (int i = 0; i < 4; ++i) CHECK(q.reproduction[i] == doctest::Approx(expect_r[i]));

  std::ostringstream csv;
  write_quantizer_csv(csv, q);
  CHECK(csv.str().rfind("lower,upper,reproduction\n0,0.25,0.125", 0) == 0);
}

TEST_CASE("design matches direct cube-root companding") {
  const auto tri = triangular(4096);
  const auto e = pdf_from_signal(generate(AnalyticSignalSpec::parse("exp:alpha=3"), 4096)).pdf;
  for (const PdfGrid* p : {&tri, &e}) {
    const auto q = design_quantizer_via_sampling(*p, 8);
    const auto ref = oracle::cube_root_companding(p->values, 8);
    REQUIRE(q.grid_edges.size() == ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) CHECK(gap(q.grid_edges[i], ref[i]) <= 2);
    // Reproduction points sit inside their cells.
    for (std::size_t i = 0; i < 8; ++i) {
      CHECK(q.reproduction[i] >= q.boundaries[i]);
      CHECK(q.reproduction[i] <= q.boundaries[i + 1]);
    }
  }
}

TEST_CASE("design scales with the support") {
  std::vector<double> v(2048);
  for (std::size_t m = 0; m < v.size(); ++m) v[m] = std::exp(-0.5 * std::pow((m + 0.5) / 256.0 - 4.0, 2));
  const auto a = design_quantizer_via_sampling(PdfGrid::normalized(0.0, 1.0, v), 16);
  const auto b = design_quantizer_via_sampling(PdfGrid::normalized(-3.0, 5.0, v), 16);
  CHECK(a.grid_edges == b.grid_edges);
  for (std::size_t i = 0; i < a.boundaries.size(); ++i)
    CHECK(b.boundaries[i] == doctest::Approx(-3.0 + 8.0 * a.boundaries[i]));
}

TEST_CASE("MSE bridge between sampling and quantization") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.2, 3.0);
  const auto s = generate(AnalyticSignalSpec::parse("chirp:alpha=5,scale=255"), 4096);
  const auto sp = pdf_from_signal(s);
  const auto d = derivative(s);
  for (int r = 0; r < 20; ++r) {
    DensityGrid lam{std::vector<double>(4096)};
    double mass = 0.0;
    for (double& v : lam.values) mass += (v = u(rng));
    for (double& v : lam.values) v *= 4096.0 / mass;
    const double q = quantizer_bennett_mse(sp.pdf, lam.values, 32);
    const double samp = bennett_mse(d, lam, 32) / sp.energy;
    REQUIRE(q == doctest::Approx(samp).epsilon(1e-6));
  }
  CHECK_THROWS_AS(quantizer_bennett_mse(sp.pdf, std::vector<double>(3, 1.0), 4), ParameterError);
}

TEST_CASE("round trip through both transforms") {
  // pdf -> signal -> pdf recovers the pdf away from the repeated last cell.
  const auto tri = triangular(1024);
  const auto back = pdf_from_signal(signal_from_pdf(tri)).pdf;
  for (std::size_t m = 0; m + 1 < tri.size(); m += 13) CHECK(back.values[m] == doctest::Approx(tri.values[m]).epsilon(1e-3));
}
