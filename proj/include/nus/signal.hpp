#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace nus {

/// Dense, uniformly sampled amplitudes over [0, 1).
///
/// Sample k sits at t_k = k / N_U; the grid cell width is 1 / N_U. The
/// declared amplitude range [low, high] always contains every value.
class UniformSignal {
public:
  /// Range defaults to the observed minimum and maximum.
  explicit UniformSignal(std::vector<double> values);
  UniformSignal(std::vector<double> values, double low, double high);

  std::size_t size() const noexcept { return values_.size(); }
  double cell_width() const noexcept { return 1.0 / static_cast<double>(values_.size()); }
  double time(std::size_t k) const noexcept { return static_cast<double>(k) * cell_width(); }
  double operator[](std::size_t k) const noexcept { return values_[k]; }
  std::span<const double> values() const noexcept { return values_; }
  double low() const noexcept { return low_; }
  double high() const noexcept { return high_; }

private:
  std::vector<double> values_;
  double low_ = 0.0;
  double high_ = 0.0;
};

namespace analytic {
struct Exponential {
  double alpha;
};  // e^{alpha t}
struct Cosine {
  int alpha;
};  // cos(2 pi alpha t)
struct Chirp {
  double alpha;
};  // cos(2 pi t (1 + alpha t))
struct Linear {
  double slope;
  double offset;
};
struct TableLookup {
  std::vector<double> table;
};
}  // namespace analytic

struct AnalyticSignalSpec {
  std::variant<analytic::Exponential, analytic::Cosine, analytic::Chirp, analytic::Linear,
               analytic::TableLookup>
      kind;
  double scale = 1.0;

  /// Parses `exp:alpha=3`, `cos:alpha=5,scale=255`, `chirp:alpha=5`,
  /// `linear:slope=1,offset=0`. Throws ParameterError on anything else.
  static AnalyticSignalSpec parse(std::string_view text);

  /// The continuous signal and its exact derivative; TableLookup has neither.
  double value(double t) const;
  double slope(double t) const;
};

/// Forward-difference slopes, same length as the signal.
struct DerivativeGrid {
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
  double cell_width() const noexcept { return 1.0 / static_cast<double>(values.size()); }
  double operator[](std::size_t k) const noexcept { return values[k]; }
};

struct Extremum {
  std::size_t index;
  double amplitude;
  bool maximum;
};

/// Interior local extrema, strictly increasing in index, alternating kind.
struct ExtremaList {
  std::vector<Extremum> entries;

  std::size_t size() const noexcept { return entries.size(); }
  bool empty() const noexcept { return entries.empty(); }
};

UniformSignal generate(const AnalyticSignalSpec& spec, std::size_t n_u);
DerivativeGrid derivative(const UniformSignal& signal);
ExtremaList find_extrema(const UniformSignal& signal);

/// One amplitude per line; a non-numeric first line is treated as a header.
UniformSignal read_signal_csv(std::istream& in);
UniformSignal read_signal_csv_file(const std::string& path);

/// Analytic spec string if it parses as one, otherwise a CSV path.
UniformSignal load_signal(const std::string& source, std::size_t n_u);

}  // namespace nus
