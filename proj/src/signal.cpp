#include "nus/signal.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <numbers>
#include <sstream>

#include "nus/error.hpp"

namespace nus {

namespace {

void check_values(const std::vector<double>& values) {
  if (values.size() < 2) throw ParameterError("signal needs at least two samples");
  for (double v : values)
    if (!std::isfinite(v)) throw ParameterError("signal contains a non-finite sample");
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool parse_double(std::string_view s, double& out) {
  s = trim(s);
  if (s.empty()) return false;
  // from_chars for double is available in libstdc++ 11.
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace

UniformSignal::UniformSignal(std::vector<double> values) : values_(std::move(values)) {
  check_values(values_);
  auto [lo, hi] = std::minmax_element(values_.begin(), values_.end());
  low_ = *lo;
  high_ = *hi;
}

UniformSignal::UniformSignal(std::vector<double> values, double low, double high)
    : values_(std::move(values)), low_(low), high_(high) {
  check_values(values_);
  if (!(low <= high)) throw ParameterError("signal range must satisfy low <= high");
  for (double v : values_)
    if (v < low || v > high) throw ParameterError("signal sample outside declared range");
}

AnalyticSignalSpec AnalyticSignalSpec::parse(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view kind = trim(text.substr(0, colon));
  std::map<std::string, double, std::less<>> params;
  if (colon != std::string_view::npos) {
    std::string_view rest = text.substr(colon + 1);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const std::string_view item = trim(rest.substr(0, comma));
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
      if (item.empty()) continue;
      const auto eq = item.find('=');
      double v = 0.0;
      if (eq == std::string_view::npos || !parse_double(item.substr(eq + 1), v))
        throw ParameterError("malformed signal parameter '" + std::string(item) + "'");
      params[std::string(trim(item.substr(0, eq)))] = v;
    }
  }

  auto take = [&](std::string_view key, double fallback, bool required) {
    auto it = params.find(key);
    if (it == params.end()) {
      if (required) throw ParameterError("signal '" + std::string(kind) + "' needs " + std::string(key));
      return fallback;
    }
    double v = it->second;
    params.erase(it);
    return v;
  };

  AnalyticSignalSpec spec;
  spec.scale = take("scale", 1.0, false);
  if (kind == "exp") {
    const double alpha = take("alpha", 0.0, true);
    if (!(alpha > 0.0)) throw ParameterError("exponential alpha must be positive");
    spec.kind = analytic::Exponential{alpha};
  } else if (kind == "cos") {
    const double alpha = take("alpha", 0.0, true);
    if (!(alpha >= 1.0) || alpha != std::floor(alpha))
      throw ParameterError("cosine alpha must be a positive integer");
    spec.kind = analytic::Cosine{static_cast<int>(alpha)};
  } else if (kind == "chirp") {
    const double alpha = take("alpha", 0.0, true);
    if (!(alpha > 0.0)) throw ParameterError("chirp alpha must be positive");
    spec.kind = analytic::Chirp{alpha};
  } else if (kind == "linear") {
    spec.kind = analytic::Linear{take("slope", 1.0, false), take("offset", 0.0, false)};
  } else {
    throw ParameterError("unknown signal kind '" + std::string(kind) + "'");
  }
  if (!params.empty())
    throw ParameterError("unknown signal parameter '" + params.begin()->first + "'");
  if (!std::isfinite(spec.scale)) throw ParameterError("signal scale must be finite");
  return spec;
}

double AnalyticSignalSpec::value(double t) const {
  using std::numbers::pi;
  struct Visitor {
    double t;
    double operator()(const analytic::Exponential& e) const { return std::exp(e.alpha * t); }
    double operator()(const analytic::Cosine& c) const { return std::cos(2.0 * pi * c.alpha * t); }
    double operator()(const analytic::Chirp& c) const {
      return std::cos(2.0 * pi * t * (1.0 + c.alpha * t));
    }
    double operator()(const analytic::Linear& l) const { return l.slope * t + l.offset; }
    double operator()(const analytic::TableLookup& tab) const {
      if (tab.table.empty()) throw ParameterError("empty lookup table");
      const auto n = tab.table.size();
      auto k = static_cast<std::size_t>(std::floor(t * static_cast<double>(n)));
      return tab.table[std::min(k, n - 1)];
    }
  };
  return scale * std::visit(Visitor{t}, kind);
}

double AnalyticSignalSpec::slope(double t) const {
  using std::numbers::pi;
  struct Visitor {
    double t;
    double operator()(const analytic::Exponential& e) const { return e.alpha * std::exp(e.alpha * t); }
    double operator()(const analytic::Cosine& c) const {
      const double w = 2.0 * pi * c.alpha;
      return -w * std::sin(w * t);
    }
    double operator()(const analytic::Chirp& c) const {
      return -2.0 * pi * (1.0 + 2.0 * c.alpha * t) * std::sin(2.0 * pi * t * (1.0 + c.alpha * t));
    }
    double operator()(const analytic::Linear& l) const { return l.slope; }
    double operator()(const analytic::TableLookup&) const {
      throw ParameterError("lookup tables have no analytic derivative");
    }
  };
  return scale * std::visit(Visitor{t}, kind);
}

UniformSignal generate(const AnalyticSignalSpec& spec, std::size_t n_u) {
  if (n_u < 2) throw ParameterError("N_U must be at least 2");
  if (const auto* tab = std::get_if<analytic::TableLookup>(&spec.kind)) {
    if (tab->table.size() != n_u) throw ParameterError("lookup table length must equal N_U");
  }
  std::vector<double> values(n_u);
  const double inv = 1.0 / static_cast<double>(n_u);
  for (std::size_t k = 0; k < n_u; ++k) values[k] = spec.value(static_cast<double>(k) * inv);
  return UniformSignal(std::move(values));
}

DerivativeGrid derivative(const UniformSignal& signal) {
  const std::size_t n = signal.size();
  const double scale = static_cast<double>(n);
  DerivativeGrid out{std::vector<double>(n)};
  for (std::size_t k = 0; k + 1 < n; ++k) out.values[k] = (signal[k + 1] - signal[k]) * scale;
  out.values[n - 1] = out.values[n - 2];
  return out;
}

ExtremaList find_extrema(const UniformSignal& signal) {
  ExtremaList out;
  int last_sign = 0;
  for (std::size_t k = 0; k + 1 < signal.size(); ++k) {
    const double diff = signal[k + 1] - signal[k];
    const int sign = (diff > 0.0) - (diff < 0.0);
    if (sign == 0) continue;
    // Plateaus keep last_sign; the extremum lands where the opposite sign starts.
    if (last_sign != 0 && sign != last_sign)
      out.entries.push_back(Extremum{k, signal[k], last_sign > 0});
    last_sign = sign;
  }
  return out;
}

UniformSignal read_signal_csv(std::istream& in) {
  std::vector<double> values;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    std::string_view field = trim(line);
    if (const auto comma = field.find(','); comma != std::string_view::npos)
      field = trim(field.substr(0, comma));
    if (field.empty()) {
      first = false;
      continue;
    }
    double v = 0.0;
    if (!parse_double(field, v)) {
      if (first) {
        first = false;
        continue;
      }
      throw ParameterError("non-numeric signal sample '" + std::string(field) + "'");
    }
    first = false;
    values.push_back(v);
  }
  return UniformSignal(std::move(values));
}

UniformSignal read_signal_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open signal file '" + path + "'");
  return read_signal_csv(in);
}

UniformSignal load_signal(const std::string& source, std::size_t n_u) {
  const auto colon = source.find(':');
  if (colon != std::string::npos) {
    const std::string kind = source.substr(0, colon);
    if (kind == "exp" || kind == "cos" || kind == "chirp" || kind == "linear")
      return generate(AnalyticSignalSpec::parse(source), n_u);
  }
  return read_signal_csv_file(source);
}

}  // namespace nus
