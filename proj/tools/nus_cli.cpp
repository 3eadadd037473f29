// nus: command-line front end and benchmark harness.
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nus/bench.hpp"
#include "nus/codec.hpp"
#include "nus/duality.hpp"
#include "nus/error.hpp"
#include "nus/multidim.hpp"
#include "nus/reconstructor.hpp"
#include "nus/sampler.hpp"
#include "nus/segmenter.hpp"
#include "nus/signal.hpp"
#include "nus/tree.hpp"

namespace {

using namespace nus;

class ConfigError : public Error {
public:
  using Error::Error;
};

struct Options {
  std::string signal = "exp:alpha=3";
  std::size_t nu = 65536;
  std::size_t n = 50;
  std::string method = "threshold";
  std::string mu_grid = "default";
  std::string budgets;
  std::uint64_t seed = 1;
  std::string out;
  std::string in;
  std::string config;
  std::string descriptor;
  std::string tree_out;
  std::string pdf = "triangular";
  std::string gradient;
  double m_k = 0.0;
  std::size_t random_fields = 0;
  CodecConfig codec;
};

// Flat key=value lines; '#' starts a comment.
void apply_config_file(const std::string& path, Options& o) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    if (trim(line).empty()) continue;
    if (eq == std::string::npos) throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "signal") o.signal = value;
      else if (key == "nu") o.nu = std::stoul(value);
      else if (key == "n") o.n = std::stoul(value);
      else if (key == "method") o.method = value;
      else if (key == "mu_grid") o.mu_grid = value;
      else if (key == "seed") o.seed = std::stoull(value);
      else if (key == "b_J") o.codec.b_j = static_cast<unsigned>(std::stoul(value));
      else if (key == "b_ext") o.codec.b_ext = static_cast<unsigned>(std::stoul(value));
      else if (key == "b_val0") o.codec.b_val0 = static_cast<unsigned>(std::stoul(value));
      else if (key == "phi_min") o.codec.phi_min = std::stod(value);
      else if (key == "phi_max") o.codec.phi_max = std::stod(value);
      else throw ConfigError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    } catch (const std::logic_error&) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": bad value for '" + key + "'");
    }
  }
}

// Writes to --out when given, otherwise to stdout.
class Output {
public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw ConfigError("cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
  std::unique_ptr<std::ofstream> file_;
};

std::vector<double> parse_mu_grid(const Options& o, const DyadicTree& full) {
  const std::string& g = o.mu_grid;
  if (g.empty()) throw ConfigError("mu grid is empty");
  if (g == "default") return default_mu_grid(full);
  std::vector<double> out;
  if (g.find(':') != std::string::npos) {
    // lo:hi:count, log-spaced
    std::stringstream ss(g);
    std::string lo, hi, count;
    std::getline(ss, lo, ':');
    std::getline(ss, hi, ':');
    std::getline(ss, count, ':');
    double a, b;
    std::size_t c;
    try {
      a = std::stod(lo);
      b = std::stod(hi);
      c = std::stoul(count);
    } catch (const std::logic_error&) {
      throw ConfigError("mu grid must be lo:hi:count");
    }
    if (!(a > 0.0) || !(b >= a) || c < 1) throw ConfigError("mu grid needs 0 < lo <= hi and count >= 1");
    for (std::size_t i = 0; i < c; ++i)
      out.push_back(c == 1 ? a : a * std::pow(b / a, static_cast<double>(i) / static_cast<double>(c - 1)));
    return out;
  }
  std::stringstream ss(g);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(std::stod(item));
    } catch (const std::logic_error&) {
      throw ConfigError("bad mu value '" + item + "'");
    }
    if (!(out.back() >= 0.0)) throw ConfigError("mu values must be non-negative");
  }
  if (out.empty()) throw ConfigError("mu grid is empty");
  return out;
}

std::vector<std::size_t> parse_budgets(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(std::stoul(item));
    } catch (const std::logic_error&) {
      throw ConfigError("bad budget '" + item + "'");
    }
  }
  if (out.empty()) throw ConfigError("budget list is empty");
  return out;
}

Segmentation make_segmentation(const Options& o, const UniformSignal& s) {
  if (o.method == "threshold") return segment_by_threshold(derivative(s), o.n).segmentation;
  if (o.method == "expander") return segment_by_expander(compressor(optimal_density(derivative(s))), o.n);
  if (o.method == "uniform") return uniform_segmentation(s.size(), o.n);
  throw ConfigError("unknown method '" + o.method + "' (expander, threshold, uniform)");
}

void write_piecewise(std::ostream& out, const PiecewiseConstant& pc) {
  out << "segment,left,right,sample\n";
  out.precision(17);
  for (std::size_t i = 0; i < pc.samples.size(); ++i)
    out << i << ',' << pc.segmentation.left(i) << ',' << pc.segmentation.right(i) << ',' << pc.samples[i] << '\n';
}

int cmd_segment(const Options& o) {
  const UniformSignal s = load_signal(o.signal, o.nu);
  const Segmentation seg = make_segmentation(o, s);
  Output out(o.out);
  auto& os = out.stream();
  os << "index,boundary,time\n";
  os.precision(17);
  const auto b = seg.boundaries();
  for (std::size_t i = 0; i < b.size(); ++i)
    os << i << ',' << b[i] << ',' << static_cast<double>(b[i]) / static_cast<double>(seg.grid_size()) << '\n';
  return 0;
}

int cmd_sample(const Options& o) {
  const UniformSignal s = load_signal(o.signal, o.nu);
  const PiecewiseConstant pc = optimal_samples(s, make_segmentation(o, s));
  Output out(o.out);
  write_piecewise(out.stream(), pc);
  std::cerr << "segments=" << pc.samples.size() << " mse=" << empirical_mse(s, pc) << '\n';
  return 0;
}

int cmd_reconstruct(const Options& o) {
  SamplerDescriptor desc = [&] {
    if (!o.descriptor.empty()) {
      std::ifstream in(o.descriptor);
      if (!in) throw ConfigError("cannot open descriptor '" + o.descriptor + "'");
      std::stringstream ss;
      ss << in.rdbuf();
      return descriptor_from_json(ss.str());
    }
    return describe(load_signal(o.signal, o.nu), o.n);
  }();
  const PiecewiseConstant pc = reconstruct(desc);
  Output out(o.out);
  write_piecewise(out.stream(), pc);
  if (o.descriptor.empty()) {
    const UniformSignal s = load_signal(o.signal, o.nu);
    std::cerr << "segments=" << pc.samples.size() << " extrema=" << desc.extrema.size()
              << " mse=" << empirical_mse(s, pc) << " oracle_mse=" << empirical_mse(s, optimal_samples(s, desc.boundaries))
              << '\n';
  }
  return 0;
}

int cmd_encode(const Options& o) {
  if (o.out.empty()) throw ConfigError("encode needs --out for the stream");
  const UniformSignal s = load_signal(o.signal, o.nu);
  const SamplerDescriptor desc = describe(s, o.n);
  const auto bytes = encode_descriptor(desc, o.codec);
  {
    Output out(o.out);
    out.stream().write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  }
  const RateReport r = rate_report(bytes.size(), s.size());
  const PiecewiseConstant pc = reconstruct(decode_descriptor(bytes, o.codec).descriptor);
  std::cout << "segments,extrema,stream_bits,bits_per_sample,payload_bits_per_sample,mse\n";
  std::cout.precision(10);
  std::cout << desc.boundaries.segments() << ',' << desc.extrema.size() << ',' << r.stream_bits << ','
            << r.bits_per_sample << ',' << r.payload_bits_per_sample << ',' << empirical_mse(s, pc) << '\n';
  return 0;
}

int cmd_decode(const Options& o) {
  if (o.in.empty()) throw ConfigError("decode needs --in");
  std::ifstream in(o.in, std::ios::binary);
  if (!in) throw ConfigError("cannot open stream '" + o.in + "'");
  const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const DecodedStream d = decode_descriptor(bytes, o.codec);
  Output out(o.out);
  out.stream() << descriptor_to_json(d.descriptor) << '\n';
  return 0;
}

int cmd_bench_sampling(const Options& o) {
  const UniformSignal s = load_signal(o.signal, o.nu);
  const unsigned depth = bench_depth(s.size());
  std::vector<SamplingRow> rows;
  if (!o.budgets.empty()) {
    const DyadicTree full = build_full_tree(s, depth);
    for (std::size_t n : parse_budgets(o.budgets)) rows.push_back(sampling_point(s, full, n));
  } else {
    const DyadicTree full = build_full_tree(s, depth);
    rows = bench_sampling(s, depth, parse_mu_grid(o, full));
  }
  Output out(o.out);
  write_sampling_csv(out.stream(), rows);
  return 0;
}

int cmd_bench_codec(const Options& o) {
  const UniformSignal s = load_signal(o.signal, o.nu);
  const DyadicTree full = build_full_tree(s, bench_depth(s.size()));
  const std::vector<double> grid = parse_mu_grid(o, full);
  const auto tree = tree_sweep(s, full, grid);
  const auto budgets = o.budgets.empty() ? budgets_from_mu_grid(full, grid) : parse_budgets(o.budgets);
  const auto codec = bench_codec(s, budgets, o.codec);
  {
    Output out(o.out);
    write_codec_csv(out.stream(), codec);
  }
  if (!o.tree_out.empty()) {
    Output out(o.tree_out);
    write_tree_csv(out.stream(), tree, s.size());
  }
  for (const auto& c : compare_at_top_rates(tree, codec, s.size())) {
    std::cerr << "tree " << c.tree_bits_per_sample << " bps mse " << c.tree_mse << " | codec ";
    if (c.codec_found)
      std::cerr << "N=" << c.codec_n << ' ' << c.codec_bits_per_sample << " bps mse " << c.codec_mse << '\n';
    else
      std::cerr << "none at or below this rate\n";
  }
  return 0;
}

PdfGrid load_pdf(const Options& o) {
  const std::string& p = o.pdf;
  std::vector<double> v(o.nu);
  const double inv = 1.0 / static_cast<double>(o.nu);
  if (p == "uniform") {
    std::fill(v.begin(), v.end(), 1.0);
    return PdfGrid::normalized(0.0, 1.0, std::move(v));
  }
  if (p == "triangular") {
    for (std::size_t m = 0; m < o.nu; ++m) v[m] = 2.0 * (static_cast<double>(m) + 0.5) * inv;
    return PdfGrid::normalized(0.0, 1.0, std::move(v));
  }
  if (p.rfind("signal=", 0) == 0) return pdf_from_signal(load_signal(p.substr(7), o.nu)).pdf;
  // CSV of pdf values on [0, 1).
  const UniformSignal s = read_signal_csv_file(p);
  std::vector<double> vals(s.values().begin(), s.values().end());
  return PdfGrid::normalized(0.0, 1.0, std::move(vals));
}

int cmd_quantize_design(const Options& o) {
  const QuantizerSpec q = design_quantizer_via_sampling(load_pdf(o), o.n);
  Output out(o.out);
  write_quantizer_csv(out.stream(), q);
  return 0;
}

GradientField load_gradient(const Options& o) {
  const std::string& g = o.gradient;
  // const:RxC or ramp:RxC (beta2 = x1) or a CSV path.
  const auto colon = g.find(':');
  if (colon != std::string::npos && (g.substr(0, colon) == "const" || g.substr(0, colon) == "ramp")) {
    GradientField f;
    std::stringstream ss(g.substr(colon + 1));
    std::string dim;
    while (std::getline(ss, dim, 'x')) {
      try {
        f.shape.push_back(std::stoul(dim));
      } catch (const std::logic_error&) {
        throw ConfigError("bad gradient shape '" + g + "'");
      }
    }
    std::size_t total = 1;
    for (auto n : f.shape) total *= n;
    f.beta2.assign(total, 1.0);
    if (g[0] == 'r') {
      const std::size_t stride = total / f.shape.front();
      for (std::size_t c = 0; c < total; ++c)
        f.beta2[c] = (static_cast<double>(c / stride) + 0.5) / static_cast<double>(f.shape.front());
    }
    f.validate();
    return f;
  }
  return read_gradient_csv_file(g);
}

int cmd_multidim_bound(const Options& o) {
  if (o.gradient.empty()) throw ConfigError("multidim-bound needs --gradient");
  const GradientField f = load_gradient(o);
  const std::size_t k = f.dimension();
  double m_k = o.m_k;
  if (m_k == 0.0) {
    if (k == 1) m_k = 1.0 / 12.0;
    else if (k == 2) m_k = hexagon_inertia();
    else throw ConfigError("--m is required for K > 2");
  }
  const double bound = mse_lower_bound_kd(f, o.n, m_k);
  const double at_opt = bennett_mse_kd(f, optimal_density_kd(f, kDefaultEpsilon), InertialProfile{m_k, {}}, o.n);
  std::cout << "K,N,M_K,lower_bound,bennett_at_optimal_density";
  if (o.random_fields > 0) std::cout << ",random_fields,min_margin";
  std::cout << '\n';
  std::cout.precision(12);
  std::cout << k << ',' << o.n << ',' << m_k << ',' << bound << ',' << at_opt;
  if (o.random_fields > 0) {
    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> u(0.05, 2.0);
    double margin = INFINITY;
    for (std::size_t r = 0; r < o.random_fields; ++r) {
      DensityField d{std::vector<double>(f.cells())};
      double sum = 0.0;
      for (double& v : d.values) sum += (v = u(rng));
      for (double& v : d.values) v *= static_cast<double>(f.cells()) / sum;
      margin = std::min(margin, bennett_mse_kd(f, d, InertialProfile{m_k, {}}, o.n) - bound);
    }
    std::cout << ',' << o.random_fields << ',' << margin;
  }
  std::cout << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonuniform sampling toolkit: segmentation, reconstruction, coding and benchmarks"};
  app.require_subcommand(1);
  Options o;

  auto add_signal = [&](CLI::App* c) {
    c->add_option("--signal", o.signal, "analytic spec (exp:alpha=3, cos:alpha=5,scale=255, ...) or CSV path");
    c->add_option("--nu", o.nu, "uniform grid size N_U")->check(CLI::PositiveNumber);
  };
  auto add_common = [&](CLI::App* c) {
    c->add_option("--config", o.config, "flat key=value config file");
    c->add_option("--out", o.out, "output file (default: stdout)");
    c->add_option("--seed", o.seed, "seed for randomised checks");
  };
  auto add_n = [&](CLI::App* c) { c->add_option("--n", o.n, "segment budget N")->check(CLI::PositiveNumber); };
  auto add_method = [&](CLI::App* c) {
    c->add_option("--method", o.method, "expander | threshold | uniform");
  };
  auto add_mu = [&](CLI::App* c) {
    c->add_option("--mu-grid", o.mu_grid, "'default', lo:hi:count (log-spaced) or a comma list");
    c->add_option("--budgets", o.budgets, "comma list of N values instead of the mu grid");
  };

  auto* seg = app.add_subcommand("segment", "print segment boundaries");
  add_signal(seg); add_n(seg); add_method(seg); add_common(seg);
  auto* smp = app.add_subcommand("sample", "segment means on a segmentation");
  add_signal(smp); add_n(smp); add_method(smp); add_common(smp);
  auto* rec = app.add_subcommand("reconstruct", "rebuild samples from boundaries, extrema and T_opt");
  add_signal(rec); add_n(rec); add_common(rec);
  rec->add_option("--descriptor", o.descriptor, "descriptor JSON instead of --signal");
  auto* enc = app.add_subcommand("encode", "write a descriptor bitstream and report its rate");
  add_signal(enc); add_n(enc); add_common(enc);
  auto* dec = app.add_subcommand("decode", "print the descriptor held in a bitstream");
  add_common(dec);
  dec->add_option("--in", o.in, "bitstream file")->required();
  auto* bs = app.add_subcommand("bench-sampling", "MSE of nonuniform, uniform and tree sampling per budget");
  add_signal(bs); add_mu(bs); add_common(bs);
  auto* bc = app.add_subcommand("bench-codec", "distortion-rate sweep of the descriptor codec");
  add_signal(bc); add_mu(bc); add_common(bc);
  bc->add_option("--tree-out", o.tree_out, "tree sweep CSV (mu, leaves, bits, mse)");
  auto* qd = app.add_subcommand("quantize-design", "scalar quantizer via the sampling duality");
  add_n(qd); add_common(qd);
  qd->add_option("--pdf", o.pdf, "uniform | triangular | signal=<spec> | CSV path");
  qd->add_option("--nu", o.nu, "pdf grid size")->check(CLI::PositiveNumber);
  auto* md = app.add_subcommand("multidim-bound", "K-dimensional high-resolution MSE bound");
  add_n(md); add_common(md);
  md->add_option("--gradient", o.gradient, "CSV path, const:RxC or ramp:RxC");
  md->add_option("--m", o.m_k, "normalized moment of inertia M_K (default 1/12 or hexagon)");
  md->add_option("--random-fields", o.random_fields, "check the bound on this many random densities");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (!o.config.empty()) {
      // Flags given on the command line win over the file.
      Options from_file = o;
      apply_config_file(o.config, from_file);
      auto* sub = app.get_subcommands().front();
      auto given = [&](const char* flag) {
        const CLI::Option* opt = sub->get_option_no_throw(flag);
        return opt != nullptr && opt->count() > 0;
      };
      if (!given("--signal")) o.signal = from_file.signal;
      if (!given("--nu")) o.nu = from_file.nu;
      if (!given("--n")) o.n = from_file.n;
      if (!given("--method")) o.method = from_file.method;
      if (!given("--mu-grid")) o.mu_grid = from_file.mu_grid;
      if (!given("--seed")) o.seed = from_file.seed;
      o.codec = from_file.codec;
    }
    o.codec.validate();

    if (seg->parsed()) return cmd_segment(o);
    if (smp->parsed()) return cmd_sample(o);
    if (rec->parsed()) return cmd_reconstruct(o);
    if (enc->parsed()) return cmd_encode(o);
    if (dec->parsed()) return cmd_decode(o);
    if (bs->parsed()) return cmd_bench_sampling(o);
    if (bc->parsed()) return cmd_bench_codec(o);
    if (qd->parsed()) return cmd_quantize_design(o);
    if (md->parsed()) return cmd_multidim_bound(o);
  } catch (const nus::Error& e) {
    std::cerr << "nus: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "nus: internal error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
