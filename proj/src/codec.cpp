#include "nus/codec.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <limits>
#include <string>

#include "nus/error.hpp"

namespace nus {

namespace {

constexpr std::uint8_t kMagic[4] = {'N', 'U', 'S', '1'};
constexpr std::uint8_t kVersion = 0x01;
constexpr unsigned kDiffField = 4;
constexpr unsigned kMaxDiffBits = 15;

void check_bits(unsigned bits) {
  if (bits < 1 || bits > 16) throw ParameterError("bit width must lie in [1, 16]");
}

std::uint32_t escape_of(unsigned b) { return (std::uint32_t{1} << b) - 1; }

void write_block(BitWriter& w, std::span<const std::size_t> ints) {
  const unsigned b = choose_b_diff(ints);
  w.write(b, kDiffField);
  for (std::uint32_t sym : encode_monotone(ints, b)) w.write(sym, b);
}

std::vector<std::size_t> read_block(BitReader& r, std::size_t count) {
  const auto b = static_cast<unsigned>(r.read(kDiffField));
  if (b == 0) throw DecodeError("zero b_diff in monotone block");
  const std::uint32_t esc = escape_of(b);
  std::vector<std::size_t> out;
  out.reserve(count);
  std::size_t acc = 0;
  while (out.size() < count) {
    std::size_t diff = 0;
    std::uint32_t sym;
    while ((sym = static_cast<std::uint32_t>(r.read(b))) == esc) diff += esc;
    acc += diff + sym;
    out.push_back(acc);
  }
  return out;
}

}  // namespace

void CodecConfig::validate() const {
  check_bits(b_j);
  check_bits(b_ext);
  check_bits(b_val0);
  if (!(phi_min < phi_max) || !std::isfinite(phi_min) || !std::isfinite(phi_max))
    throw ParameterError("codec range must satisfy phi_min < phi_max");
}

void BitWriter::write(std::uint64_t value, unsigned bits) {
  for (unsigned i = bits; i-- > 0;) {
    if (bits_ % 8 == 0) bytes_.push_back(0);
    if ((value >> i) & 1u) bytes_.back() |= static_cast<std::uint8_t>(0x80u >> (bits_ % 8));
    ++bits_;
  }
}

std::vector<std::uint8_t> BitWriter::finish() && { return std::move(bytes_); }

std::uint64_t BitReader::read(unsigned bits) {
  if (bits > remaining()) throw DecodeError("stream truncated");
  std::uint64_t v = 0;
  for (unsigned i = 0; i < bits; ++i, ++pos_) v = (v << 1) | ((bytes_[pos_ / 8] >> (7 - pos_ % 8)) & 1u);
  return v;
}

std::uint32_t quantize_uniform(double v, unsigned bits, double phi_min, double phi_max) {
  if (bits < 1 || bits > 31) throw ParameterError("quantizer bit width must lie in [1, 31]");
  const double levels = std::ldexp(1.0, static_cast<int>(bits));
  const double step = (phi_max - phi_min) / levels;
  const double idx = std::floor((v - phi_min) / step);
  return static_cast<std::uint32_t>(std::clamp(idx, 0.0, levels - 1.0));
}

double dequantize_uniform(std::uint32_t index, unsigned bits, double phi_min, double phi_max) {
  if (bits < 1 || bits > 31) throw ParameterError("quantizer bit width must lie in [1, 31]");
  const double step = (phi_max - phi_min) / std::ldexp(1.0, static_cast<int>(bits));
  return phi_min + (static_cast<double>(index) + 0.5) * step;
}

std::vector<std::uint32_t> encode_monotone(std::span<const std::size_t> ints, unsigned b_diff) {
  if (b_diff < 1 || b_diff > 31) throw ParameterError("b_diff must lie in [1, 31]");
  const std::uint32_t esc = escape_of(b_diff);
  std::vector<std::uint32_t> out;
  std::size_t prev = 0;
  for (std::size_t v : ints) {
    if (v < prev) throw EncodingError("monotone coder needs a non-decreasing list");
    const std::size_t d = v - prev;
    out.insert(out.end(), d / esc, esc);
    out.push_back(static_cast<std::uint32_t>(d % esc));
    prev = v;
  }
  return out;
}

std::vector<std::size_t> decode_monotone(std::span<const std::uint32_t> symbols, unsigned b_diff,
                                         std::size_t count) {
  if (b_diff < 1 || b_diff > 31) throw ParameterError("b_diff must lie in [1, 31]");
  const std::uint32_t esc = escape_of(b_diff);
  std::vector<std::size_t> out;
  out.reserve(count);
  std::size_t acc = 0;
  std::size_t pos = 0;
  while (out.size() < count) {
    if (pos >= symbols.size()) throw DecodeError("symbol list ends early");
    const std::uint32_t sym = symbols[pos++];
    acc += sym;
    if (sym != esc) out.push_back(acc);
  }
  if (pos != symbols.size()) throw DecodeError("trailing symbols after the last value");
  return out;
}

std::size_t monotone_cost_bits(std::span<const std::size_t> ints, unsigned b_diff) {
  if (b_diff < 1 || b_diff > 31) throw ParameterError("b_diff must lie in [1, 31]");
  const std::size_t esc = escape_of(b_diff);
  std::size_t symbols = 0;
  std::size_t prev = 0;
  for (std::size_t v : ints) {
    if (v < prev) throw EncodingError("monotone coder needs a non-decreasing list");
    symbols += (v - prev) / esc + 1;
    prev = v;
  }
  return symbols * b_diff;
}

unsigned choose_b_diff(std::span<const std::size_t> ints) {
  unsigned best = 1;
  std::size_t best_cost = std::numeric_limits<std::size_t>::max();
  for (unsigned b = 1; b <= kMaxDiffBits; ++b) {
    const std::size_t cost = monotone_cost_bits(ints, b);
    if (cost < best_cost) {
      best_cost = cost;
      best = b;
    }
  }
  return best;
}

std::vector<std::uint8_t> encode_descriptor(const SamplerDescriptor& desc, const CodecConfig& cfg) {
  cfg.validate();
  desc.validate();
  const std::size_t n = desc.boundaries.segments();
  const std::size_t j = desc.extrema.size();
  constexpr auto u32max = std::numeric_limits<std::uint32_t>::max();
  if (desc.n_u > u32max) throw EncodingError("n_u does not fit in 32 bits");
  if (j > escape_of(cfg.b_j))
    throw EncodingError("J = " + std::to_string(j) + " does not fit in " + std::to_string(cfg.b_j) + " bits");

  BitWriter w;
  for (std::uint8_t c : kMagic) w.write(c, 8);
  w.write(kVersion, 8);
  w.write(desc.n_u, 32);
  w.write(n, 32);
  w.write(j, cfg.b_j);
  w.write_bit(desc.s0 > 0);
  w.write(quantize_uniform(desc.phi0, cfg.b_val0, cfg.phi_min, cfg.phi_max), cfg.b_val0);
  w.write(std::bit_cast<std::uint64_t>(desc.t_opt), 64);

  const auto b = desc.boundaries.boundaries();
  write_block(w, b.subspan(1, n - 1));
  if (j > 0) {
    std::vector<std::size_t> idx;
    idx.reserve(j);
    for (const auto& e : desc.extrema.entries) idx.push_back(e.index);
    write_block(w, idx);
    for (const auto& e : desc.extrema.entries)
      w.write(quantize_uniform(e.amplitude, cfg.b_ext, cfg.phi_min, cfg.phi_max), cfg.b_ext);
  }
  return std::move(w).finish();
}

DecodedStream decode_descriptor(std::span<const std::uint8_t> bytes, const CodecConfig& cfg) {
  cfg.validate();
  BitReader r(bytes);
  for (std::uint8_t c : kMagic)
    if (r.read(8) != c) throw DecodeError("bad magic");
  if (r.read(8) != kVersion) throw DecodeError("unsupported stream version");
  const auto n_u = static_cast<std::size_t>(r.read(32));
  const auto n = static_cast<std::size_t>(r.read(32));
  if (n < 1 || n > n_u) throw DecodeError("segment count outside [1, n_u]");
  const auto j = static_cast<std::size_t>(r.read(cfg.b_j));
  const int s0 = r.read_bit() ? 1 : -1;
  const double phi0 =
      dequantize_uniform(static_cast<std::uint32_t>(r.read(cfg.b_val0)), cfg.b_val0, cfg.phi_min, cfg.phi_max);
  const double t_opt = std::bit_cast<double>(r.read(64));

  std::vector<std::size_t> b{0};
  const auto interior = read_block(r, n - 1);
  b.insert(b.end(), interior.begin(), interior.end());
  b.push_back(n_u);

  ExtremaList extrema;
  if (j > 0) {
    const auto idx = read_block(r, j);
    bool maximum = s0 > 0;  // kinds alternate, starting from the initial trend
    for (std::size_t i = 0; i < j; ++i, maximum = !maximum) {
      const double amp = dequantize_uniform(static_cast<std::uint32_t>(r.read(cfg.b_ext)), cfg.b_ext,
                                            cfg.phi_min, cfg.phi_max);
      extrema.entries.push_back(Extremum{idx[i], amp, maximum});
    }
  }
  if (r.remaining() >= 8) throw DecodeError("trailing bytes after the descriptor");
  while (r.remaining() > 0)
    if (r.read_bit()) throw DecodeError("non-zero padding");

  try {
    SamplerDescriptor desc{Segmentation(std::move(b)), std::move(extrema), s0, phi0, t_opt, n_u};
    desc.validate();
    return DecodedStream{std::move(desc), cfg};
  } catch (const ParameterError& e) {
    throw DecodeError(std::string("inconsistent descriptor: ") + e.what());
  }
}

RateReport rate_report(std::size_t stream_bytes, std::size_t n_u) {
  if (n_u == 0) throw ParameterError("n_u must be positive");
  RateReport r;
  r.stream_bits = stream_bytes * 8;
  r.payload_bits = r.stream_bits > kHeaderBits ? r.stream_bits - kHeaderBits : 0;
  r.bits_per_sample = static_cast<double>(r.stream_bits) / static_cast<double>(n_u);
  r.payload_bits_per_sample = static_cast<double>(r.payload_bits) / static_cast<double>(n_u);
  return r;
}

}  // namespace nus
