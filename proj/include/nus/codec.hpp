#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "nus/reconstructor.hpp"

namespace nus {

struct CodecConfig {
  unsigned b_j = 8;
  unsigned b_ext = 13;
  unsigned b_val0 = 15;
  double phi_min = -255.0;
  double phi_max = 255.0;

  void validate() const;
};

/// MSB-first bit packer.
class BitWriter {
public:
  void write(std::uint64_t value, unsigned bits);
  void write_bit(bool bit) { write(bit ? 1u : 0u, 1); }
  std::size_t bit_count() const noexcept { return bits_; }
  /// Zero-pads to a byte boundary and hands over the bytes.
  std::vector<std::uint8_t> finish() &&;

private:
  std::vector<std::uint8_t> bytes_;
  std::size_t bits_ = 0;
};

class BitReader {
public:
  explicit BitReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}
  /// Throws DecodeError past the end of the stream.
  std::uint64_t read(unsigned bits);
  bool read_bit() { return read(1) != 0; }
  std::size_t position() const noexcept { return pos_; }
  std::size_t remaining() const noexcept { return bytes_.size() * 8 - pos_; }

private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

std::uint32_t quantize_uniform(double v, unsigned bits, double phi_min, double phi_max);
double dequantize_uniform(std::uint32_t index, unsigned bits, double phi_min, double phi_max);

/// Differential escape coding of a non-decreasing list; the first difference
/// is taken from 0. A difference d costs floor(d / (2^b - 1)) + 1 symbols.
std::vector<std::uint32_t> encode_monotone(std::span<const std::size_t> ints, unsigned b_diff);
std::vector<std::size_t> decode_monotone(std::span<const std::uint32_t> symbols, unsigned b_diff,
                                         std::size_t count);

/// Encoded size in bits of `ints` at width b_diff.
std::size_t monotone_cost_bits(std::span<const std::size_t> ints, unsigned b_diff);

/// Cheapest width in [1, 15]; ties go to the smaller width.
unsigned choose_b_diff(std::span<const std::size_t> ints);

std::vector<std::uint8_t> encode_descriptor(const SamplerDescriptor& desc, const CodecConfig& cfg = {});

struct DecodedStream {
  SamplerDescriptor descriptor;
  CodecConfig config;
};

/// The wire format does not carry widths or ranges, so the decoder must be
/// given the configuration the stream was written with.
DecodedStream decode_descriptor(std::span<const std::uint8_t> bytes, const CodecConfig& cfg = {});

/// Bits spent on magic, version, n_u and N; excluded from the payload rate.
inline constexpr std::size_t kHeaderBits = 4 * 8 + 8 + 32 + 32;

struct RateReport {
  std::size_t stream_bits = 0;   ///< bytes * 8, padding included
  std::size_t payload_bits = 0;  ///< stream_bits - kHeaderBits
  double bits_per_sample = 0.0;  ///< stream_bits / n_u
  double payload_bits_per_sample = 0.0;
};

RateReport rate_report(std::size_t stream_bytes, std::size_t n_u);

}  // namespace nus
