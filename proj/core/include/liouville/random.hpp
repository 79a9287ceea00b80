#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace liouville {

/// Philox4x32-10 block function (Salmon et al.): a bijection of the 128-bit
/// counter keyed by a 64-bit key.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

/// Independent random stream addressed by (seed, stream index). Two streams
/// with the same address produce identical sequences regardless of which
/// thread draws them. Models UniformRandomBitGenerator.
class PhiloxStream {
 public:
  using result_type = std::uint32_t;

  PhiloxStream(std::uint64_t seed, std::uint64_t stream);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

  /// Uniform on the open interval (0, 1) with 32-bit resolution.
  double uniform();
  /// Standard normal by the Marsaglia polar method.
  double normal();

 private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace liouville
