#pragma once

#include <array>
#include <cstdint>

namespace dpdlogit {

/// Philox4x32-10 counter-based generator. A (seed, stream_a, stream_b)
/// triple selects an independent substream, so replication r of sample
/// size n draws the same numbers whatever thread runs it.
class Philox {
 public:
  Philox(std::uint64_t seed, std::uint64_t stream_a, std::uint64_t stream_b);

  std::uint32_t next_u32();
  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform();
  /// Standard normal by the Box-Muller transform.
  double normal();

  /// One Philox4x32-10 block for the given counter and key.
  static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> counter,
                                            std::array<std::uint32_t, 2> key);

 private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> counter_;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace dpdlogit
