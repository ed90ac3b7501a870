#pragma once

#include <complex>
#include <cstdint>

namespace bdvp {

/// Counter-based pseudo-random generator (Philox4x64, 10 rounds).
///
/// The generator is keyed by (seed, stream) and produces an independent
/// sequence per (stream, lane) pair, which makes it trivially splittable:
/// every Monte Carlo realization owns its own lane and draws the same
/// numbers no matter how realizations are scheduled across threads.
/// Gaussian variates come from the Box-Muller transform on 53-bit
/// uniforms, so sequences are reproducible bit-for-bit across platforms.
class Philox {
 public:
  explicit Philox(std::uint64_t seed, std::uint64_t stream = 0,
                  std::uint64_t lane = 0) noexcept
      : key_{seed, stream}, counter_{0, lane, 0, 0} {}

  /// Next 64-bit word of the keyed sequence.
  std::uint64_t next_u64() noexcept {
    if (pos_ == 4) {
      generate_block();
      pos_ = 0;
    }
    return block_[pos_++];
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Standard normal variate, Box-Muller.
  double next_gaussian() noexcept;

  /// Circularly symmetric complex Gaussian with E|z|^2 = variance.
  std::complex<double> next_cgaussian(double variance) noexcept;

  /// Uniform bit.
  int next_bit() noexcept { return static_cast<int>(next_u64() & 1u); }

  /// One Philox4x64-10 block; exposed for known-answer tests.
  static void block4x64(const std::uint64_t counter[4],
                        const std::uint64_t key[2],
                        std::uint64_t out[4]) noexcept;

 private:
  void generate_block() noexcept;

  std::uint64_t key_[2];
  std::uint64_t counter_[4];
  std::uint64_t block_[4] = {0, 0, 0, 0};
  int pos_ = 4;
  double spare_gaussian_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace bdvp
