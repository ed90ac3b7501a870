#include "bdvp/rng.hpp"

#include <cmath>
#include <numbers>

namespace bdvp {

namespace {

constexpr std::uint64_t kMult0 = 0xD2E7470EE14C6C93ULL;
constexpr std::uint64_t kMult1 = 0xCA5A826395121157ULL;
constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

inline void mul_hi_lo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi,
                      std::uint64_t& lo) noexcept {
  const unsigned __int128 p =
      static_cast<unsigned __int128>(a) * static_cast<unsigned __int128>(b);
  hi = static_cast<std::uint64_t>(p >> 64);
  lo = static_cast<std::uint64_t>(p);
}

}  // namespace

void Philox::block4x64(const std::uint64_t counter[4],
                       const std::uint64_t key[2],
                       std::uint64_t out[4]) noexcept {
  std::uint64_t c0 = counter[0], c1 = counter[1], c2 = counter[2],
                c3 = counter[3];
  std::uint64_t k0 = key[0], k1 = key[1];
  for (int round = 0; round < 10; ++round) {
    std::uint64_t hi0, lo0, hi1, lo1;
    mul_hi_lo(kMult0, c0, hi0, lo0);
    mul_hi_lo(kMult1, c2, hi1, lo1);
    const std::uint64_t n0 = hi1 ^ c1 ^ k0;
    const std::uint64_t n1 = lo1;
    const std::uint64_t n2 = hi0 ^ c3 ^ k1;
    const std::uint64_t n3 = lo0;
    c0 = n0;
    c1 = n1;
    c2 = n2;
    c3 = n3;
    k0 += kWeyl0;
    k1 += kWeyl1;
  }
  out[0] = c0;
  out[1] = c1;
  out[2] = c2;
  out[3] = c3;
}

void Philox::generate_block() noexcept {
  block4x64(counter_, key_, block_);
  // 256-bit little-endian counter increment; lanes above word 0 only
  // change when a caller-selected lane wraps, which never happens in
  // practice (2^64 blocks per lane).
  if (++counter_[0] == 0 && ++counter_[1] == 0 && ++counter_[2] == 0) {
    ++counter_[3];
  }
}

double Philox::next_gaussian() noexcept {
  if (has_spare_) {
    has_spare_ = false;
    return spare_gaussian_;
  }
  // u1 in (0, 1] keeps the log finite.
  const double u1 =
      (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = next_double();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_gaussian_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

std::complex<double> Philox::next_cgaussian(double variance) noexcept {
  const double scale = std::sqrt(variance / 2.0);
  const double re = next_gaussian();
  const double im = next_gaussian();
  return {scale * re, scale * im};
}

}  // namespace bdvp
