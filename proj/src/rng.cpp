#include "heatlab/rng.hpp"

#include <cmath>

namespace heatlab {

namespace {

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> c,
                                        std::array<std::uint32_t, 2> k) {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(0xD2511F53u, c[0], hi0, lo0);
    mulhilo(0xCD9E8D57u, c[2], hi1, lo1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    k[0] += 0x9E3779B9u;
    k[1] += 0xBB67AE85u;
  }
  return c;
}

NormalStream::NormalStream(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream) {}

std::array<std::uint64_t, 2> NormalStream::next_block() {
  const std::array<std::uint32_t, 4> ctr = {
      static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
      static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)};
  const std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(seed_),
                                            static_cast<std::uint32_t>(seed_ >> 32)};
  ++block_;
  const auto o = philox4x32(ctr, key);
  return {(static_cast<std::uint64_t>(o[1]) << 32) | o[0],
          (static_cast<std::uint64_t>(o[3]) << 32) | o[2]};
}

double NormalStream::uniform() {
  const auto b = next_block();
  // 53-bit mantissa, shifted to the open interval.
  return (static_cast<double>(b[0] >> 11) + 0.5) * 0x1.0p-53;
}

double NormalStream::normal() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  const auto b = next_block();
  const double u1 = (static_cast<double>(b[0] >> 11) + 0.5) * 0x1.0p-53;
  const double u2 = (static_cast<double>(b[1] >> 11) + 0.5) * 0x1.0p-53;
  const double r = std::sqrt(-2.0 * std::log(u1));
  cached_ = r * std::sin(kTwoPi * u2);
  has_cached_ = true;
  return r * std::cos(kTwoPi * u2);
}

}  // namespace heatlab
