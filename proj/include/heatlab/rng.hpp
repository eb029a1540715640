#pragma once

#include <array>
#include <cstdint>

namespace heatlab {

// Philox 4x32-10 block function.  Counter-based: each 128-bit output block is
// a pure function of (counter, key), so independent streams can be carved out
// of the key/counter space and replayed in any order.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key);

// Standard normal / uniform draws from the (seed, stream) slot.  Stream ids
// are 64-bit, typically the path index; draws inside a stream advance a
// private block counter, so path i sees the same numbers no matter which
// worker runs it.
class NormalStream {
 public:
  NormalStream(std::uint64_t seed, std::uint64_t stream);

  double normal();
  double uniform();  // strictly inside (0,1)

 private:
  std::array<std::uint64_t, 2> next_block();

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace heatlab
