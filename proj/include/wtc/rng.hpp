#ifndef WTC_RNG_HPP
#define WTC_RNG_HPP

#include <array>
#include <cstdint>

#include "wtc/types.hpp"

namespace wtc {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Pure integer
// arithmetic, so a (seed, stream) pair reproduces the same sequence on any
// platform. `stream` carves out independent substreams, e.g. one per trial.
class Philox {
 public:
  explicit Philox(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint32_t next_u32();
  std::uint64_t next_u64();

  // Uniform on (0,1), 53-bit resolution, never exactly 0 or 1.
  double next_double();

  // Standard real normal via Box-Muller; draws a fresh uniform pair per call.
  double next_gaussian();

  // Circularly-symmetric complex normal CN(0,1): real and imaginary parts are
  // independent N(0, 1/2) taken from one Box-Muller pair (real, then imag).
  Complex next_cgaussian();

 private:
  void refill();

  std::array<std::uint32_t, 4> counter_;
  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> block_{};
  int pos_ = 4;  // triggers refill on first draw
};

}  // namespace wtc

#endif  // WTC_RNG_HPP
