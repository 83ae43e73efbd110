#pragma once

#include <cmath>
#include <cstdint>

namespace fnfpad {

// Portable 64-bit generator (splitmix64, Steele et al. constants).
// Every stochastic artifact in the project goes through this so that
// identical seeds give byte-identical output on any platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // uniform in [0,1)
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // uniform in (0,1), safe for log()
  double next_double_open() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // Box-Muller; consumes two draws per call
  double next_gaussian() {
    double u1 = next_double_open();
    double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
  }

  // Derive an independent stream for a named purpose. The tag is folded
  // into the state with the splitmix increment so streams do not overlap.
  static SplitMix64 substream(std::uint64_t seed, std::uint64_t tag) {
    SplitMix64 r(seed ^ (tag * 0x9E3779B97F4A7C15ULL));
    r.next_u64();
    return r;
  }

 private:
  std::uint64_t state_;
};

}  // namespace fnfpad
