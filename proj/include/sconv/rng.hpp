#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace sconv {

// sconv-rng-v1
//
// All randomness in the project flows through RngStream, keyed by
// (seed, counter). Counter-based keying gives every draw its own stream, so
// parallel sampling reproduces serial output exactly. The stream itself is a
// std::mt19937_64 (fully specified by the standard) seeded through splitmix64
// mixing; uniform and gaussian variates are generated by explicit formulas
// rather than std distributions, whose output is implementation-defined.
// Changing any of this is a breaking change to every recorded seed.

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t mix_key(std::uint64_t a, std::uint64_t b) {
  return splitmix64(a ^ splitmix64(b + 0x9e3779b97f4a7c15ULL));
}

class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t counter)
      : engine_(mix_key(seed, counter)) {}

  std::uint64_t next_u64() { return engine_(); }

  // 53-bit uniform in [0, 1).
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller, spare cached.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u = 0.0;
    do {
      u = uniform();
    } while (u == 0.0);
    const double v = uniform();
    const double r = std::sqrt(-2.0 * std::log(u));
    const double a = 2.0 * 3.14159265358979323846 * v;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  // Unbiased integer in [0, n) by rejection.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t x = 0;
    do {
      x = next_u64();
    } while (x >= limit);
    return x % n;
  }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace sconv
