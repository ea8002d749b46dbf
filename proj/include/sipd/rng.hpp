#ifndef SIPD_RNG_HPP
#define SIPD_RNG_HPP

#include <cstdint>
#include <random>
#include <stdexcept>

namespace sipd {

// Seeded random source. All stochastic operations take an Rng& explicitly
// and consume draws in a documented order, so a run is a pure function of
// its seed. mt19937_64 output is fixed by the standard; the uniform/
// uniform_below mappings below avoid std::*_distribution, whose results
// are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform double in [0,1), 53-bit resolution. One engine step.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0,n). Unbiased via rejection; consumes at least
  // one engine step.
  std::uint64_t uniform_below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("Rng::uniform_below: n must be positive");
    const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    std::uint64_t x;
    do {
      x = engine_();
    } while (x < threshold);
    return x % n;
  }

  // True with probability p. One engine step.
  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace sipd

#endif  // SIPD_RNG_HPP
