#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace qsn {

// Seeded draws with fully specified mapping from engine output to values.
// std::uniform_int_distribution is implementation-defined, which would break
// byte-identical reruns; modular draws from mt19937_64 are portable and the
// bias is irrelevant at test scale.
class DeterministicRng {
public:
  explicit DeterministicRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t raw() { return engine_(); }

  // Uniform in [0, n).
  std::uint64_t below(std::uint64_t n) { return n ? engine_() % n : 0; }

  // Uniform in [lo, hi] inclusive.
  long long between(long long lo, long long hi) {
    return lo + static_cast<long long>(
                    below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool chance(double p) { return uniform() < p; }

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double normal() {
    // Marsaglia polar method, deterministic given the engine stream.
    for (;;) {
      double u = 2.0 * uniform() - 1.0;
      double v = 2.0 * uniform() - 1.0;
      double s = u * u + v * v;
      if (s > 0.0 && s < 1.0)
        return u * std::sqrt(-2.0 * std::log(s) / s);
    }
  }

private:
  std::mt19937_64 engine_;
};

}  // namespace qsn
