#pragma once

// Deterministic random stream used by every stochastic component.
//
// Engine: std::mt19937_64, seeded through a splitmix64 mix of
// (root seed, stream index) so that Monte Carlo paths get decorrelated,
// reproducible substreams.  Gaussians come from the polar (Marsaglia)
// variant of the Box-Muller transform; both algorithms are fixed here so a
// given seed always yields the same draws.

#include <cstdint>
#include <random>

namespace leadlag {

// splitmix64 step (Steele, Lea, Vigna); used only for seed derivation.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Seed for Monte Carlo path `stream` under `root`; nearby streams map to
// unrelated engine states.
inline std::uint64_t derive_stream_seed(std::uint64_t root, std::uint64_t stream) {
  std::uint64_t s = root;
  std::uint64_t a = splitmix64(s);
  s ^= stream * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL;
  return a ^ splitmix64(s);
}

class GaussianRng {
 public:
  explicit GaussianRng(std::uint64_t seed) : engine_(seed) {}

  // Uniform double in (0, 1].
  double uniform01() {
    return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1p-53;
  }

  // Standard normal via the polar Box-Muller method.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform01() - 1.0;
      v = 2.0 * uniform01() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double scale = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * scale;
    have_spare_ = true;
    return u * scale;
  }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace leadlag
