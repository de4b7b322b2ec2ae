#ifndef MOQI_RNG_HPP
#define MOQI_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace moqi {

namespace detail {
// SplitMix64 step, used to derive independent stream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}
}  // namespace detail

/// Seedable random generator with reproducible cross-platform output.
///
/// Uniform doubles are built directly from the top 53 bits of mt19937_64
/// output instead of std::uniform_real_distribution, whose mapping is not
/// pinned down by the standard. Given the same seed the whole stream is
/// bit-identical on every conforming implementation.
///
/// fork(stream) derives an independent generator from the *construction*
/// seed and a stream id, regardless of how many draws were made. Evolution
/// runs use fixed ids: 0 = initialization, 1 = tournament selection,
/// 2 = crossover, 3 = mutation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1).
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform index in [0, k). k must be positive; bias is negligible for
  /// k far below 2^64 and the result stays deterministic.
  std::size_t index(std::size_t k) {
    return static_cast<std::size_t>(next_u64() % static_cast<std::uint64_t>(k));
  }

  /// Standard normal via Box-Muller (deterministic, caches the spare value).
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  /// Independent deterministic substream.
  Rng fork(std::uint64_t stream) const {
    return Rng(detail::splitmix64(seed_ ^ (0x9E3779B97F4A7C15ULL * (stream + 1))));
  }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace moqi

#endif  // MOQI_RNG_HPP
