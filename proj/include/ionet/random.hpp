#pragma once

#include <cstdint>
#include <random>

namespace ionet {

// Counter-based stream derivation: every consumer owns an independent
// generator keyed by (seed, purpose, index), so datasets and collocation
// draws are reproducible regardless of evaluation order or thread count.

enum class StreamPurpose : std::uint64_t {
  kInit = 1,        // network parameter initialization
  kGrfDraw = 2,     // Gaussian random field samples
  kCollocation = 3, // residual/interface/boundary training points
  kBatch = 4,       // minibatch index choice
  kGeometry = 5,    // geometric samplers
  kDataset = 6,     // per-sample scalar parameters
  kLabels = 7,      // label point selection
  kEval = 8,        // evaluation/Monte Carlo points
};

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
}  // namespace detail

inline std::uint64_t derive_stream_key(std::uint64_t seed, StreamPurpose purpose,
                                       std::uint64_t index) {
  std::uint64_t s = seed;
  std::uint64_t k = detail::splitmix64(s);
  s ^= static_cast<std::uint64_t>(purpose) * 0xd1342543de82ef95ULL;
  k ^= detail::splitmix64(s);
  s ^= index * 0xaf251af3b0f025b5ULL;
  k ^= detail::splitmix64(s);
  return k;
}

/// Deterministic random stream. Uniforms come from the top 53 bits of
/// mt19937_64; normals use explicit Box-Muller so the draw sequence is
/// pinned by this code, not by the standard library's distribution choice.
class RngStream {
 public:
  explicit RngStream(std::uint64_t key) : engine_(key) {}

  static RngStream derive(std::uint64_t seed, StreamPurpose purpose, std::uint64_t index) {
    return RngStream(derive_stream_key(seed, purpose, index));
  }

  std::uint64_t next_u64() { return engine_(); }

  double uniform01() {  // in [0, 1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer in [0, n).
  std::uint64_t uniform_index(std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t r;
    do {
      r = engine_();
    } while (r >= limit);
    return r % n;
  }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    // strictly positive u1 keeps log() finite
    const double u1 = (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    const double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace ionet
