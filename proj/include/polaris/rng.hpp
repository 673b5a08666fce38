#ifndef POLARIS_RNG_HPP
#define POLARIS_RNG_HPP

#include <cstdint>

namespace polaris {

// Counter-based generator (splitmix64 finalizer over key+counter).
// Stateless between draws except for the counter, so shards that agree on
// (seed, stream) reproduce identical values regardless of thread schedule.
class Rng {
public:
  explicit Rng(uint64_t seed, uint64_t stream = 0)
      : key_(mix(seed ^ 0x9E3779B97F4A7C15ULL) ^ mix(stream + 0x6A09E667F3BCC909ULL)) {}

  uint64_t next() {
    return mix(key_ + (++ctr_) * 0x9E3779B97F4A7C15ULL);
  }

  // Unbiased enough for sampling uses here (multiply-shift; deterministic).
  uint64_t below(uint64_t n) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(next()) * n) >> 64);
  }

  // Uniform integer in [lo, hi], inclusive.
  int64_t int_in(int64_t lo, int64_t hi) {
    return lo + static_cast<int64_t>(below(static_cast<uint64_t>(hi - lo + 1)));
  }

  // Small nonzero integer in [-k, k] \ {0}: the "general coefficient" policy.
  int64_t small_nonzero(int64_t k) {
    int64_t v = int_in(1, k);
    return (next() & 1) ? v : -v;
  }

  // Independent child stream; derivation depends only on (key, label).
  Rng fork(uint64_t label) const {
    Rng child(0);
    child.key_ = mix(key_ ^ mix(label + 0xBF58476D1CE4E5B9ULL));
    child.ctr_ = 0;
    return child;
  }

private:
  static uint64_t mix(uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  uint64_t key_;
  uint64_t ctr_ = 0;
};

}  // namespace polaris

#endif
