#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace pagraph {

// SplitMix64 mixing step; used to derive independent generator seeds.
std::uint64_t splitmix64(std::uint64_t x);

// Deterministic random source. All experiment randomness flows through this
// class. The generator is std::mt19937_64 (fully specified by the standard)
// and every derivation below is explicit bit arithmetic, so identical seeds
// give identical streams across runs and platforms. The one exception is
// normal(), whose Marsaglia-polar transform goes through libm log/sqrt.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal via Marsaglia's polar method (one spare cached).
  double normal();

  // Uniform integer in [lo, hi], both inclusive. Unbiased via rejection.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  // Child generator whose stream depends only on (seed, stream), not on how
  // many values this instance has already produced.
  Rng fork(std::uint64_t stream) const {
    return Rng(splitmix64(seed_ ^ splitmix64(stream)));
  }

  std::uint64_t seed() const { return seed_; }

  // Fisher-Yates, consuming one uniform_int per swap.
  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(
          uniform_int(0, static_cast<std::int64_t>(i) - 1));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace pagraph
