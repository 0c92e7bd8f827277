#ifndef LRC_RNG_HPP
#define LRC_RNG_HPP

#include <cstdint>
#include <random>

namespace lrc::rng {

// splitmix64 step; also used as the seed-splitting hash.
inline std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Deterministic substream seed: stream i of a run seeded with `seed` uses
// split_seed(seed, i). Substreams are independent of worker count, so merged
// results are reproducible regardless of parallelism.
inline std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t x = seed ^ (0x9e3779b97f4a7c15ull * (stream + 1));
  splitmix64(x);
  return splitmix64(x);
}

class Engine {
 public:
  explicit Engine(std::uint64_t seed) : eng_(seed) {}
  Engine(std::uint64_t seed, std::uint64_t stream)
      : eng_(split_seed(seed, stream)) {}

  double gaussian() { return normal_(eng_); }
  double uniform() { return unif_(eng_); }
  std::mt19937_64& raw() { return eng_; }

 private:
  std::mt19937_64 eng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> unif_{0.0, 1.0};
};

}  // namespace lrc::rng

#endif
