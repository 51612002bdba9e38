#pragma once
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace rwg {

// 64-bit finalizer-style mixer (SplitMix64 finalizer). This is the one
// mixing function the whole toolkit derives child seeds from; it is pinned
// in docs/dataset_format.md so independent implementations agree bit-exactly.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  return h;
}

// Child seed for (master, index, tag). Pure; order-independent, so samples
// can be generated in parallel without a shared sequential RNG.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index,
                                    std::string_view tag) {
  return mix64(mix64(master ^ mix64(index)) ^ fnv1a64(tag));
}

struct SeedStream {
  std::uint64_t master_seed = 0;
  std::uint64_t derive(std::uint64_t index, std::string_view tag) const {
    return derive_seed(master_seed, index, tag);
  }
};

// Small deterministic generator: a SplitMix64 counter stream. Used for every
// random draw in the toolkit; std::random distributions are avoided because
// their output is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() { return mix64(state_ += 0x9E3779B97F4A7C15ULL); }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  // Uniform integer in [0, n). n must be positive.
  int uniform_int(int n) { return static_cast<int>(next_u64() % static_cast<std::uint64_t>(n)); }

  bool bernoulli(double p) { return uniform() < p; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = next_u64() % i;
      std::swap(v[i - 1], v[j]);
    }
  }

  // k distinct values from [0, n), in selection order.
  std::vector<int> sample_without_replacement(int n, int k);

 private:
  std::uint64_t state_;
};

}  // namespace rwg
