#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace gzsl {

// 64-bit FNV-1a, also used for config fingerprints and feature hashing.
std::uint64_t fnv1a64(std::string_view data, std::uint64_t basis = 0xcbf29ce484222325ULL);

// Deterministic generator (splitmix64 core). The standard <random>
// distributions are not portable across library implementations, so all
// sampling primitives the toolkit needs live here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();
  double next_double();  // uniform in [0, 1)
  std::size_t next_below(std::size_t n);

  // Independent stream derived from the construction seed and a tag.
  // Children do not depend on how much of this stream was consumed.
  Rng child(std::string_view tag) const;

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = next_below(i);
      std::swap(v[i - 1], v[j]);
    }
  }

  // k distinct indices drawn uniformly from [0, n); order of draws preserved.
  std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k);

  // k distinct indices, probability proportional to weights (successive draws).
  std::vector<std::size_t> weighted_sample_without_replacement(
      const std::vector<double>& weights, std::size_t k);

 private:
  std::uint64_t seed_;
  std::uint64_t state_;
};

}  // namespace gzsl
