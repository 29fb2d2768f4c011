#include "gzsl/rng.hpp"

#include "gzsl/error.hpp"

namespace gzsl {

std::uint64_t fnv1a64(std::string_view data, std::uint64_t basis) {
  std::uint64_t h = basis ? basis : 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t seed) : seed_(seed), state_(seed) {
  // Scramble once so that small consecutive seeds give unrelated streams.
  splitmix64(state_);
}

std::uint64_t Rng::next_u64() { return splitmix64(state_); }

double Rng::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::size_t Rng::next_below(std::size_t n) {
  if (n == 0) throw Error("Rng::next_below: n must be positive");
  // Rejection sampling keeps the draw unbiased.
  std::uint64_t bound = n;
  std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = next_u64();
  } while (x >= limit);
  return static_cast<std::size_t>(x % bound);
}

Rng Rng::child(std::string_view tag) const {
  std::uint64_t mixed = seed_ ^ fnv1a64(tag);
  std::uint64_t tmp = mixed;
  splitmix64(tmp);
  return Rng(tmp);
}

std::vector<std::size_t> Rng::sample_without_replacement(std::size_t n, std::size_t k) {
  if (k > n) throw Error("sample_without_replacement: k exceeds population");
  // Partial Fisher-Yates over an index pool.
  std::vector<std::size_t> pool(n);
  for (std::size_t i = 0; i < n; ++i) pool[i] = i;
  std::vector<std::size_t> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t j = i + next_below(n - i);
    std::swap(pool[i], pool[j]);
    out.push_back(pool[i]);
  }
  return out;
}

std::vector<std::size_t> Rng::weighted_sample_without_replacement(
    const std::vector<double>& weights, std::size_t k) {
  if (k > weights.size())
    throw Error("weighted_sample_without_replacement: k exceeds population");
  for (double w : weights) {
    if (!(w > 0.0)) throw Error("weighted_sample_without_replacement: weights must be positive");
  }
  std::vector<double> w = weights;
  std::vector<std::size_t> index(w.size());
  for (std::size_t i = 0; i < index.size(); ++i) index[i] = i;
  std::vector<std::size_t> out;
  out.reserve(k);
  for (std::size_t draw = 0; draw < k; ++draw) {
    double total = 0.0;
    for (double x : w) total += x;
    double r = next_double() * total;
    std::size_t pick = w.size() - 1;
    double acc = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      acc += w[i];
      if (r < acc) {
        pick = i;
        break;
      }
    }
    out.push_back(index[pick]);
    w.erase(w.begin() + static_cast<std::ptrdiff_t>(pick));
    index.erase(index.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return out;
}

}  // namespace gzsl
