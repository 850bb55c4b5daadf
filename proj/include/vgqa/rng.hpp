#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace vgqa {

// Derives an independent stream seed from a base seed and a stream index
// (splitmix64 of the combination). Used to give each graph, layout and
// question batch its own stream so insertion-order changes in one stage
// cannot shift another.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream);

// Deterministic RNG facade. std::mt19937_64 output is pinned by the
// standard, but the std distributions are not, so all derived draws here
// are implemented directly on the raw 64-bit stream. Identical seeds give
// identical sequences on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [lo, hi], inclusive.
  int next_int(int lo, int hi);

  // Uniform in [0, 1).
  double next_unit();

  bool next_bool(double p_true) { return next_unit() < p_true; }

  // Weighted choice; weights need not be normalized.
  int next_weighted(const std::vector<double>& weights);

  template <typename T>
  const T& pick(const std::vector<T>& items) {
    return items[size_t(next_int(0, int(items.size()) - 1))];
  }

  // Fisher-Yates.
  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (int i = int(items.size()) - 1; i > 0; --i) {
      std::swap(items[size_t(i)], items[size_t(next_int(0, i))]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace vgqa
