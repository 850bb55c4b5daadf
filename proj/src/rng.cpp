#include "vgqa/rng.hpp"

#include <stdexcept>

namespace vgqa {

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

int Rng::next_int(int lo, int hi) {
  if (lo > hi) throw std::invalid_argument("Rng::next_int: empty range");
  std::uint64_t span = std::uint64_t(hi) - std::uint64_t(lo) + 1;
  return lo + int(next_u64() % span);
}

double Rng::next_unit() {
  return double(next_u64() >> 11) * 0x1.0p-53;
}

int Rng::next_weighted(const std::vector<double>& weights) {
  double total = 0;
  for (double w : weights) total += w;
  if (total <= 0) throw std::invalid_argument("Rng::next_weighted: no mass");
  double x = next_unit() * total;
  for (size_t i = 0; i < weights.size(); ++i) {
    x -= weights[i];
    if (x < 0) return int(i);
  }
  return int(weights.size()) - 1;
}

}  // namespace vgqa
