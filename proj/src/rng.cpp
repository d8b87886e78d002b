#include "csvel/rng.hpp"

#include <algorithm>
#include <numeric>

namespace csvel::rng {

std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k,
                                                    std::uint64_t seed) {
  Engine eng(seed);
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t i = 0; i < k && i + 1 < n; ++i) {
    const std::size_t j = i + uniform_index(eng, n - i);
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace csvel::rng
