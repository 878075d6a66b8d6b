#include "volproj/subsets.hpp"

#include <limits>
#include <stdexcept>

namespace volproj {

namespace {
constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();

// a * b with saturation.
std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kMax / a) return kMax;
  return a * b;
}
}  // namespace

std::uint64_t binomial_or_max(int n, int m) {
  if (n < 0 || m < 0) throw std::invalid_argument("binomial_or_max: negative argument");
  if (m > n) return 0;
  m = std::min(m, n - m);
  std::uint64_t result = 1;
  for (int i = 1; i <= m; ++i) {
    // result * (n-m+i) is divisible by i; saturate (conservatively) if the
    // intermediate product would overflow.
    result = sat_mul(result, static_cast<std::uint64_t>(n - m + i));
    if (result == kMax) return kMax;
    result /= static_cast<std::uint64_t>(i);
  }
  return result;
}

std::vector<int> combination_unrank(int n, int m, std::uint64_t rank) {
  std::vector<int> comb;
  comb.reserve(static_cast<std::size_t>(m));
  int next = 0;
  for (int slot = 0; slot < m; ++slot) {
    for (int candidate = next; candidate < n; ++candidate) {
      const std::uint64_t block = binomial_or_max(n - candidate - 1, m - slot - 1);
      if (rank < block) {
        comb.push_back(candidate);
        next = candidate + 1;
        break;
      }
      rank -= block;
    }
  }
  if (static_cast<int>(comb.size()) != m)
    throw std::invalid_argument("combination_unrank: rank out of range");
  return comb;
}

bool next_combination(std::vector<int>& comb, int n) {
  const int m = static_cast<int>(comb.size());
  for (int i = m - 1; i >= 0; --i) {
    if (comb[static_cast<std::size_t>(i)] < n - m + i) {
      ++comb[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < m; ++j)
        comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace volproj
