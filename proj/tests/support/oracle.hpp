#pragma once

// Brute-force references for the random baseline, independent of the
// closed forms in the library.

#include <bit>
#include <cstdint>
#include <vector>

namespace oracle {

using Count = unsigned __int128;

// ways[k][h]: number of k-subsets of N items (R relevant) holding exactly h
// relevant items, built one item at a time.
inline std::vector<std::vector<Count>> subset_counts(unsigned n, unsigned r) {
  std::vector<std::vector<Count>> ways(n + 1, std::vector<Count>(r + 1, 0));
  ways[0][0] = 1;
  for (unsigned item = 0; item < n; ++item) {
    const bool relevant = item < r;
    for (unsigned k = item + 1; k-- > 0;) {
      for (unsigned h = r + 1; h-- > 0;) {
        const Count c = ways[k][h];
        if (c == 0) continue;
        if (relevant) ways[k + 1][h + 1] += c;
        else ways[k + 1][h] += c;
      }
    }
  }
  return ways;
}

// P(at least m relevant in a uniform k-subset) from the counts above.
inline long double survival(const std::vector<std::vector<Count>>& ways, unsigned k, unsigned m) {
  Count hit = 0;
  Count total = 0;
  for (unsigned h = 0; h < ways[k].size(); ++h) {
    total += ways[k][h];
    if (h >= m) hit += ways[k][h];
  }
  return static_cast<long double>(hit) / static_cast<long double>(total);
}

// Explicit enumeration of every subset of n <= 20 items: result[k][h].
inline std::vector<std::vector<std::uint64_t>> enumerate_subsets(unsigned n, unsigned r) {
  std::vector<std::vector<std::uint64_t>> table(n + 1, std::vector<std::uint64_t>(r + 1, 0));
  const std::uint32_t relevant_mask = r == 0 ? 0u : ((1u << r) - 1u);
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask)
    ++table[std::popcount(mask)][std::popcount(mask & relevant_mask)];
  return table;
}

}  // namespace oracle
