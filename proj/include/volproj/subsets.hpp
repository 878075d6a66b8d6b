#pragma once

#include <cstdint>
#include <vector>

namespace volproj {

// C(n, m) saturated at uint64 max (enough for every rank computation we do;
// callers treat the saturated value as "too many to enumerate").
std::uint64_t binomial_or_max(int n, int m);

// Lexicographic rank -> m-combination of {0..n-1}. rank must be < C(n, m).
std::vector<int> combination_unrank(int n, int m, std::uint64_t rank);

// Advance comb to its lexicographic successor; false when comb was the last.
bool next_combination(std::vector<int>& comb, int n);

}  // namespace volproj
