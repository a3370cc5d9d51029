#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "endoquant/algebra/gaussian_rational.hpp"

namespace endoquant {

/// Averages an array indexed by integer tuples over all permutations of the
/// designated slots. Entries absent from the map are zero.
template <class T>
std::map<std::vector<int>, T> symmetrize(const std::map<std::vector<int>, T>& t, const std::vector<int>& slots) {
  std::vector<int> perm(slots.size());
  std::iota(perm.begin(), perm.end(), 0);
  long count = 0;
  std::map<std::vector<int>, T> out;
  do {
    ++count;
    for (const auto& [idx, v] : t) {
      std::vector<int> moved = idx;
      for (std::size_t a = 0; a < slots.size(); ++a) moved[slots[a]] = idx[slots[perm[a]]];
      auto [it, inserted] = out.try_emplace(moved, v);
      if (!inserted) it->second += v;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  GaussianRational scale(Rational(1, count));
  for (auto& [idx, v] : out) v *= scale;
  return out;
}

}  // namespace endoquant
