#pragma once

#include <algorithm>
#include <set>

namespace endoquant {

template <class Region>
std::optional<Discrepancy> compare_tensors(const IndexedTensor& a, const IndexedTensor& b, int max_order,
                                           Region&& in_region) {
  std::set<IndexKey> keys;
  for (const auto& [k, v] : a.entries) keys.insert(k);
  for (const auto& [k, v] : b.entries) keys.insert(k);
  int lo = std::min(a.smin, b.smin);
  for (const auto& k : keys) {
    if (!in_region(k.first, k.second)) continue;
    TensorSeries sa = a.at(k.first, k.second), sb = b.at(k.first, k.second);
    auto d = compare_series(sa, sb, lo, std::min({max_order, sa.smax(), sb.smax()}));
    if (d) {
      d->index = k;
      return d;
    }
  }
  return std::nullopt;
}

}  // namespace endoquant
