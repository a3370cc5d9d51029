#pragma once

#include <climits>
#include <functional>
#include <map>
#include <tuple>
#include <vector>

#include "endoquant/graphs/graph.hpp"

namespace endoquant {

enum class Family { M, N };

/// Vertex-type predicates used to skip graphs whose tensors vanish identically.
/// `regular(weight, in, out)` must be monotone: rejecting (a, b) rejects every
/// (a', b') with a' >= a, b' >= b. Empty functions accept everything.
struct VertexFilter {
  std::function<bool(int, int, int)> regular;
  std::function<bool(int, int)> special;
};

/// One representative per isomorphism class with nu_degree <= max_degree,
/// sorted by (degree, key).
std::vector<GraphClass> enumerate(int max_degree, Family family, const VertexFilter& filter = {});

/// Data (n, k, P, Q) of a graph without internal-internal edges. Type (1,1,-1)
/// counts direct source -> sink edges.
struct NGraphKey {
  std::map<std::tuple<int, int, int>, int> n;  // (in, out, weight) -> multiplicity
  std::vector<std::pair<int, int>> specials;   // (P(i), Q(i)) for s_1, ..., s_k

  friend auto operator<=>(const NGraphKey&, const NGraphKey&) = default;
};

std::int64_t lambda_order(const NGraphKey& key);
FGraph realize(const NGraphKey& key);
int nu_degree(const NGraphKey& key);
/// Source degree q and sink degree p.
int key_source_degree(const NGraphKey& key);
int key_sink_degree(const NGraphKey& key);

struct NKeyBounds {
  int max_degree = INT_MAX;
  int max_source = INT_MAX;  // |K|
  int max_sink = INT_MAX;    // |L|
  std::vector<int> weights;  // admissible regular weights
  VertexFilter filter;
};

/// All keys within the bounds, generated directly from types (no graph search).
/// Needs max_degree finite or both source and sink bounds finite.
std::vector<NGraphKey> n_keys(const NKeyBounds& bounds);

}  // namespace endoquant
