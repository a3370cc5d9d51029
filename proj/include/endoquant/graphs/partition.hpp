#pragma once

#include <vector>

#include "endoquant/graphs/graph.hpp"

namespace endoquant {

/// Sink edges of g listed by tail (with repetition), ascending vertex index.
std::vector<int> sink_edge_tails(const FGraph& g);
/// Source edges of g listed by head (with repetition), ascending vertex index.
std::vector<int> source_edge_heads(const FGraph& g);

/// Splices the i-th sink edge of g1 with source edge tau[i] of g2. Specials
/// of g1 sit above those of g2.
FGraph concatenate(const FGraph& g1, const FGraph& g2, const std::vector<int>& tau);

/// in_v1[v-1] for internal vertex v.
struct AdmissiblePartition {
  std::vector<bool> in_v1;
  friend bool operator==(const AdmissiblePartition&, const AdmissiblePartition&) = default;
};

bool is_admissible(const FGraph& g, const AdmissiblePartition& pi);
std::vector<AdmissiblePartition> admissible_partitions(const FGraph& g);

struct Split {
  FGraph first;
  FGraph second;
  std::vector<int> tau;  // concatenate(first, second, tau) is isomorphic to the input
};

Split split(const FGraph& g, const AdmissiblePartition& pi);

struct FrontalStats {
  std::vector<int> regular;  // frontal regular vertices
  int chain = 0;             // frontal specials s_k, s_{k-1}, ... counted from the top
};

FrontalStats frontal_stats(const FGraph& g);

/// V2 = {s_i, ..., s_1} plus regular vertices reachable from them.
AdmissiblePartition sigma_partition(const FGraph& g, int i);

}  // namespace endoquant
