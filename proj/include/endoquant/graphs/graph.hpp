#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace endoquant {

/// Feynman graph. Vertex numbering: 0 = source, 1..R = regular vertices,
/// R+1..R+k = special vertices s_1..s_k (label j at index R+j), R+k+1 = sink.
/// Edges are stored as a multiplicity matrix mult[tail][head].
struct FGraph {
  std::vector<int> weights;
  int specials = 0;
  std::vector<std::vector<int>> mult;

  FGraph() : mult(2, std::vector<int>(2, 0)) {}
  FGraph(std::vector<int> regular_weights, int special_count);
  static FGraph lambda(int n);

  int R() const { return static_cast<int>(weights.size()); }
  int s() const { return specials; }
  int internal() const { return R() + specials; }
  int source() const { return 0; }
  int sink() const { return internal() + 1; }
  int size() const { return internal() + 2; }
  bool is_regular(int v) const { return v >= 1 && v <= R(); }
  bool is_special(int v) const { return v > R() && v <= internal(); }
  int weight(int v) const { return weights[static_cast<std::size_t>(v - 1)]; }
  int label(int v) const { return v - R(); }
  int special_vertex(int label) const { return R() + label; }

  int& at(int tail, int head) { return mult[static_cast<std::size_t>(tail)][static_cast<std::size_t>(head)]; }
  int at(int tail, int head) const { return mult[static_cast<std::size_t>(tail)][static_cast<std::size_t>(head)]; }
  int in_degree(int v) const;
  int out_degree(int v) const;
  int edge_count() const;
  /// Sink degree and source degree.
  int p() const { return in_degree(sink()); }
  int q() const { return out_degree(source()); }
  /// No edge joins two internal vertices.
  bool in_family_n() const;

  friend bool operator==(const FGraph&, const FGraph&) = default;
};

/// Edges times one plus the sum of regular weights.
int nu_degree(const FGraph& g);

/// Checks membership in the graph class; throws InvalidInput with the reason.
FGraph validate_graph(const FGraph& g);

/// reach[a][b]: a directed path a -> b of positive length exists.
std::vector<std::vector<bool>> reachability(const FGraph& g);

using GraphKey = std::vector<int>;

/// Key of the graph as labelled: [R, k, weights..., matrix row-major].
GraphKey raw_key(const FGraph& g);

struct GraphClass {
  FGraph graph;  // canonical representative
  GraphKey key;
  std::int64_t aut = 1;
  int degree = 0;
};

/// Canonical representative over relabellings of regular vertices; specials,
/// source and sink are fixed. aut = vertex automorphisms × prod (multiplicity)!.
GraphClass canonicalize(const FGraph& g);

/// Plain count over all R! regular relabellings, for cross-checking canonicalize.
std::int64_t brute_force_aut(const FGraph& g);

/// Relabels regular vertices: new vertex i+1 is old vertex perm[i]+1.
FGraph permute_regular(const FGraph& g, const std::vector<int>& perm);

std::string describe(const FGraph& g);

}  // namespace endoquant
