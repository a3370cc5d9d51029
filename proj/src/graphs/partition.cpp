#include "endoquant/graphs/partition.hpp"

#include <algorithm>
#include <climits>

#include "endoquant/algebra/errors.hpp"

namespace endoquant {

std::vector<int> sink_edge_tails(const FGraph& g) {
  std::vector<int> t;
  for (int v = 0; v < g.sink(); ++v) t.insert(t.end(), static_cast<std::size_t>(g.at(v, g.sink())), v);
  return t;
}

std::vector<int> source_edge_heads(const FGraph& g) {
  std::vector<int> h;
  for (int v = 1; v < g.size(); ++v) h.insert(h.end(), static_cast<std::size_t>(g.at(0, v)), v);
  return h;
}

FGraph concatenate(const FGraph& g1, const FGraph& g2, const std::vector<int>& tau) {
  auto tails = sink_edge_tails(g1);
  auto heads = source_edge_heads(g2);
  if (tails.size() != heads.size()) throw InvalidInput("concatenate: graphs are not composable");
  if (tau.size() != tails.size()) throw InvalidInput("concatenate: bijection has the wrong size");
  std::vector<bool> seen(tau.size(), false);
  for (int t : tau) {
    if (t < 0 || t >= static_cast<int>(tau.size()) || seen[static_cast<std::size_t>(t)]) {
      throw InvalidInput("concatenate: tau is not a bijection");
    }
    seen[static_cast<std::size_t>(t)] = true;
  }
  std::vector<int> weights = g1.weights;
  weights.insert(weights.end(), g2.weights.begin(), g2.weights.end());
  FGraph g(weights, g1.specials + g2.specials);
  // vertex maps into the result
  std::vector<int> m1(static_cast<std::size_t>(g1.size())), m2(static_cast<std::size_t>(g2.size()));
  m1[0] = 0;
  for (int v = 1; v <= g1.R(); ++v) m1[v] = v;
  for (int j = 1; j <= g1.specials; ++j) m1[g1.special_vertex(j)] = g.special_vertex(g2.specials + j);
  m1[g1.sink()] = -1;
  m2[0] = -1;
  for (int v = 1; v <= g2.R(); ++v) m2[v] = g1.R() + v;
  for (int j = 1; j <= g2.specials; ++j) m2[g2.special_vertex(j)] = g.special_vertex(j);
  m2[g2.sink()] = g.sink();
  for (int a = 0; a < g1.sink(); ++a) {
    for (int b = 1; b < g1.sink(); ++b) g.at(m1[a], m1[b]) += g1.at(a, b);
  }
  for (int a = 1; a < g2.size(); ++a) {
    for (int b = 1; b < g2.size(); ++b) g.at(m2[a], m2[b]) += g2.at(a, b);
  }
  for (std::size_t i = 0; i < tails.size(); ++i) {
    g.at(m1[tails[i]], m2[heads[static_cast<std::size_t>(tau[i])]]) += 1;
  }
  return g;
}

bool is_admissible(const FGraph& g, const AdmissiblePartition& pi) {
  if (static_cast<int>(pi.in_v1.size()) != g.internal()) return false;
  auto v1 = [&](int v) { return pi.in_v1[static_cast<std::size_t>(v - 1)]; };
  int lowest_v1 = INT_MAX, highest_v2 = 0;
  for (int j = 1; j <= g.specials; ++j) {
    if (v1(g.special_vertex(j))) {
      lowest_v1 = std::min(lowest_v1, j);
    } else {
      highest_v2 = std::max(highest_v2, j);
    }
  }
  if (highest_v2 > lowest_v1) return false;
  for (int a = 1; a <= g.internal(); ++a) {
    for (int b = 1; b <= g.internal(); ++b) {
      if (g.at(a, b) && !v1(a) && v1(b)) return false;
    }
  }
  return true;
}

std::vector<AdmissiblePartition> admissible_partitions(const FGraph& g) {
  int n = g.internal();
  std::vector<AdmissiblePartition> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    AdmissiblePartition pi;
    pi.in_v1.resize(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) pi.in_v1[v] = (mask >> v) & 1U;
    if (is_admissible(g, pi)) out.push_back(std::move(pi));
  }
  return out;
}

Split split(const FGraph& g, const AdmissiblePartition& pi) {
  if (!is_admissible(g, pi)) throw InvalidInput("split: partition is not admissible");
  auto v1 = [&](int v) { return v == 0 || (v <= g.internal() && pi.in_v1[static_cast<std::size_t>(v - 1)]); };
  std::vector<int> w1, w2;
  std::vector<int> map1(static_cast<std::size_t>(g.size()), -1), map2(static_cast<std::size_t>(g.size()), -1);
  for (int v = 1; v <= g.R(); ++v) (v1(v) ? w1 : w2).push_back(g.weight(v));
  int k1 = 0, k2 = 0;
  for (int j = 1; j <= g.specials; ++j) (v1(g.special_vertex(j)) ? k1 : k2) += 1;
  Split s{FGraph(w1, k1), FGraph(w2, k2), {}};
  int r1 = 0, r2 = 0;
  for (int v = 1; v <= g.R(); ++v) {
    if (v1(v)) {
      map1[v] = ++r1;
    } else {
      map2[v] = ++r2;
    }
  }
  // specials of V2 are s_1..s_k2, those of V1 are the top k1 labels
  for (int j = 1; j <= g.specials; ++j) {
    int v = g.special_vertex(j);
    if (v1(v)) {
      map1[v] = s.first.special_vertex(j - k2);
    } else {
      map2[v] = s.second.special_vertex(j);
    }
  }
  map1[0] = 0;
  map2[g.sink()] = s.second.sink();
  std::vector<std::pair<int, int>> crossing;  // (tail in first, head in second)
  for (int a = 0; a < g.size(); ++a) {
    for (int b = 0; b < g.size(); ++b) {
      int m = g.at(a, b);
      if (!m) continue;
      if (v1(a) && v1(b)) {
        s.first.at(map1[a], map1[b]) += m;
      } else if (!v1(a) && !v1(b)) {
        s.second.at(map2[a], map2[b]) += m;
      } else {
        for (int i = 0; i < m; ++i) crossing.emplace_back(map1[a], map2[b]);
      }
    }
  }
  for (auto [t, h] : crossing) {
    s.first.at(t, s.first.sink()) += 1;
    s.second.at(0, h) += 1;
  }
  // crossing edges sorted by tail give the first graph's sink-edge order; the
  // second graph's source edges are ordered by head.
  std::sort(crossing.begin(), crossing.end());
  auto heads = source_edge_heads(s.second);
  std::vector<bool> used(heads.size(), false);
  for (auto [t, h] : crossing) {
    for (std::size_t i = 0; i < heads.size(); ++i) {
      if (!used[i] && heads[i] == h) {
        used[i] = true;
        s.tau.push_back(static_cast<int>(i));
        break;
      }
    }
  }
  return s;
}

FrontalStats frontal_stats(const FGraph& g) {
  auto frontal = [&](int v) {
    for (int t = 1; t <= g.internal(); ++t) {
      if (g.at(t, v)) return false;
    }
    return true;
  };
  FrontalStats f;
  for (int v = 1; v <= g.R(); ++v) {
    if (frontal(v)) f.regular.push_back(v);
  }
  for (int j = g.specials; j >= 1 && frontal(g.special_vertex(j)); --j) ++f.chain;
  return f;
}

AdmissiblePartition sigma_partition(const FGraph& g, int i) {
  if (i < 0 || i > g.specials) throw InvalidInput("sigma_partition: index out of range");
  auto reach = reachability(g);
  AdmissiblePartition pi;
  pi.in_v1.assign(static_cast<std::size_t>(g.internal()), true);
  for (int j = 1; j <= i; ++j) {
    int s = g.special_vertex(j);
    pi.in_v1[static_cast<std::size_t>(s - 1)] = false;
    for (int v = 1; v <= g.R(); ++v) {
      if (reach[s][v]) pi.in_v1[static_cast<std::size_t>(v - 1)] = false;
    }
  }
  return pi;
}

}  // namespace endoquant
