#include "endoquant/graphs/graph.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <tuple>

#include "endoquant/algebra/errors.hpp"

namespace endoquant {

FGraph::FGraph(std::vector<int> regular_weights, int special_count)
    : weights(std::move(regular_weights)), specials(special_count) {
  std::size_t n = weights.size() + static_cast<std::size_t>(specials) + 2;
  mult.assign(n, std::vector<int>(n, 0));
}

FGraph FGraph::lambda(int n) {
  FGraph g({}, 0);
  g.at(0, 1) = n;
  return g;
}

int FGraph::in_degree(int v) const {
  int d = 0;
  for (int t = 0; t < size(); ++t) d += at(t, v);
  return d;
}

int FGraph::out_degree(int v) const {
  int d = 0;
  for (int h = 0; h < size(); ++h) d += at(v, h);
  return d;
}

int FGraph::edge_count() const {
  int e = 0;
  for (const auto& row : mult) e += std::accumulate(row.begin(), row.end(), 0);
  return e;
}

bool FGraph::in_family_n() const {
  for (int a = 1; a <= internal(); ++a) {
    for (int b = 1; b <= internal(); ++b) {
      if (at(a, b) != 0) return false;
    }
  }
  return true;
}

int nu_degree(const FGraph& g) {
  return g.edge_count() + std::accumulate(g.weights.begin(), g.weights.end(), 0);
}

std::vector<std::vector<bool>> reachability(const FGraph& g) {
  int n = g.size();
  std::vector<std::vector<bool>> r(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n), false));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) r[a][b] = g.at(a, b) > 0;
  }
  for (int k = 0; k < n; ++k) {
    for (int a = 0; a < n; ++a) {
      if (!r[a][k]) continue;
      for (int b = 0; b < n; ++b) {
        if (r[k][b]) r[a][b] = true;
      }
    }
  }
  return r;
}

FGraph validate_graph(const FGraph& g) {
  int n = g.size();
  if (g.specials < 0) throw InvalidInput("graph: negative special count");
  if (static_cast<int>(g.mult.size()) != n) throw InvalidInput("graph: multiplicity matrix has wrong size");
  for (const auto& row : g.mult) {
    if (static_cast<int>(row.size()) != n) throw InvalidInput("graph: multiplicity matrix is not square");
    for (int x : row) {
      if (x < 0) throw InvalidInput("graph: negative edge multiplicity");
    }
  }
  if (g.in_degree(g.source()) != 0) throw InvalidInput("graph: the source has incoming edges");
  if (g.out_degree(g.sink()) != 0) throw InvalidInput("graph: the sink has outgoing edges");
  auto reach = reachability(g);
  for (int v = 0; v < n; ++v) {
    if (reach[v][v]) throw InvalidInput("graph: contains a cycle");
  }
  for (int v = 1; v <= g.internal(); ++v) {
    if (g.in_degree(v) < 1 || g.out_degree(v) < 1) {
      throw InvalidInput("graph: internal vertex " + std::to_string(v) + " lacks an incoming or outgoing edge");
    }
    if (g.is_regular(v)) {
      if (g.weight(v) < -1) throw InvalidInput("graph: regular weight below -1");
      if (g.weight(v) == -1 && g.in_degree(v) + g.out_degree(v) < 3) {
        throw InvalidInput("graph: weight -1 vertex " + std::to_string(v) + " has fewer than three edges");
      }
    }
  }
  for (int i = 1; i <= g.specials; ++i) {
    for (int j = i + 1; j <= g.specials; ++j) {
      if (reach[g.special_vertex(i)][g.special_vertex(j)]) {
        throw InvalidInput("graph: path from s" + std::to_string(i) + " to s" + std::to_string(j) +
                           " conflicts with the special order");
      }
    }
  }
  return g;
}

GraphKey raw_key(const FGraph& g) {
  GraphKey k;
  k.reserve(2 + g.weights.size() + static_cast<std::size_t>(g.size() * g.size()));
  k.push_back(g.R());
  k.push_back(g.specials);
  k.insert(k.end(), g.weights.begin(), g.weights.end());
  for (const auto& row : g.mult) k.insert(k.end(), row.begin(), row.end());
  return k;
}

FGraph permute_regular(const FGraph& g, const std::vector<int>& perm) {
  int R = g.R();
  // old index of each new vertex
  std::vector<int> from(static_cast<std::size_t>(g.size()));
  std::iota(from.begin(), from.end(), 0);
  for (int i = 0; i < R; ++i) from[static_cast<std::size_t>(i + 1)] = perm[static_cast<std::size_t>(i)] + 1;
  FGraph out(std::vector<int>(static_cast<std::size_t>(R)), g.specials);
  for (int i = 0; i < R; ++i) out.weights[i] = g.weights[static_cast<std::size_t>(perm[i])];
  for (int a = 0; a < g.size(); ++a) {
    for (int b = 0; b < g.size(); ++b) out.at(a, b) = g.at(from[a], from[b]);
  }
  return out;
}

namespace {

std::int64_t multiplicity_factor(const FGraph& g) {
  std::int64_t f = 1;
  for (const auto& row : g.mult) {
    for (int x : row) {
      for (int i = 2; i <= x; ++i) f *= i;
    }
  }
  return f;
}

// Isomorphism-invariant description of a regular vertex.
std::vector<int> signature(const FGraph& g, int v) {
  std::vector<int> s{g.weight(v), g.in_degree(v), g.out_degree(v), g.at(g.source(), v), g.at(v, g.sink())};
  for (int j = 1; j <= g.specials; ++j) {
    s.push_back(g.at(g.special_vertex(j), v));
    s.push_back(g.at(v, g.special_vertex(j)));
  }
  std::vector<std::pair<int, int>> regular_links;
  for (int w = 1; w <= g.R(); ++w) {
    if (w == v) continue;
    if (g.at(v, w) || g.at(w, v)) regular_links.emplace_back(g.at(v, w), g.at(w, v));
  }
  std::sort(regular_links.begin(), regular_links.end());
  for (auto [a, b] : regular_links) {
    s.push_back(a);
    s.push_back(b);
  }
  return s;
}

struct Search {
  const FGraph* g;
  std::vector<std::vector<int>> blocks;  // vertices (0-based regular) per block
  std::vector<int> perm;
  GraphKey best;
  FGraph best_graph;
  std::int64_t hits = 0;

  void run(std::size_t b) {
    if (b == blocks.size()) {
      FGraph h = permute_regular(*g, perm);
      GraphKey k = raw_key(h);
      if (best.empty() || k < best) {
        best = std::move(k);
        best_graph = std::move(h);
        hits = 1;
      } else if (k == best) {
        ++hits;
      }
      return;
    }
    auto& block = blocks[b];
    std::sort(block.begin(), block.end());
    std::size_t offset = 0;
    for (std::size_t i = 0; i < b; ++i) offset += blocks[i].size();
    do {
      std::copy(block.begin(), block.end(), perm.begin() + static_cast<std::ptrdiff_t>(offset));
      run(b + 1);
    } while (std::next_permutation(block.begin(), block.end()));
  }
};

}  // namespace

GraphClass canonicalize(const FGraph& g) {
  int R = g.R();
  std::vector<std::pair<std::vector<int>, int>> sig;
  for (int v = 1; v <= R; ++v) sig.emplace_back(signature(g, v), v - 1);
  std::sort(sig.begin(), sig.end());
  Search s;
  s.g = &g;
  s.perm.assign(static_cast<std::size_t>(R), 0);
  for (std::size_t i = 0; i < sig.size(); ++i) {
    if (i == 0 || sig[i].first != sig[i - 1].first) s.blocks.emplace_back();
    s.blocks.back().push_back(sig[i].second);
  }
  s.run(0);
  GraphClass c;
  c.graph = std::move(s.best_graph);
  c.key = std::move(s.best);
  c.aut = s.hits * multiplicity_factor(g);
  c.degree = nu_degree(g);
  return c;
}

std::int64_t brute_force_aut(const FGraph& g) {
  std::vector<int> perm(static_cast<std::size_t>(g.R()));
  std::iota(perm.begin(), perm.end(), 0);
  std::int64_t count = 0;
  do {
    if (permute_regular(g, perm) == g) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count * multiplicity_factor(g);
}

std::string describe(const FGraph& g) {
  std::ostringstream os;
  os << "R=" << g.R() << " [";
  for (std::size_t i = 0; i < g.weights.size(); ++i) os << (i ? "," : "") << g.weights[i];
  os << "] k=" << g.specials << " edges:";
  auto name = [&](int v) -> std::string {
    if (v == g.source()) return "in";
    if (v == g.sink()) return "out";
    if (g.is_regular(v)) return "r" + std::to_string(v - 1);
    return "s" + std::to_string(g.label(v));
  };
  for (int a = 0; a < g.size(); ++a) {
    for (int b = 0; b < g.size(); ++b) {
      if (g.at(a, b)) os << " " << name(a) << "->" << name(b) << (g.at(a, b) > 1 ? "x" + std::to_string(g.at(a, b)) : "");
    }
  }
  return os.str();
}

}  // namespace endoquant
