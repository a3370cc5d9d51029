#include "endoquant/graphs/enumerate.hpp"

#include <algorithm>

#include "endoquant/algebra/errors.hpp"

namespace endoquant {

namespace {

constexpr int kSpecial = INT_MIN;

// Depth-first construction in a fixed topological order: position j chooses its
// kind and its incoming edges from positions < j; the sink closes the graph.
// Specials get decreasing labels along the order, which reaches every class.
class Builder {
 public:
  Builder(int max_degree, Family family, const VertexFilter& filter, std::map<GraphKey, GraphClass>& out)
      : D_(max_degree), family_(family), filter_(filter), out_(out) {}

  void run(int n) {
    n_ = n;
    kind_.assign(static_cast<std::size_t>(n + 1), 0);
    in_.assign(static_cast<std::size_t>(n + 1), 0);
    outd_.assign(static_cast<std::size_t>(n + 1), 0);
    mult_.assign(static_cast<std::size_t>(n + 2), std::vector<int>(static_cast<std::size_t>(n + 2), 0));
    q_ = 0;
    edges_ = 0;
    place(1);
  }

 private:
  int need(int v) const {
    int base = (kind_[v] == -1) ? 3 : 2;
    return std::max(in_[v] + 1, base);
  }
  int weight_of(int v) const { return kind_[v] == kSpecial ? 0 : kind_[v]; }

  // Twice a lower bound for the degree of any completion.
  int lower_bound2(int placed) const {
    int lb = 0;
    for (int v = 1; v <= placed; ++v) lb += 2 * weight_of(v) + std::max(in_[v] + outd_[v], need(v));
    lb += (n_ - placed) + q_ + (n_ >= 1 ? 1 : 0);
    return lb;
  }

  bool regular_ok(int w, int a, int b) const { return !filter_.regular || filter_.regular(w, a, b); }
  bool special_ok(int a, int b) const { return !filter_.special || filter_.special(a, b); }

  void place(int j) {
    if (j > n_) {
      close(1, 0);
      return;
    }
    std::vector<int> kinds;
    for (int w = -1; w <= std::max(-1, D_ - 2); ++w) kinds.push_back(w);
    kinds.push_back(kSpecial);
    for (int k : kinds) {
      kind_[j] = k;
      if (lower_bound2(j) > 2 * D_) continue;
      choose_in(j, 0);
    }
    kind_[j] = 0;
  }

  void add_edge(int t, int h, int m) {
    mult_[t][h] += m;
    edges_ += m;
    if (t == 0) {
      q_ += m;
    } else {
      outd_[t] += m;
    }
    if (h <= n_) in_[h] += m;
  }

  void choose_in(int j, int t) {
    int last = family_ == Family::N ? 0 : j - 1;
    if (t > last) {
      if (in_[j] < 1) return;
      if (kind_[j] != kSpecial && !regular_ok(kind_[j], in_[j], 1)) return;
      place(j + 1);
      return;
    }
    int added = 0;
    while (true) {
      choose_in(j, t + 1);
      add_edge(t, j, 1);
      ++added;
      if (lower_bound2(j) > 2 * D_) break;
    }
    add_edge(t, j, -added);
  }

  int sink_minimum(int v) const {
    int t = std::max(0, 1 - outd_[v]);
    if (kind_[v] == -1) t = std::max(t, 3 - in_[v] - outd_[v]);
    return t;
  }

  int weight_sum() const {
    int s = 0;
    for (int v = 1; v <= n_; ++v) s += weight_of(v);
    return s;
  }

  // Assign sink multiplicities to vertices v..n, then direct edges.
  void close(int v, int extra_used) {
    if (v == 1 && extra_used == 0) {
      base_ = edges_ + weight_sum();
      for (int u = 1; u <= n_; ++u) base_ += sink_minimum(u);
      if (base_ > D_) return;
    }
    int slack = D_ - base_ - extra_used;
    if (v > n_) {
      for (int c = 0; c <= slack; ++c) {
        mult_[0][n_ + 1] = c;
        emit();
      }
      mult_[0][n_ + 1] = 0;
      return;
    }
    int lo = sink_minimum(v);
    for (int extra = 0; extra <= slack; ++extra) {
      int t = lo + extra;
      int out = outd_[v] + t;
      bool ok = kind_[v] == kSpecial ? special_ok(in_[v], out) : regular_ok(kind_[v], in_[v], out);
      if (ok) {
        mult_[v][n_ + 1] = t;
        close(v + 1, extra_used + extra);
      }
    }
    mult_[v][n_ + 1] = 0;
  }

  void emit() {
    std::vector<int> weights;
    int k = 0;
    for (int v = 1; v <= n_; ++v) {
      if (kind_[v] == kSpecial) {
        ++k;
      } else {
        weights.push_back(kind_[v]);
      }
    }
    FGraph g(weights, k);
    std::vector<int> index(static_cast<std::size_t>(n_ + 2));
    index[0] = 0;
    index[static_cast<std::size_t>(n_ + 1)] = g.sink();
    int r = 0;
    int label = k;
    for (int v = 1; v <= n_; ++v) {
      index[v] = kind_[v] == kSpecial ? g.special_vertex(label--) : ++r;
    }
    for (int a = 0; a <= n_ + 1; ++a) {
      for (int b = 0; b <= n_ + 1; ++b) {
        if (mult_[a][b]) g.at(index[a], index[b]) = mult_[a][b];
      }
    }
    GraphClass c = canonicalize(g);
    out_.try_emplace(c.key, std::move(c));
  }

  int D_;
  Family family_;
  const VertexFilter& filter_;
  std::map<GraphKey, GraphClass>& out_;
  int n_ = 0;
  std::vector<int> kind_, in_, outd_;
  std::vector<std::vector<int>> mult_;
  int q_ = 0;
  int edges_ = 0;
  int base_ = 0;
};

}  // namespace

std::vector<GraphClass> enumerate(int max_degree, Family family, const VertexFilter& filter) {
  if (max_degree < 0) throw InvalidInput("enumerate: negative degree bound");
  std::map<GraphKey, GraphClass> found;
  for (int c = 0; c <= max_degree; ++c) {
    GraphClass g = canonicalize(FGraph::lambda(c));
    found.try_emplace(g.key, g);
  }
  Builder b(max_degree, family, filter, found);
  for (int n = 1; n <= 2 * max_degree - 2; ++n) b.run(n);
  std::vector<GraphClass> out;
  out.reserve(found.size());
  for (auto& [k, g] : found) out.push_back(std::move(g));
  std::stable_sort(out.begin(), out.end(), [](const GraphClass& a, const GraphClass& b) {
    return a.degree != b.degree ? a.degree < b.degree : a.key < b.key;
  });
  return out;
}

namespace {

std::int64_t fact(int n) {
  std::int64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

std::int64_t lambda_order(const NGraphKey& key) {
  std::int64_t l = 1;
  for (const auto& [t, mult] : key.n) {
    auto [p, q, r] = t;
    l *= fact(mult);
    for (int i = 0; i < mult; ++i) l *= fact(p) * fact(q);
  }
  for (auto [P, Q] : key.specials) l *= fact(P) * fact(Q);
  return l;
}

FGraph realize(const NGraphKey& key) {
  std::vector<int> weights;
  std::vector<std::pair<int, int>> regular_types;
  int direct = 0;
  for (const auto& [t, mult] : key.n) {
    auto [p, q, r] = t;
    if (t == std::tuple<int, int, int>{1, 1, -1}) {
      direct = mult;
      continue;
    }
    for (int i = 0; i < mult; ++i) {
      weights.push_back(r);
      regular_types.emplace_back(p, q);
    }
  }
  FGraph g(weights, static_cast<int>(key.specials.size()));
  for (std::size_t i = 0; i < regular_types.size(); ++i) {
    int v = static_cast<int>(i) + 1;
    g.at(0, v) = regular_types[i].first;
    g.at(v, g.sink()) = regular_types[i].second;
  }
  for (std::size_t i = 0; i < key.specials.size(); ++i) {
    int v = g.special_vertex(static_cast<int>(i) + 1);
    g.at(0, v) = key.specials[i].first;
    g.at(v, g.sink()) = key.specials[i].second;
  }
  g.at(0, g.sink()) = direct;
  return g;
}

int nu_degree(const NGraphKey& key) {
  int d = 0;
  for (const auto& [t, mult] : key.n) d += mult * (std::get<0>(t) + std::get<1>(t) + std::get<2>(t));
  for (auto [P, Q] : key.specials) d += P + Q;
  return d;
}

int key_source_degree(const NGraphKey& key) {
  int d = 0;
  for (const auto& [t, mult] : key.n) d += mult * std::get<0>(t);
  for (auto [P, Q] : key.specials) d += P;
  return d;
}

int key_sink_degree(const NGraphKey& key) {
  int d = 0;
  for (const auto& [t, mult] : key.n) d += mult * std::get<1>(t);
  for (auto [P, Q] : key.specials) d += Q;
  return d;
}

namespace {

struct KeyGen {
  const NKeyBounds& b;
  std::vector<std::tuple<int, int, int>> types;
  std::vector<std::pair<int, int>> special_types;
  std::vector<NGraphKey> out;
  NGraphKey cur;

  bool within(int src, int snk, int deg) const { return src <= b.max_source && snk <= b.max_sink && deg <= b.max_degree; }

  void regular(std::size_t i, int src, int snk, int deg) {
    if (i == types.size()) {
      specials(src, snk, deg);
      return;
    }
    auto [p, q, r] = types[i];
    for (int m = 0;; ++m) {
      int s2 = src + m * p, k2 = snk + m * q, d2 = deg + m * (p + q + r);
      if (!within(s2, k2, d2)) break;
      if (m) cur.n[types[i]] = m;
      regular(i + 1, s2, k2, d2);
    }
    cur.n.erase(types[i]);
  }

  void specials(int src, int snk, int deg) {
    out.push_back(cur);
    for (auto [P, Q] : special_types) {
      if (!within(src + P, snk + Q, deg + P + Q)) continue;
      cur.specials.emplace_back(P, Q);
      specials(src + P, snk + Q, deg + P + Q);
      cur.specials.pop_back();
    }
  }
};

}  // namespace

std::vector<NGraphKey> n_keys(const NKeyBounds& bounds) {
  bool finite = bounds.max_degree != INT_MAX || (bounds.max_source != INT_MAX && bounds.max_sink != INT_MAX);
  if (!finite) throw InvalidInput("n_keys: unbounded search");
  KeyGen g{bounds, {}, {}, {}, {}};
  int plim = std::min(bounds.max_source, bounds.max_degree);
  int qlim = std::min(bounds.max_sink, bounds.max_degree);
  g.types.emplace_back(1, 1, -1);
  for (int r : bounds.weights) {
    for (int p = 1; p <= plim; ++p) {
      for (int q = 1; q <= qlim; ++q) {
        if (r == -1 && p + q < 3) continue;
        if (r < -1 || p + q + r > bounds.max_degree) continue;
        if (bounds.filter.regular && !bounds.filter.regular(r, p, q)) continue;
        g.types.emplace_back(p, q, r);
      }
    }
  }
  for (int P = 1; P <= plim; ++P) {
    for (int Q = 1; Q <= qlim; ++Q) {
      if (P + Q > bounds.max_degree) continue;
      if (bounds.filter.special && !bounds.filter.special(P, Q)) continue;
      g.special_types.emplace_back(P, Q);
    }
  }
  std::sort(g.types.begin(), g.types.end());
  g.types.erase(std::unique(g.types.begin(), g.types.end()), g.types.end());
  g.regular(0, 0, 0, 0);
  std::sort(g.out.begin(), g.out.end());
  return g.out;
}

}  // namespace endoquant
