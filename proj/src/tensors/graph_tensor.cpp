#include "endoquant/tensors/graph_tensor.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace endoquant {

namespace {

Exponent combined(const Exponent& hol, const Exponent& antihol, int m) { return join_exponent(hol, antihol, m); }

std::vector<int> as_sequence(const Exponent& e, int m) {
  std::vector<int> seq;
  for (int i = 0; i < m; ++i) seq.insert(seq.end(), e[static_cast<std::size_t>(i)], i);
  return seq;
}

}  // namespace

TensorContext::TensorContext(const Chart& chart, BiBox h_box) : chart_(chart), h_box_(h_box) {
  h_ = calabi_H(chart, h_box);
  prune(h_);
}

const Jet* TensorContext::potential_derivative(int r, const Exponent& hol, const Exponent& antihol) {
  auto key = std::make_tuple(r, hol, antihol);
  auto it = phi_cache_.find(key);
  if (it == phi_cache_.end()) {
    std::optional<Jet> value;
    if (const Jet* phi = chart_.potential(r)) {
      Jet j = derive_multi(*phi, combined(hol, antihol, chart_.m()));
      if (!j.exactly_zero()) value = std::move(j);
    }
    it = phi_cache_.emplace(key, std::move(value)).first;
  }
  return it->second ? &*it->second : nullptr;
}

const MatrixJet* TensorContext::h_component(const Exponent& hol, const Exponent& antihol) {
  BiKey key{hol, antihol};
  if (!h_box_.admits(key)) {
    throw WindowUnderflow("H component of bidegree (" + std::to_string(key.p()) + "," + std::to_string(key.q()) +
                          ") lies outside the computed box");
  }
  auto it = h_cache_.find(key);
  if (it == h_cache_.end()) {
    std::optional<MatrixJet> value;
    if (h_.find(key)) value = tensor_component(h_, key, MatrixJet());
    it = h_cache_.emplace(key, std::move(value)).first;
  }
  return it->second ? &*it->second : nullptr;
}

VertexFilter TensorContext::filter() const {
  VertexFilter f;
  const Chart* chart = &chart_;
  f.regular = [chart](int w, int in, int out) {
    const Jet* phi = chart->potential(w);
    if (!phi) return false;
    if (!phi->is_exact()) return true;
    int m = chart->m();
    for (const auto& [e, c] : phi->terms()) {
      int a = 0, b = 0;
      for (int i = 0; i < m; ++i) {
        a += e[static_cast<std::size_t>(i)];
        b += e[static_cast<std::size_t>(m + i)];
      }
      if (a >= in && b >= out) return true;
    }
    return false;
  };
  BiBox box = h_box_;
  std::set<std::pair<int, int>> live;
  for (const auto& [k, v] : h_.terms()) live.emplace(k.p(), k.q());
  f.special = [box, live](int in, int out) { return !box.admits(in, out) || live.count({in, out}) > 0; };
  return f;
}

namespace {

enum class EdgeKind { Inverse, Metric, Same };

struct EdgeSlot {
  int tail;
  int head;
  EdgeKind kind;
};

}  // namespace

GraphTensor eval_graph(const FGraph& g, GraphForm form, TensorContext& ctx) {
  const Chart& chart = ctx.chart();
  int m = chart.m();
  int nvars = chart.nvars();
  if (form == GraphForm::Lower && !g.in_family_n()) {
    throw InvalidInput("lower graph tensor requested for a graph with internal-internal edges");
  }
  std::vector<EdgeSlot> edges;
  GraphTensor out;
  for (int a = 0; a < g.size(); ++a) {
    for (int b = 0; b < g.size(); ++b) {
      for (int i = 0; i < g.at(a, b); ++i) {
        EdgeKind kind = EdgeKind::Inverse;
        if (form == GraphForm::Mixed && a == g.source()) kind = EdgeKind::Same;
        if (form == GraphForm::Lower) {
          kind = (a == g.source() && b == g.sink()) ? EdgeKind::Metric : EdgeKind::Same;
        }
        edges.push_back({a, b, kind});
        out.order += kind == EdgeKind::Inverse ? 1 : kind == EdgeKind::Metric ? -1 : 0;
      }
    }
  }
  for (int w : g.weights) out.order += w;

  std::size_t ne = edges.size();
  std::vector<int> tv(ne), hv(ne);
  auto edge_factor = [&](std::size_t e) -> const Jet* {
    switch (edges[e].kind) {
      case EdgeKind::Inverse: return &chart.inverse_metric(tv[e], hv[e]);
      case EdgeKind::Metric: return &chart.metric(tv[e], hv[e]);
      case EdgeKind::Same: return nullptr;
    }
    return nullptr;
  };

  std::map<IndexKey, MatrixJet> raw;
  auto leaf = [&]() {
    std::vector<Exponent> hol(static_cast<std::size_t>(g.size())), anti(static_cast<std::size_t>(g.size()));
    Exponent A{}, B{};
    for (std::size_t e = 0; e < ne; ++e) {
      const auto& s = edges[e];
      if (s.tail == g.source()) {
        ++A[static_cast<std::size_t>(tv[e])];
      } else {
        ++anti[static_cast<std::size_t>(s.tail)][static_cast<std::size_t>(tv[e])];
      }
      if (s.head == g.sink()) {
        ++B[static_cast<std::size_t>(hv[e])];
      } else {
        ++hol[static_cast<std::size_t>(s.head)][static_cast<std::size_t>(hv[e])];
      }
    }
    Jet scalar = Jet::constant(nvars, GaussianRational(1));
    for (int v = 1; v <= g.R(); ++v) {
      const Jet* f = ctx.potential_derivative(g.weight(v), hol[static_cast<std::size_t>(v)],
                                              anti[static_cast<std::size_t>(v)]);
      if (!f) return;
      scalar = scalar * *f;
    }
    std::vector<const MatrixJet*> hs;
    for (int j = g.specials; j >= 1; --j) {
      int v = g.special_vertex(j);
      const MatrixJet* h = ctx.h_component(hol[static_cast<std::size_t>(v)], anti[static_cast<std::size_t>(v)]);
      if (!h) return;
      hs.push_back(h);
    }
    for (std::size_t e = 0; e < ne; ++e) {
      if (const Jet* f = edge_factor(e)) scalar = scalar * *f;
    }
    MatrixJet value;
    if (hs.empty()) {
      value = MatrixJet::scalar(1, scalar);
    } else {
      MatrixJet prod = *hs.front();
      for (std::size_t i = 1; i < hs.size(); ++i) prod = prod * *hs[i];
      value = jet_scale(scalar, prod);
    }
    accumulate(raw[{A, B}], value);
  };

  std::function<void(std::size_t)> dfs = [&](std::size_t e) {
    if (e == ne) {
      leaf();
      return;
    }
    for (int x = 0; x < m; ++x) {
      if (edges[e].kind == EdgeKind::Same) {
        tv[e] = hv[e] = x;
        dfs(e + 1);
        continue;
      }
      for (int y = 0; y < m; ++y) {
        tv[e] = x;
        hv[e] = y;
        if (edge_factor(e)->exactly_zero()) continue;
        dfs(e + 1);
      }
    }
  };
  dfs(0);

  for (auto& [k, v] : raw) {
    if (v.exactly_zero()) continue;
    Rational norm = index_count(k.first) * index_count(k.second);
    out.values.emplace(k, v.scaled(GaussianRational(Rational(1 / norm))));
  }
  return out;
}

void add_graph_tensor(IndexedTensor& t, const GraphTensor& gt, const GaussianRational& weight) {
  for (const auto& [k, v] : gt.values) t.add(k.first, k.second, gt.order, v.scaled(weight));
}

IndexedTensor C_from_graphs(TensorContext& ctx, int max_order, const Coefficient& coefficient) {
  IndexedTensor t(ctx.chart().m(), 0, max_order);
  CoeffTable table;
  for (const auto& cls : enumerate(max_order, Family::M, ctx.filter())) {
    Rational c = coefficient ? coefficient(cls.graph) : table.c(cls.graph);
    if (c == 0) continue;
    add_graph_tensor(t, eval_graph(cls.graph, GraphForm::Upper, ctx), GaussianRational(Rational(c / cls.aut)));
  }
  t.prune();
  return t;
}

IndexedTensor E_from_graphs(TensorContext& ctx, int max_k, int max_l) {
  const Chart& chart = ctx.chart();
  IndexedTensor t(chart.m(), -std::min(max_k, max_l), TensorSeries::kOpen);
  NKeyBounds bounds;
  bounds.max_source = max_k;
  bounds.max_sink = max_l;
  for (int r = -1; r <= chart.max_weight(); ++r) {
    if (chart.potential(r)) bounds.weights.push_back(r);
  }
  bounds.filter = ctx.filter();
  for (const auto& key : n_keys(bounds)) {
    FGraph g = realize(key);
    Rational w = factorial(g.p()) * factorial(g.q()) / (Rational(lambda_order(key)) * factorial(g.specials));
    add_graph_tensor(t, eval_graph(g, GraphForm::Lower, ctx), GaussianRational(w));
  }
  t.prune();
  return t;
}

std::pair<IndexedTensor, IndexedTensor> g_tensors(const Chart& chart, int max_rank) {
  int m = chart.m();
  IndexedTensor lower(m, -max_rank, TensorSeries::kOpen), upper(m, 0, TensorSeries::kOpen);
  for (int r = 0; r <= max_rank; ++r) {
    auto multis = exponents_of_degree(m, r);
    for (const auto& a : multis) {
      for (const auto& b : multis) {
        auto ka = as_sequence(a, m), kb = as_sequence(b, m);
        std::vector<int> perm(static_cast<std::size_t>(r));
        std::iota(perm.begin(), perm.end(), 0);
        Jet lo(chart.nvars()), up(chart.nvars());
        do {
          Jet pl = chart.constant(1), pu = chart.constant(1);
          for (int i = 0; i < r; ++i) {
            pl = pl * chart.metric(ka[i], kb[static_cast<std::size_t>(perm[i])]);
            pu = pu * chart.inverse_metric(ka[i], kb[static_cast<std::size_t>(perm[i])]);
          }
          lo += pl;
          up += pu;
        } while (std::next_permutation(perm.begin(), perm.end()));
        GaussianRational inv(Rational(1 / factorial(r)));
        if (!lo.exactly_zero()) lower.add(a, b, -r, MatrixJet::scalar(1, lo * inv));
        if (!up.exactly_zero()) upper.add(a, b, r, MatrixJet::scalar(1, up * inv));
      }
    }
  }
  return {lower, upper};
}

}  // namespace endoquant
