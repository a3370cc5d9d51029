#include "endoquant/tensors/fock.hpp"

#include <algorithm>
#include <optional>

#include "endoquant/tensors/graph_tensor.hpp"

namespace endoquant {

IndexedTensor E_from_calabi(const Chart& chart, BiBox box) {
  int nvars = chart.nvars();
  ScalarBiSeries d = calabi_D(chart, box);
  MatrixBiSeries q = calabi_Q(chart, box);
  auto jet_mul = [](const NuSeries<Jet>& a, const NuSeries<Jet>& b) {
    return nu_product(a, b, [](const Jet& x, const Jet& y) { return x * y; });
  };
  // e^D: D starts in bidegree (1, 1), so the series stops after min(pmax, qmax) terms
  ScalarBiSeries exp_d(chart.m(), box);
  exp_d.add(BiKey{}, NuSeries<Jet>::single(0, Jet::constant(nvars, GaussianRational(1))));
  ScalarBiSeries term = exp_d;
  for (int n = 1; n <= std::min(box.pmax, box.qmax); ++n) {
    term = bi_product(term, d, jet_mul);
    for (auto& [k, v] : term.terms()) {
      v = v.map([n](const Jet& j) { return j * GaussianRational(Rational(1, n)); });
    }
    exp_d += term;
  }
  auto e = bi_product(exp_d, q, [](const NuSeries<Jet>& a, const MatrixJet& b) {
    return a.map([&b](const Jet& j) { return jet_scale(j, b); });
  });
  IndexedTensor t(chart.m(), -std::min(box.pmax, box.qmax), TensorSeries::kOpen);
  for (const auto& [k, v] : e.terms()) {
    GaussianRational f(Rational(exponent_factorial(k.hol) * exponent_factorial(k.antihol)));
    for (const auto& [s, x] : v.terms()) t.add(k.hol, k.antihol, s, x.scaled(f));
  }
  t.prune();
  return t;
}

FockOperator make_operator(IndexedTensor t, int max_rank) {
  FockOperator op;
  for (const auto& [k, v] : t.entries) {
    int p = total_degree(k.first), q = total_degree(k.second);
    for (const auto& [s, x] : v.terms()) {
      auto [it, ins] = op.bound.try_emplace({p, s}, q);
      if (!ins) it->second = std::max(it->second, q);
    }
  }
  op.tensor = std::move(t);
  op.max_rank = max_rank;
  return op;
}

FockOperator fock_compose(const FockOperator& a, const FockOperator& b) {
  IndexedTensor left(a.tensor.m, a.tensor.smin, a.tensor.smax);
  left.row_smax = a.tensor.row_smax;
  left.col_smax = a.tensor.col_smax;
  for (const auto& [k, v] : a.tensor.entries) {
    if (total_degree(k.first) > a.max_rank) continue;
    if (total_degree(k.second) > b.max_rank) {
      throw InvalidInput("fock_compose: intermediate rank " + std::to_string(total_degree(k.second)) +
                         " exceeds the rows of the right operand (witness violation)");
    }
    left.entries.emplace(k, v);
  }
  return make_operator(contract(left, b.tensor), a.max_rank);
}

namespace {

int nvars_of(const IndexedTensor& t) {
  for (const auto& [k, v] : t.entries) {
    for (const auto& [s, x] : v.terms()) return x.nvars();
  }
  throw InvalidInput("fock_invert: empty operator");
}

// Leading diagonal entry must be a nonzero constant multiple of the identity
// (within its accuracy); returns lambda with E_0(K, K) = lambda Delta_K^K.
std::optional<GaussianRational> diagonal_factor(const MatrixJet& x, const Exponent& k) {
  if (x.accuracy() < 0) return std::nullopt;
  GaussianRational c = x(0, 0).value_at_origin();
  if (c.is_zero()) return std::nullopt;
  if (first_difference(x, MatrixJet::scalar(x.dim(), Jet::constant(x.nvars(), c)))) return std::nullopt;
  return c * GaussianRational(index_count(k));
}

}  // namespace

FockOperator fock_invert(const FockOperator& e, int max_order) {
  if (e.max_rank < max_order) throw InvalidInput("fock_invert: operator rows do not reach the requested order");
  const IndexedTensor& et = e.tensor;
  if (!et.is_open()) throw InvalidInput("fock_invert: operator must be nu-exact");
  int m = et.m;
  int nvars = nvars_of(et);
  std::map<Exponent, std::vector<std::pair<Exponent, const TensorSeries*>>> rows;
  for (const auto& [k, v] : et.entries) rows[k.first].emplace_back(k.second, &v);

  // c[P][I][s]
  std::map<Exponent, std::map<Exponent, std::map<int, MatrixJet>>> c;
  auto rank = [](const Exponent& x) { return total_degree(x); };
  for (int s = 0; s <= max_order; ++s) {
    for (int n = 0; n + s <= max_order; ++n) {
      for (const auto& k : exponents_of_degree(m, n)) {
        std::map<Exponent, MatrixJet> acc;
        if (s == 0) acc[k] = MatrixJet::scalar(1, Jet::constant(nvars, GaussianRational(Rational(1 / index_count(k)))));
        std::optional<GaussianRational> diagonal;
        for (const auto& [p, series] : rows[k]) {
          for (const auto& [t, val] : series->terms()) {
            if (t > s) break;
            if (t < 0) throw InvalidInput("fock_invert: operator has negative nu orders");
            if (t == 0 && p == k) {
              diagonal = diagonal_factor(val, k);
              if (!diagonal) throw InvalidInput("fock_invert: leading diagonal term is not a scalar");
              continue;
            }
            if (t == 0 && rank(p) >= n) {
              if (!val.exactly_zero()) throw InvalidInput("fock_invert: leading term is not unipotent");
              continue;
            }
            if (s - t + rank(p) > max_order) {
              throw InvalidInput("fock_invert: operator reaches beyond the solvable region (witness violation)");
            }
            GaussianRational w(-index_count(p));
            for (const auto& [i, cs] : c[p]) {
              auto it = cs.find(s - t);
              if (it == cs.end()) continue;
              accumulate(acc[i], (val * it->second).scaled(w));
            }
          }
        }
        if (!diagonal) throw InvalidInput("fock_invert: leading diagonal term is missing");
        GaussianRational scale = GaussianRational(1) / *diagonal;
        for (auto& [i, v] : acc) {
          if (!v.exactly_zero()) c[k][i].emplace(s, v.scaled(scale));
        }
      }
    }
  }

  IndexedTensor out(m, 0, -1);
  for (int n = 0; n <= max_order; ++n) {
    for (const auto& k : exponents_of_degree(m, n)) out.row_smax[k] = max_order - n;
  }
  for (const auto& [k, row] : c) {
    for (const auto& [i, cs] : row) {
      for (const auto& [s, v] : cs) out.add(k, i, s, v);
    }
  }
  return make_operator(std::move(out), max_order);
}

IndexedTensor raise_inverse(const FockOperator& c, const IndexedTensor& g_upper, int max_order) {
  IndexedTensor r = contract(g_upper, c.tensor);
  r.row_smax.clear();
  r.col_smax.clear();
  r.smax = max_order;
  for (auto& [k, v] : r.entries) v = v.truncated(max_order);
  r.prune();
  return r;
}

IndexedTensor C_from_fock(const Chart& chart, int max_order) {
  IndexedTensor gu = g_tensors(chart, max_order).second;
  IndexedTensor e = E_from_calabi(chart, BiBox{max_order, max_order});
  FockOperator inv = fock_invert(make_operator(contract(e, gu), max_order), max_order);
  return raise_inverse(inv, gu, max_order);
}

}  // namespace endoquant
