#include "endoquant/coefficients/coefficients.hpp"

#include <functional>

#include "endoquant/algebra/errors.hpp"
#include "endoquant/graphs/partition.hpp"

namespace endoquant {

namespace {

Rational sign(int e) { return (e % 2 == 0) ? Rational(1) : Rational(-1); }

FGraph chain_graph(const FGraph& g, int i) { return split(g, sigma_partition(g, i)).second; }

}  // namespace

Rational d_weight(const FGraph& g) { return g.internal() == 0 ? factorial(g.q()) : Rational(0); }

Rational e_weight(const FGraph& g) {
  if (!g.in_family_n()) throw InvalidInput("e_weight: graph has an edge between internal vertices");
  GraphClass c = canonicalize(g);
  return Rational(factorial(g.p()) * factorial(g.q()) / (Rational(c.aut) * factorial(g.specials)));
}

Rational CoeffTable::c(const FGraph& g) {
  GraphKey key = canonicalize(g).key;
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  Rational value;
  if (g.internal() == 0) {
    value = 1;
  } else if (!frontal_stats(g).regular.empty()) {
    FGraph reduced = chain_graph(g, g.specials);
    value = sign(g.R() - reduced.R()) * c(reduced);
  } else {
    value = frontal_free(g, key);
  }
  memo_.emplace(std::move(key), value);
  return value;
}

Rational CoeffTable::frontal_free(const FGraph& g, const GraphKey&) {
  int k = g.specials;
  int l = frontal_stats(g).chain;
  if (l < 1) throw Error("c: frontal-free graph without a frontal special vertex");
  Rational sum = 0;
  for (int j = k - l; j <= k - 1; ++j) {
    FGraph gj = chain_graph(g, j);
    sum += sign(g.R() - gj.R()) * c(gj) / factorial(k - j);
  }
  return -sum;
}

Rational c_triangular(const FGraph& g) {
  CoeffTable t;
  return t.c(g);
}

Rational c_closed(const FGraph& g) {
  int k = g.specials;
  if (k == 0) return sign(g.R());
  std::vector<int> l(static_cast<std::size_t>(k + 1));
  for (int i = 0; i <= k; ++i) l[i] = frontal_stats(chain_graph(g, i)).chain;
  Rational total = 0;
  // steps from k down to 0; n + 1 = number of steps
  std::function<void(int, int, Rational)> walk = [&](int at, int steps, Rational weight) {
    if (at == 0) {
      total += sign(g.R() + steps) * weight;
      return;
    }
    for (int d = 1; d <= l[at] && d <= at; ++d) walk(at - d, steps + 1, weight / factorial(d));
  };
  walk(k, 0, Rational(1));
  return total;
}

Rational dgamma_sum(const FGraph& g, CoeffTable& table) {
  Rational sum = 0;
  for (const auto& pi : admissible_partitions(g)) {
    Split s = split(g, pi);
    if (!s.first.in_family_n()) continue;
    sum += table.c(s.second) / factorial(s.first.specials);
  }
  return factorial(g.q()) * sum;
}

}  // namespace endoquant
