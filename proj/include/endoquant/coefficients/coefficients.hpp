#pragma once

#include <map>

#include "endoquant/algebra/gaussian_rational.hpp"
#include "endoquant/graphs/graph.hpp"

namespace endoquant {

/// n! on Lambda_n, zero on graphs with internal vertices.
Rational d_weight(const FGraph& g);

/// p! q! / (|Aut| s!) on graphs without internal-internal edges.
Rational e_weight(const FGraph& g);

/// c(Gamma) from the unipotent triangular system, memoized per class.
class CoeffTable {
 public:
  Rational c(const FGraph& g);
  std::size_t size() const { return memo_.size(); }

 private:
  Rational frontal_free(const FGraph& g, const GraphKey& key);
  std::map<GraphKey, Rational> memo_;
};

Rational c_triangular(const FGraph& g);
/// Closed formula: signed sum over chains k = k_0 > ... > k_{n+1} = 0 with
/// 1 <= k_i - k_{i+1} <= l(Gamma_{k_i}).
Rational c_closed(const FGraph& g);

/// q! sum over admissible partitions with first part in N of c(second)/s(first)!;
/// the defining relation requires this to equal d_weight.
Rational dgamma_sum(const FGraph& g, CoeffTable& table);

}  // namespace endoquant
