#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "endoquant/algebra/bi_series.hpp"
#include "endoquant/algebra/matrix_jet.hpp"
#include "endoquant/algebra/nu_series.hpp"

namespace endoquant {

/// Pair of symmetric multi-indices stored as count vectors over the m slots.
/// The first index is the source-side one (Lbar in C^{Lbar K}, K in E_{K Lbar}
/// and in mixed tensors A_K^I), the second the sink-side one.
using IndexKey = std::pair<Exponent, Exponent>;
using TensorSeries = NuSeries<MatrixJet>;

/// Number of sequences with the multiset e (|e|! / e!).
Rational index_count(const Exponent& e);

/// a += b where a 1×1 operand stands for a scalar multiple of the identity.
void accumulate(MatrixJet& a, const MatrixJet& b);
MatrixJet promote(const MatrixJet& a, int d);

/// Symmetric tensor with nu-series entries. Absent entries vanish through the
/// entry window: the smaller of the row_smax / col_smax overrides listed for
/// its indices, or smax when neither index is listed.
struct IndexedTensor {
  int m = 1;
  int smin = 0;
  int smax = TensorSeries::kOpen;
  std::map<Exponent, int> row_smax;
  std::map<Exponent, int> col_smax;
  std::map<IndexKey, TensorSeries> entries;

  IndexedTensor() = default;
  IndexedTensor(int m_, int smin_, int smax_) : m(m_), smin(smin_), smax(smax_) {}

  bool is_open() const { return smax == TensorSeries::kOpen && row_smax.empty() && col_smax.empty(); }
  int row_window(const Exponent& a) const;
  int col_window(const Exponent& b) const;
  int window(const Exponent& a, const Exponent& b) const;
  /// Entry or an empty series over the entry window.
  TensorSeries at(const Exponent& a, const Exponent& b) const;
  void add(const Exponent& a, const Exponent& b, int order, const MatrixJet& v);
  /// Removes terms whose matrices are exactly zero and entries left empty.
  void prune();
};

/// (A B)(a, c) = sum_b count(b) A(a, b) B(b, c). One operand must be open
/// (nu-exact); the windows of the other may depend on the contracted index only.
IndexedTensor contract(const IndexedTensor& a, const IndexedTensor& b);

/// Delta_K^I = 1/count(K) for K = I, ranks up to max_rank.
IndexedTensor delta_tensor(int m, int max_rank, int nvars);

/// Identity at order zero, given as a series.
TensorSeries delta_entry(const Exponent& k, int nvars);

struct Discrepancy {
  int order = 0;
  IndexKey index;
  int row = 0;
  int col = 0;
  Exponent monomial{};
  std::string what;
};

std::string describe(const Discrepancy& d, int m, int nvars);

/// First coefficient where a and b differ at orders <= max_order for index
/// pairs accepted by `in_region`. Orders beyond either entry window and
/// monomials beyond jet accuracy are not compared; callers that need a full
/// window check it separately.
template <class Region>
std::optional<Discrepancy> compare_tensors(const IndexedTensor& a, const IndexedTensor& b, int max_order,
                                           Region&& in_region);

std::optional<Discrepancy> compare_series(const TensorSeries& a, const TensorSeries& b, int lo, int hi);

}  // namespace endoquant

#include "endoquant/tensors/indexed_tensor_impl.hpp"
