#pragma once

#include <map>
#include <utility>

#include "endoquant/geometry/calabi.hpp"
#include "endoquant/tensors/indexed_tensor.hpp"

namespace endoquant {

/// E_{K Lbar} = K! L! [eta^K etabar^L] e^D Q for |K| <= box.pmax, |L| <= box.qmax.
IndexedTensor E_from_calabi(const Chart& chart, BiBox box);

/// Operator on the formal Fock space: mixed tensor A_K^I plus its finite-range
/// witness: bound[(|K|, r)] = largest |I| with A_{r,K}^I != 0.
struct FockOperator {
  IndexedTensor tensor;
  std::map<std::pair<int, int>, int> bound;
  /// Largest |K| for which the rows are complete.
  int max_rank = 0;
};

FockOperator make_operator(IndexedTensor t, int max_rank);

/// A_K^P B_P^I for |K| <= A.max_rank. Throws InvalidInput when A reaches an
/// intermediate rank beyond the rows B provides (witness violation).
FockOperator fock_compose(const FockOperator& a, const FockOperator& b);

/// C with E C = Delta, solved order by order in the region s + |K| <= max_order.
/// The order-zero part of E_K^P must be lambda_{|K|} Delta plus terms lowering
/// |K| (for E_{K Lbar} G^{Lbar P}, lambda_n = n!). Throws InvalidInput otherwise.
FockOperator fock_invert(const FockOperator& e, int max_order);

/// Upper C^{Lbar K} = G^{Lbar P} C_P^K through nu^max_order.
IndexedTensor raise_inverse(const FockOperator& c, const IndexedTensor& g_upper, int max_order);

/// C^{Lbar K} through nu^max_order by Fock inversion of E_{K Lbar} G^{Lbar P}.
IndexedTensor C_from_fock(const Chart& chart, int max_order);

}  // namespace endoquant
