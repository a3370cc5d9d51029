#pragma once

#include <functional>
#include <map>
#include <optional>
#include <tuple>

#include "endoquant/coefficients/coefficients.hpp"
#include "endoquant/geometry/calabi.hpp"
#include "endoquant/graphs/enumerate.hpp"
#include "endoquant/tensors/indexed_tensor.hpp"

namespace endoquant {

/// Chart together with cached vertex factors: potential derivatives and the
/// components H_{K Lbar} of log Q inside a bidegree box.
class TensorContext {
 public:
  TensorContext(const Chart& chart, BiBox h_box);

  const Chart& chart() const { return chart_; }
  const BiBox& h_box() const { return h_box_; }
  const MatrixBiSeries& H() const { return h_; }

  /// d_K dbar_L Phi_r; nullptr when the derivative vanishes identically.
  const Jet* potential_derivative(int r, const Exponent& hol, const Exponent& antihol);
  /// H_{K Lbar} = K! L! [eta^K etabar^L] H; nullptr when exactly zero.
  const MatrixJet* h_component(const Exponent& hol, const Exponent& antihol);

  /// Drops vertex types whose factors vanish identically on this chart.
  VertexFilter filter() const;

 private:
  const Chart& chart_;
  BiBox h_box_;
  MatrixBiSeries h_;
  std::map<std::tuple<int, Exponent, Exponent>, std::optional<Jet>> phi_cache_;
  std::map<BiKey, std::optional<MatrixJet>> h_cache_;
};

enum class GraphForm { Upper, Mixed, Lower };

/// Gamma tensor of one graph: all nonzero components sit at nu^order.
/// Upper: (Lbar, K); mixed: (K, I); lower: (K, Lbar). Values are symmetrized
/// components; 1×1 matrices stand for scalars.
struct GraphTensor {
  int order = 0;
  std::map<IndexKey, MatrixJet> values;
};

GraphTensor eval_graph(const FGraph& g, GraphForm form, TensorContext& ctx);

/// Adds weight * Gamma into t.
void add_graph_tensor(IndexedTensor& t, const GraphTensor& gt, const GaussianRational& weight);

using Coefficient = std::function<Rational(const FGraph&)>;

/// C^{Lbar K} = sum over classes of c / |Aut| Gamma^{Lbar K} through nu^max_order.
/// `coefficient` overrides the triangular solver (negative controls).
IndexedTensor C_from_graphs(TensorContext& ctx, int max_order, const Coefficient& coefficient = {});

/// E_{K Lbar} = sum over N-keys of p! q! / (lambda s!) Gamma_{K Lbar} for |K| <= max_k, |L| <= max_l.
IndexedTensor E_from_graphs(TensorContext& ctx, int max_k, int max_l);

/// G_{K Lbar} and G^{Lbar K} up to max_rank.
std::pair<IndexedTensor, IndexedTensor> g_tensors(const Chart& chart, int max_rank);

}  // namespace endoquant
