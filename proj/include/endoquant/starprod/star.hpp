#pragma once

#include <optional>
#include <random>
#include <string>

#include "endoquant/geometry/chart.hpp"
#include "endoquant/tensors/graph_tensor.hpp"
#include "endoquant/tensors/indexed_tensor.hpp"

namespace endoquant {

/// nu-formal matrix-valued section over the chart.
using SectionSeries = NuSeries<MatrixJet>;

/// Exact section concentrated at nu^order.
SectionSeries section(const MatrixJet& f, int order = 0);
/// Pointwise (matrix) product, orderwise.
SectionSeries pointwise(const SectionSeries& a, const SectionSeries& b);
SectionSeries pointwise(const SectionSeries& a, const MatrixJet& b);
SectionSeries pointwise(const MatrixJet& a, const SectionSeries& b);
SectionSeries scaled(const SectionSeries& a, const GaussianRational& c);
SectionSeries difference(const SectionSeries& a, const SectionSeries& b);

/// Locator of the first coefficient where a and b differ at nu orders <= through,
/// or of a window that stops short of it; std::nullopt when they agree.
std::optional<std::string> compare_sections(const SectionSeries& a, const SectionSeries& b, int through);

/// f * g = sum count(L) count(K) (dbar_L f) C^{Lbar K} (D_K g) with D = nabla
/// (covariant) or plain d. 1×1 entries of C act as scalars (matrix lift).
class StarProduct {
 public:
  StarProduct(Chart chart, IndexedTensor c, bool covariant);

  SectionSeries operator()(const SectionSeries& f, const SectionSeries& g) const;
  SectionSeries operator()(const MatrixJet& f, const MatrixJet& g) const { return (*this)(section(f), section(g)); }

  const Chart& chart() const { return chart_; }
  const IndexedTensor& tensor() const { return c_; }
  int order() const { return c_.smax; }

 private:
  Chart chart_;
  IndexedTensor c_;
  bool covariant_;
};

/// Chart with the same potentials and the trivial line bundle.
Chart trivialized(const Chart& chart);

/// Scalar star product with separation of variables for the chart potentials,
/// C obtained by Fock inversion of E_{K Lbar} on the trivialized chart.
StarProduct scalar_star(const Chart& chart, int order);

/// The product *_u with C^{Lbar K} summed over graphs; `coefficient` overrides c.
StarProduct graph_star(const Chart& chart, int order, const Coefficient& coefficient = {});

/// v with u * v = 1 in Mat_d of the scalar star algebra, through the star order.
SectionSeries nu_mat_invert(const StarProduct& scalar, const MatrixJet& u, const MatrixJet& u_inv);

/// *_u from the scalar star product conjugated by the bundle metric.
class OracleProduct {
 public:
  OracleProduct(const Chart& chart, int order);

  /// psi = (f u) * v and its inverse f = (psi * u) u~.
  SectionSeries psi(const SectionSeries& f) const;
  SectionSeries psi_inverse(const SectionSeries& p) const;
  /// ((f u) * v * (g u)) u~.
  SectionSeries operator()(const SectionSeries& f, const SectionSeries& g) const;

  const StarProduct& scalar() const { return scalar_; }
  const SectionSeries& v() const { return v_; }

 private:
  Chart chart_;
  StarProduct scalar_;
  SectionSeries v_;
};

/// Sparse random polynomial matrix section: entries of degree <= max_degree with
/// small Gaussian-integer coefficients, nonzero at nu orders 0..max_order.
SectionSeries random_section(std::mt19937_64& rng, int d, int nvars, int max_degree, int max_order);

}  // namespace endoquant
