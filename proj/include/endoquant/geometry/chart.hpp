#pragma once

#include <map>
#include <vector>

#include "endoquant/algebra/matrix_jet.hpp"

namespace endoquant {

/// Raw chart input: potentials Phi_r (-1 <= r <= R) and the Hermitian metric u
/// of E* in a fixed trivialization. Variables are z^1..z^m, zbar^1..zbar^m.
struct ChartData {
  int m = 1;
  int d = 1;
  int R = 2;
  /// Accuracy given to non-polynomial jets such as inverses of exact input.
  int accuracy = 8;
  std::map<int, Jet> potentials;
  MatrixJet u;
};

/// Validated chart together with the metric data derived from it.
class Chart {
 public:
  /// Throws InvalidInput naming the offending field.
  static Chart validate(ChartData data);

  const ChartData& data() const { return data_; }
  int m() const { return data_.m; }
  int d() const { return data_.d; }
  int R() const { return data_.R; }
  int nvars() const { return 2 * data_.m; }
  int accuracy() const { return data_.accuracy; }

  /// Phi_r, or nullptr when absent (identically zero).
  const Jet* potential(int r) const;
  /// Largest r with a nonzero potential.
  int max_weight() const;

  /// g_{k lbar} = d_k dbar_l Phi_{-1}; indices are 0-based.
  const Jet& metric(int k, int l) const { return metric_[static_cast<std::size_t>(k * m() + l)]; }
  /// g^{lbar k}.
  const Jet& inverse_metric(int l, int k) const { return inverse_metric_[static_cast<std::size_t>(l * m() + k)]; }

  const MatrixJet& u() const { return data_.u; }
  const MatrixJet& u_inv() const { return u_inv_; }
  /// True when u has no z-dependence.
  bool constant_bundle() const;

  /// Gamma_k = (d_k u) u^{-1}.
  const MatrixJet& christoffel(int k) const { return christoffel_[static_cast<std::size_t>(k)]; }
  /// R_{k lbar} := i dbar_l Gamma_k, so that [nabla_k, nabla_lbar] = -i R_{k lbar}.
  MatrixJet curvature(int k, int l) const;

  Jet constant(const GaussianRational& c) const { return Jet::constant(nvars(), c); }
  MatrixJet identity() const { return MatrixJet::identity(d(), nvars()); }

 private:
  ChartData data_;
  std::vector<Jet> metric_;
  std::vector<Jet> inverse_metric_;
  MatrixJet u_inv_;
  std::vector<MatrixJet> christoffel_;
};

/// i g^{lbar k}(d_k f dbar_l g - d_k g dbar_l f).
Jet poisson_bracket(const Jet& f, const Jet& g, const Chart& chart);

/// nabla_k f = d_k f + [f, Gamma_k] for hol, nabla_lbar f = dbar_l f otherwise.
MatrixJet covariant_derive(const MatrixJet& f, int index, bool holomorphic, const Chart& chart);

/// Iterated nabla_K (K as a count vector over the m holomorphic indices).
MatrixJet nabla_hol(const MatrixJet& f, const Exponent& K, const Chart& chart);
/// nabla_K computed as u d_K(u^{-1} f u) u^{-1}.
MatrixJet nabla_hol_conjugated(const MatrixJet& f, const Exponent& K, const Chart& chart);
/// dbar_L.
MatrixJet nabla_antihol(const MatrixJet& f, const Exponent& L, const Chart& chart);

MatrixJet derive_multi(const MatrixJet& f, const Exponent& e);

}  // namespace endoquant
