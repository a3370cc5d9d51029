#pragma once

#include "endoquant/algebra/bi_series.hpp"
#include "endoquant/algebra/nu_series.hpp"
#include "endoquant/geometry/chart.hpp"

namespace endoquant {

using ScalarBiSeries = BiSeries<NuSeries<Jet>>;
using MatrixBiSeries = BiSeries<MatrixJet>;

/// D(eta, etabar) = sum_r nu^r [Phi_r(z) - Phi_r(z+eta) + Phi_r(z+eta, zbar+etabar) - Phi_r(zbar+etabar)].
/// Coefficient at eta^a etabar^b is nu^r d^a dbar^b Phi_r / (a! b!).
ScalarBiSeries calabi_D(const Chart& chart, BiBox box);

/// Taylor re-expansion f(z + eta, zbar + etabar) with the shifts switched on per flag.
MatrixBiSeries shift_expansion(const MatrixJet& f, bool shift_hol, bool shift_antihol, int m, BiBox box);

/// Q = u(z) u^{-1}(z+eta) u(z+eta, zbar+etabar) u^{-1}(zbar+etabar).
MatrixBiSeries calabi_Q(const Chart& chart, BiBox box);
/// H = log Q.
MatrixBiSeries calabi_H(const Chart& chart, BiBox box);
MatrixBiSeries series_log(const MatrixBiSeries& q, int d, int nvars);

/// H from the Dynkin expansion of log(e^x e^y e^-x e^-y) with x = eta^k nabla_k,
/// y = etabar^l nabla_lbar; terms through total (eta, etabar) degree max_order + 1.
MatrixBiSeries bch_H(const Chart& chart, int max_order);

/// Tensor component T_{K Lbar} = K! L! * coefficient (count-vector factorials).
template <class T>
T tensor_component(const BiSeries<T>& s, const BiKey& key, const T& zero) {
  const T* v = s.find(key);
  if (!v) return zero;
  Rational f = exponent_factorial(key.hol) * exponent_factorial(key.antihol);
  T out = *v;
  out *= GaussianRational(f);
  return out;
}

/// Drops entries that are exactly zero.
void prune(MatrixBiSeries& s);

}  // namespace endoquant
