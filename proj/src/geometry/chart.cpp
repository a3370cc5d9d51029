#include "endoquant/geometry/chart.hpp"

#include "endoquant/algebra/errors.hpp"

namespace endoquant {

Chart Chart::validate(ChartData data) {
  if (data.m < 1 || 2 * data.m > kMaxVars) throw InvalidInput("m: complex dimension must be 1..3");
  if (data.d < 1) throw InvalidInput("d: bundle rank must be positive");
  if (data.R < 0) throw InvalidInput("R: nu order must be nonnegative");
  if (data.accuracy < 0) throw InvalidInput("accuracy: must be nonnegative");
  int nv = 2 * data.m;
  if (!data.potentials.count(-1)) throw InvalidInput("potentials.-1: Phi_{-1} is mandatory");
  for (auto it = data.potentials.begin(); it != data.potentials.end();) {
    const auto& [r, phi] = *it;
    std::string field = "potentials." + std::to_string(r);
    if (r < -1 || r > data.R) throw InvalidInput(field + ": weight outside [-1, R]");
    if (phi.nvars() != nv) throw InvalidInput(field + ": wrong number of variables");
    if (!(phi.conj_swap(data.m) == phi)) throw InvalidInput(field + ": potential is not real");
    if (phi.exactly_zero() && r != -1) {
      it = data.potentials.erase(it);
    } else {
      ++it;
    }
  }
  if (data.u.dim() == 0) data.u = MatrixJet::identity(data.d, nv);
  if (data.u.dim() != data.d) throw InvalidInput("u: matrix dimension differs from d");
  if (data.u.nvars() != nv) throw InvalidInput("u: wrong number of variables");
  if (!(data.u.hermitian_conj_swap(data.m) == data.u)) throw InvalidInput("u: metric is not Hermitian");

  Chart c;
  c.data_ = std::move(data);
  int m = c.m();
  const Jet& phi = c.data_.potentials.at(-1);
  MatrixJet g(m, nv);
  for (int k = 0; k < m; ++k) {
    for (int l = 0; l < m; ++l) {
      g(k, l) = phi.derive(k).derive(m + l);
      c.metric_.push_back(g(k, l));
    }
  }
  MatrixJet ginv;
  try {
    ginv = jet_inverse(g, c.data_.accuracy);
  } catch (const SingularValue&) {
    throw InvalidInput("potentials.-1: metric g_{k lbar} is degenerate at the base point");
  }
  c.inverse_metric_.resize(static_cast<std::size_t>(m * m));
  // g^{lbar k} is the (l, k) entry of the inverse of the matrix (g_{k lbar}).
  for (int l = 0; l < m; ++l) {
    for (int k = 0; k < m; ++k) c.inverse_metric_[static_cast<std::size_t>(l * m + k)] = ginv(l, k);
  }
  try {
    c.u_inv_ = jet_inverse(c.data_.u, c.data_.accuracy);
  } catch (const SingularValue&) {
    throw InvalidInput("u: metric is singular at the base point");
  }
  for (int k = 0; k < m; ++k) c.christoffel_.push_back(c.data_.u.derive(k) * c.u_inv_);
  return c;
}

const Jet* Chart::potential(int r) const {
  auto it = data_.potentials.find(r);
  return it == data_.potentials.end() ? nullptr : &it->second;
}

int Chart::max_weight() const { return data_.potentials.rbegin()->first; }

bool Chart::constant_bundle() const {
  for (int i = 0; i < d(); ++i) {
    for (int j = 0; j < d(); ++j) {
      const Jet& e = data_.u(i, j);
      if (!e.is_exact() || e.max_degree() > 0) return false;
    }
  }
  return true;
}

MatrixJet Chart::curvature(int k, int l) const {
  return christoffel(k).derive(m() + l).scaled(GaussianRational::imaginary_unit());
}

Jet poisson_bracket(const Jet& f, const Jet& g, const Chart& chart) {
  int m = chart.m();
  Jet acc(chart.nvars());
  for (int k = 0; k < m; ++k) {
    for (int l = 0; l < m; ++l) {
      const Jet& ginv = chart.inverse_metric(l, k);
      if (ginv.exactly_zero()) continue;
      acc += ginv * (f.derive(k) * g.derive(m + l) - g.derive(k) * f.derive(m + l));
    }
  }
  return acc.scaled(GaussianRational::imaginary_unit());
}

MatrixJet covariant_derive(const MatrixJet& f, int index, bool holomorphic, const Chart& chart) {
  if (index < 0 || index >= chart.m()) throw ShapeMismatch("index out of range");
  if (!holomorphic) return f.derive(chart.m() + index);
  const MatrixJet& gamma = chart.christoffel(index);
  return f.derive(index) + commutator(f, gamma);
}

MatrixJet nabla_hol(const MatrixJet& f, const Exponent& K, const Chart& chart) {
  MatrixJet out = f;
  for (int k = 0; k < chart.m(); ++k) {
    for (int t = 0; t < K[k]; ++t) out = covariant_derive(out, k, true, chart);
  }
  return out;
}

MatrixJet derive_multi(const MatrixJet& f, const Exponent& e) {
  MatrixJet out = f;
  for (int v = 0; v < f.nvars(); ++v) {
    for (int t = 0; t < e[v]; ++t) out = out.derive(v);
  }
  return out;
}

MatrixJet nabla_hol_conjugated(const MatrixJet& f, const Exponent& K, const Chart& chart) {
  Exponent e = join_exponent(K, Exponent{}, chart.m());
  return chart.u() * derive_multi(chart.u_inv() * f * chart.u(), e) * chart.u_inv();
}

MatrixJet nabla_antihol(const MatrixJet& f, const Exponent& L, const Chart& chart) {
  return derive_multi(f, join_exponent(Exponent{}, L, chart.m()));
}

}  // namespace endoquant
