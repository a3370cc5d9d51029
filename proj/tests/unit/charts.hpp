// Small charts shared by the unit tests.
#pragma once

#include <random>

#include "endoquant/geometry/chart.hpp"

namespace test_charts {

using namespace endoquant;
using GR = GaussianRational;
using Terms = std::vector<std::pair<GaussianRational, std::vector<int>>>;

inline Jet poly(int nvars, const Terms& t) { return Jet::from_terms(nvars, t); }

/// Phi_{-1} = sum_k z^k zbar^k, u = identity.
inline ChartData flat_data(int m = 1, int d = 1, int R = 3) {
  ChartData c;
  c.m = m;
  c.d = d;
  c.R = R;
  Jet phi(2 * m);
  for (int k = 0; k < m; ++k) {
    Exponent e{};
    e[k] = 1;
    e[m + k] = 1;
    phi.add_term(e, GR(1));
  }
  c.potentials[-1] = phi;
  c.u = MatrixJet::identity(d, 2 * m);
  return c;
}

/// The rank-2 bundle u = [[1, z], [zbar, 1 + z zbar]] over the flat line (det u = 1).
inline ChartData bundle2_data(int R = 2) {
  ChartData c = flat_data(1, 2, R);
  MatrixJet u(2, 2);
  u(0, 0) = poly(2, {{GR(1), {0, 0}}});
  u(0, 1) = poly(2, {{GR(1), {1, 0}}});
  u(1, 0) = poly(2, {{GR(1), {0, 1}}});
  u(1, 1) = poly(2, {{GR(1), {0, 0}}, {GR(1), {1, 1}}});
  c.u = u;
  return c;
}

/// Line bundle u = 1 + z zbar over the flat line.
inline ChartData line_data(int R = 2, int accuracy = 10) {
  ChartData c = flat_data(1, 1, R);
  c.accuracy = accuracy;
  c.u = MatrixJet(1, 2);
  c.u(0, 0) = poly(2, {{GR(1), {0, 0}}, {GR(1), {1, 1}}});
  return c;
}

/// Curved m=1 chart with higher potentials and the rank-2 bundle.
inline ChartData curved_data(int R = 3, int accuracy = 8) {
  ChartData c = bundle2_data(R);
  c.accuracy = accuracy;
  c.potentials[-1] = poly(2, {{GR(1), {1, 1}}, {GR(1), {2, 2}}, {GR(Rational(1, 2)), {2, 1}}, {GR(Rational(1, 2)), {1, 2}}});
  c.potentials[0] = poly(2, {{GR(1), {1, 1}}, {GR(Rational(0), Rational(1)), {2, 1}}, {GR(Rational(0), Rational(-1)), {1, 2}}});
  if (R >= 1) c.potentials[1] = poly(2, {{GR(2), {1, 2}}, {GR(2), {2, 1}}, {GR(1), {2, 2}}});
  if (R >= 3) c.potentials[3] = poly(2, {{GR(1), {1, 2}}, {GR(1), {2, 1}}});
  return c;
}

/// m=2 chart with a rank-2 bundle whose inverse is not polynomial.
inline ChartData m2_bundle_data(int R = 2, int accuracy = 6) {
  ChartData c = flat_data(2, 2, R);
  c.accuracy = accuracy;
  MatrixJet u(2, 4);
  u(0, 0) = poly(4, {{GR(1), {0, 0, 0, 0}}});
  u(0, 1) = poly(4, {{GR(1), {1, 0, 0, 0}}});
  u(1, 0) = poly(4, {{GR(1), {0, 0, 1, 0}}});
  u(1, 1) = poly(4, {{GR(1), {0, 0, 0, 0}}, {GR(1), {1, 0, 1, 0}}, {GR(1), {0, 1, 0, 1}}});
  c.u = u;
  return c;
}

inline Chart chart(const ChartData& d) { return Chart::validate(d); }

/// Sparse random polynomial matrix of degree <= max_deg with small Gaussian-integer coefficients.
inline MatrixJet random_matrix(std::mt19937& rng, int d, int nvars, int max_deg, int terms = 3) {
  MatrixJet out(d, nvars);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      for (int t = 0; t < terms; ++t) {
        Exponent e{};
        int left = static_cast<int>(rng() % static_cast<unsigned>(max_deg + 1));
        for (int v = 0; v < nvars && left > 0; ++v) {
          int x = static_cast<int>(rng() % static_cast<unsigned>(left + 1));
          e[v] = static_cast<std::uint8_t>(x);
          left -= x;
        }
        long re = static_cast<long>(rng() % 5) - 2;
        long im = static_cast<long>(rng() % 3) - 1;
        out(i, j).add_term(e, GR(Rational(re), Rational(im)));
      }
    }
  }
  return out;
}

}  // namespace test_charts
