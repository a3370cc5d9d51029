#include "endoquant/geometry/calabi.hpp"

#include "endoquant/algebra/errors.hpp"

namespace endoquant {

namespace {

BiKey unit_key(int k, bool hol) {
  BiKey key;
  (hol ? key.hol : key.antihol)[k] = 1;
  return key;
}

std::vector<Exponent> exponents_up_to(int m, int lo, int hi) {
  std::vector<Exponent> out;
  for (int n = lo; n <= hi; ++n) {
    auto e = exponents_of_degree(m, n);
    out.insert(out.end(), e.begin(), e.end());
  }
  return out;
}

MatrixJet matmul(const MatrixJet& a, const MatrixJet& b) { return a * b; }

}  // namespace

void prune(MatrixBiSeries& s) {
  for (auto it = s.terms().begin(); it != s.terms().end();) {
    if (it->second.exactly_zero()) {
      it = s.terms().erase(it);
    } else {
      ++it;
    }
  }
}

ScalarBiSeries calabi_D(const Chart& chart, BiBox box) {
  int m = chart.m();
  ScalarBiSeries out(m, box);
  for (const auto& [r, phi] : chart.data().potentials) {
    for (const auto& a : exponents_up_to(m, 1, box.pmax)) {
      for (const auto& b : exponents_up_to(m, 1, box.qmax)) {
        BiKey key{a, b};
        if (!box.admits(key)) continue;
        Jet j = derive_multi(phi, join_exponent(a, b, m));
        if (j.exactly_zero()) continue;
        j *= GaussianRational(1 / (exponent_factorial(a) * exponent_factorial(b)));
        auto [it, inserted] = out.terms().try_emplace(key, NuSeries<Jet>(-1, NuSeries<Jet>::kOpen));
        it->second.add(r, j);
      }
    }
  }
  return out;
}

MatrixBiSeries shift_expansion(const MatrixJet& f, bool shift_hol, bool shift_antihol, int m, BiBox box) {
  MatrixBiSeries out(m, box);
  auto hols = shift_hol ? exponents_up_to(m, 0, box.pmax) : std::vector<Exponent>{Exponent{}};
  auto antihols = shift_antihol ? exponents_up_to(m, 0, box.qmax) : std::vector<Exponent>{Exponent{}};
  for (const auto& a : hols) {
    for (const auto& b : antihols) {
      BiKey key{a, b};
      if (!box.admits(key)) continue;
      MatrixJet j = derive_multi(f, join_exponent(a, b, m));
      if (j.exactly_zero()) continue;
      out.add(key, j.scaled(GaussianRational(1 / (exponent_factorial(a) * exponent_factorial(b)))));
    }
  }
  return out;
}

MatrixBiSeries calabi_Q(const Chart& chart, BiBox box) {
  int m = chart.m();
  MatrixBiSeries q(m, box);
  q.add(BiKey{}, chart.u());
  q = bi_product(q, shift_expansion(chart.u_inv(), true, false, m, box), matmul);
  q = bi_product(q, shift_expansion(chart.u(), true, true, m, box), matmul);
  q = bi_product(q, shift_expansion(chart.u_inv(), false, true, m, box), matmul);
  prune(q);
  return q;
}

MatrixBiSeries series_log(const MatrixBiSeries& q, int d, int nvars) {
  MatrixBiSeries x = q;
  auto it = x.terms().find(BiKey{});
  if (it == x.terms().end()) throw InvalidInput("log needs identity leading term");
  MatrixJet lead = it->second - MatrixJet::identity(d, nvars);
  if (!lead.known_zero()) throw InvalidInput("log needs identity leading term");
  x.terms().erase(it);
  MatrixBiSeries result(q.m(), q.box());
  MatrixBiSeries power = x;
  for (int n = 1; !power.terms().empty(); ++n) {
    GaussianRational c(Rational(n % 2 ? 1 : -1, n));
    for (const auto& [k, v] : power.terms()) result.add(k, v.scaled(c));
    power = bi_product(power, x, matmul);
    prune(power);
  }
  prune(result);
  return result;
}

MatrixBiSeries calabi_H(const Chart& chart, BiBox box) {
  return series_log(calabi_Q(chart, box), chart.d(), chart.nvars());
}

MatrixBiSeries bch_H(const Chart& chart, int max_order) {
  if (max_order < 1 || max_order > 3) throw InvalidInput("bch_H supports max_order 1..3");
  int m = chart.m();
  BiBox box{max_order + 1, max_order + 1, max_order + 1};
  auto dx = [&](const MatrixBiSeries& s) {
    MatrixBiSeries out(m, box);
    for (const auto& [key, v] : s.terms()) {
      for (int k = 0; k < m; ++k) out.add(key + unit_key(k, true), covariant_derive(v, k, true, chart));
    }
    return out;
  };
  auto dy = [&](const MatrixBiSeries& s) {
    MatrixBiSeries out(m, box);
    for (const auto& [key, v] : s.terms()) {
      for (int l = 0; l < m; ++l) out.add(key + unit_key(l, false), covariant_derive(v, l, false, chart));
    }
    return out;
  };
  auto scaled = [&](const MatrixBiSeries& s, const GaussianRational& c) {
    MatrixBiSeries out(m, box);
    for (const auto& [key, v] : s.terms()) out.add(key, v.scaled(c));
    return out;
  };
  // [x, y] acts as the element F = eta^k etabar^l dbar_l Gamma_k.
  MatrixBiSeries f(m, box);
  for (int k = 0; k < m; ++k) {
    for (int l = 0; l < m; ++l) {
      f.add(unit_key(k, true) + unit_key(l, false), chart.christoffel(k).derive(m + l));
    }
  }
  MatrixBiSeries h = f;
  if (max_order >= 2) {
    MatrixBiSeries df = dx(f);
    df += dy(f);
    h += scaled(df, GaussianRational(Rational(1, 2)));
    if (max_order >= 3) {
      MatrixBiSeries ddf = dx(df);
      ddf += dy(df);
      h += scaled(ddf, GaussianRational(Rational(1, 6)));
      h += scaled(dx(dy(f)), GaussianRational(Rational(-1, 12)));
    }
  }
  prune(h);
  return h;
}

}  // namespace endoquant
