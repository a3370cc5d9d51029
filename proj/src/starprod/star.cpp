#include "endoquant/starprod/star.hpp"

#include <sstream>

#include "endoquant/tensors/fock.hpp"

namespace endoquant {

namespace {

MatrixJet matmul(const MatrixJet& a, const MatrixJet& b) { return a * b; }

Exponent hol_part(const Exponent& k, int m) { return join_exponent(k, Exponent{}, m); }
Exponent antihol_part(const Exponent& l, int m) { return join_exponent(Exponent{}, l, m); }

SectionSeries tightened(SectionSeries s) {
  s.tighten();
  return s;
}

}  // namespace

SectionSeries section(const MatrixJet& f, int order) { return SectionSeries::single(order, f); }

SectionSeries pointwise(const SectionSeries& a, const SectionSeries& b) {
  return nu_product(tightened(a), tightened(b), matmul);
}

SectionSeries pointwise(const SectionSeries& a, const MatrixJet& b) { return pointwise(a, section(b)); }
SectionSeries pointwise(const MatrixJet& a, const SectionSeries& b) { return pointwise(section(a), b); }

SectionSeries scaled(const SectionSeries& a, const GaussianRational& c) {
  return a.map([&c](const MatrixJet& x) { return x.scaled(c); });
}

SectionSeries difference(const SectionSeries& a, const SectionSeries& b) {
  return a + scaled(b, GaussianRational(-1));
}

std::optional<std::string> compare_sections(const SectionSeries& a, const SectionSeries& b, int through) {
  for (const SectionSeries* x : {&a, &b}) {
    if (x->smax() < through) {
      return "window ends at nu^" + std::to_string(x->smax()) + ", before nu^" + std::to_string(through);
    }
  }
  int lo = std::min(a.smin(), b.smin());
  auto d = compare_series(a, b, lo, through);
  if (!d) return std::nullopt;
  int nvars = 0;
  for (const SectionSeries* x : {&a, &b}) {
    if (!x->empty()) nvars = x->terms().begin()->second.nvars();
  }
  std::ostringstream os;
  os << "nu^" << d->order << " entry [" << d->row << "," << d->col << "] monomial "
     << format_exponent(d->monomial, nvars) << ": " << d->what;
  return os.str();
}

StarProduct::StarProduct(Chart chart, IndexedTensor c, bool covariant)
    : chart_(std::move(chart)), c_(std::move(c)), covariant_(covariant) {
  if (!c_.row_smax.empty() || !c_.col_smax.empty() || c_.is_open()) {
    throw InvalidInput("StarProduct: C must carry a uniform finite window");
  }
}

SectionSeries StarProduct::operator()(const SectionSeries& f0, const SectionSeries& g0) const {
  int m = chart_.m();
  SectionSeries f = tightened(f0), g = tightened(g0);
  auto [lo1, hi1] = product_window(f.smin(), f.smax(), c_.smin, c_.smax);
  auto [lo, hi] = product_window(lo1, hi1, g.smin(), g.smax());
  SectionSeries out(lo, hi);
  if (f.empty() || g.empty()) return out;

  std::map<Exponent, SectionSeries> left, right;
  for (const auto& [key, series] : c_.entries) {
    const auto& [l, k] = key;
    auto lit = left.find(l);
    if (lit == left.end()) {
      Exponent e = antihol_part(l, m);
      lit = left.emplace(l, f.map([&e](const MatrixJet& x) { return derive_multi(x, e); })).first;
    }
    auto rit = right.find(k);
    if (rit == right.end()) {
      SectionSeries d = covariant_ ? g.map([&](const MatrixJet& x) { return nabla_hol(x, k, chart_); })
                                   : g.map([&](const MatrixJet& x) { return derive_multi(x, hol_part(k, m)); });
      rit = right.emplace(k, std::move(d)).first;
    }
    GaussianRational w(index_count(l) * index_count(k));
    SectionSeries c = tightened(series);
    SectionSeries term = nu_product(nu_product(lit->second, c, matmul), rit->second, matmul);
    for (auto& [s, x] : term.terms()) out.add(s, x.scaled(w));
  }
  std::erase_if(out.terms(), [](const auto& t) { return t.second.exactly_zero(); });
  return out;
}

Chart trivialized(const Chart& chart) {
  ChartData data = chart.data();
  data.d = 1;
  data.u = MatrixJet();
  return Chart::validate(std::move(data));
}

StarProduct scalar_star(const Chart& chart, int order) {
  return StarProduct(chart, C_from_fock(trivialized(chart), order), false);
}

StarProduct graph_star(const Chart& chart, int order, const Coefficient& coefficient) {
  TensorContext ctx(chart, BiBox{order, order});
  return StarProduct(chart, C_from_graphs(ctx, order, coefficient), true);
}

SectionSeries nu_mat_invert(const StarProduct& scalar, const MatrixJet& u, const MatrixJet& u_inv) {
  int n = scalar.order();
  SectionSeries v(0, SectionSeries::kOpen);
  v.add(0, u_inv);
  SectionSeries us = section(u);
  for (int s = 1; s <= n; ++s) {
    SectionSeries r = scalar(us, v);
    const MatrixJet* rs = r.find(s);
    if (rs && !rs->exactly_zero()) v.add(s, -(u_inv * *rs));
  }
  return v.truncated(n);
}

OracleProduct::OracleProduct(const Chart& chart, int order)
    : chart_(chart), scalar_(scalar_star(chart, order)), v_(nu_mat_invert(scalar_, chart.u(), chart.u_inv())) {}

SectionSeries OracleProduct::psi(const SectionSeries& f) const { return scalar_(pointwise(f, chart_.u()), v_); }

SectionSeries OracleProduct::psi_inverse(const SectionSeries& p) const {
  return pointwise(scalar_(p, section(chart_.u())), chart_.u_inv());
}

SectionSeries OracleProduct::operator()(const SectionSeries& f, const SectionSeries& g) const {
  SectionSeries left = scalar_(pointwise(f, chart_.u()), v_);
  return pointwise(scalar_(left, pointwise(g, chart_.u())), chart_.u_inv());
}

SectionSeries random_section(std::mt19937_64& rng, int d, int nvars, int max_degree, int max_order) {
  auto pick = [&rng](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };
  SectionSeries out(0, SectionSeries::kOpen);
  for (int s = 0; s <= max_order; ++s) {
    MatrixJet x(d, nvars);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        int terms = pick(3);
        for (int t = 0; t < terms; ++t) {
          Exponent e{};
          int left = pick(max_degree + 1);
          for (int v = 0; v < nvars && left > 0; ++v) {
            int take = v + 1 == nvars ? left : pick(left + 1);
            e[v] = static_cast<std::uint8_t>(take);
            left -= take;
          }
          x(i, j).add_term(e, GaussianRational(Rational(pick(5) - 2), Rational(pick(3) - 1)));
        }
      }
    }
    if (!x.exactly_zero()) out.add(s, x);
  }
  return out;
}

}  // namespace endoquant
