// Acceptance run: one PASS/FAIL line per criterion; exit status 1 if any fails.
#include <chrono>
#include <functional>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>

#include "endoquant/algebra/errors.hpp"
#include "endoquant/cli/config.hpp"
#include "endoquant/coefficients/coefficients.hpp"
#include "endoquant/geometry/calabi.hpp"
#include "endoquant/graphs/partition.hpp"
#include "endoquant/starprod/verify.hpp"
#include "endoquant/tensors/fock.hpp"
#include "endoquant/tensors/graph_tensor.hpp"

using namespace endoquant;
using GR = GaussianRational;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects failures; the first few are kept as the detail line.
class Tally {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) notes_ += (notes_.empty() ? "" : "; ") + what;
  }
  void expect_none(const std::optional<std::string>& diff, const std::string& what) {
    expect(!diff, diff ? what + ": " + *diff : what);
  }
  Outcome outcome(const std::string& summary) const {
    if (failures_ == 0) return {true, summary + " (" + std::to_string(checks_) + " checks)"};
    return {false, std::to_string(failures_) + "/" + std::to_string(checks_) + " failed: " + notes_};
  }

 private:
  int checks_ = 0;
  int failures_ = 0;
  std::string notes_;
};

// ---- charts ---------------------------------------------------------------

Jet poly(int nvars, const std::vector<std::pair<GR, std::vector<int>>>& t) { return Jet::from_terms(nvars, t); }

Config fixture(const std::string& name) { return load_config(std::string(ENDOQUANT_FIXTURES) + "/" + name); }

Chart flat_chart(int m, int d = 1) {
  ChartData c;
  c.m = m;
  c.d = d;
  c.R = 3;
  Jet phi(2 * m);
  for (int k = 0; k < m; ++k) {
    Exponent e{};
    e[static_cast<std::size_t>(k)] = 1;
    e[static_cast<std::size_t>(m + k)] = 1;
    phi.add_term(e, GR(1));
  }
  c.potentials[-1] = phi;
  return Chart::validate(c);
}

// Non-flat line with Phi_0, Phi_1 and the rank-2 bundle of the d=2 fixture.
Chart curved_chart(int R = 2) {
  ChartData c = fixture("bundle2.json").chart;
  c.R = R;
  c.accuracy = 9;
  c.potentials[-1] = poly(2, {{GR(1), {1, 1}}, {GR(1), {2, 2}}, {GR(Rational(1, 2)), {2, 1}}, {GR(Rational(1, 2)), {1, 2}}});
  c.potentials[0] = poly(2, {{GR(1), {1, 1}}, {GR(Rational(0), Rational(1)), {2, 1}}, {GR(Rational(0), Rational(-1)), {1, 2}}});
  c.potentials[1] = poly(2, {{GR(2), {1, 2}}, {GR(2), {2, 1}}, {GR(1), {2, 2}}});
  if (R >= 3) c.potentials[3] = poly(2, {{GR(1), {1, 2}}, {GR(1), {2, 1}}});
  return Chart::validate(c);
}

Chart m2_bundle_chart() {
  ChartData c = flat_chart(2, 2).data();
  c.accuracy = 8;
  MatrixJet u(2, 4);
  u(0, 0) = poly(4, {{GR(1), {0, 0, 0, 0}}});
  u(0, 1) = poly(4, {{GR(1), {1, 0, 0, 0}}});
  u(1, 0) = poly(4, {{GR(1), {0, 0, 1, 0}}});
  u(1, 1) = poly(4, {{GR(1), {0, 0, 0, 0}}, {GR(1), {1, 0, 1, 0}}, {GR(1), {0, 1, 0, 1}}});
  c.u = u;
  return Chart::validate(c);
}

// ---- independent oracles ----------------------------------------------------

Rational fact(int n) {
  Rational f(1);
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

Rational multinomial(const Exponent& e, int m) {
  int n = 0;
  Rational denom(1);
  for (int k = 0; k < m; ++k) {
    n += e[static_cast<std::size_t>(k)];
    denom *= fact(e[static_cast<std::size_t>(k)]);
  }
  return fact(n) / denom;
}

std::vector<Exponent> multi_indices(int m, int r) {
  std::vector<Exponent> out;
  std::function<void(int, int, Exponent&)> rec = [&](int k, int left, Exponent& e) {
    if (k == m - 1) {
      e[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(left);
      out.push_back(e);
      return;
    }
    for (int a = left; a >= 0; --a) {
      e[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(a);
      rec(k + 1, left - a, e);
    }
  };
  Exponent e{};
  rec(0, r, e);
  return out;
}

// Flat anti-Wick product sum_r nu^r / r! sum over index sequences of
// dbar_{l_1..l_r} f d_{l_1..l_r} g, written with multi-indices: C^{Lbar L} =
// nu^r / (r! multinomial(L)) in the sequence-sum contraction.
IndexedTensor anti_wick(int m, int max_order) {
  IndexedTensor t(m, 0, max_order);
  for (int r = 0; r <= max_order; ++r) {
    for (const auto& l : multi_indices(m, r)) {
      t.add(l, l, r, MatrixJet::scalar(1, Jet::constant(2 * m, GR(Rational(1) / (fact(r) * multinomial(l, m))))));
    }
  }
  return t;
}

// Delta_K^I in the sequence-sum normalization: sum_P count(P) Delta_K^P A_P^I = A_K^I.
IndexedTensor delta(int m, int max_rank) {
  IndexedTensor t(m, 0, TensorSeries::kOpen);
  for (int r = 0; r <= max_rank; ++r) {
    for (const auto& k : multi_indices(m, r)) {
      t.add(k, k, 0, MatrixJet::scalar(1, Jet::constant(2 * m, GR(Rational(1) / multinomial(k, m)))));
    }
  }
  return t;
}

auto ranks_upto(int r) {
  return [r](const Exponent& a, const Exponent& b) { return total_degree(a) <= r && total_degree(b) <= r; };
}

std::optional<std::string> tensor_diff(const IndexedTensor& a, const IndexedTensor& b, int through, int rank,
                                       const Chart& c) {
  // windows must cover the compared orders
  for (const IndexedTensor* t : {&a, &b}) {
    for (const auto& [k, v] : t->entries) {
      if (total_degree(k.first) <= rank && total_degree(k.second) <= rank && t->window(k.first, k.second) < through) {
        return std::string("window ends before nu^") + std::to_string(through);
      }
    }
  }
  auto d = compare_tensors(a, b, through, ranks_upto(rank));
  if (!d) return std::nullopt;
  return describe(*d, c.m(), c.nvars());
}

IndexedTensor rows_upto(const IndexedTensor& t, int max_a, int max_b) {
  IndexedTensor out = t;
  std::erase_if(out.entries, [&](const auto& e) {
    return total_degree(e.first.first) > max_a || total_degree(e.first.second) > max_b;
  });
  return out;
}

MatrixJet zero_matrix(const Chart& c) { return MatrixJet(c.d(), c.nvars()); }

SectionSeries only_part(const SectionSeries& s, int m, bool holomorphic) {
  SectionSeries out(s.smin(), s.smax());
  for (const auto& [k, x] : s.terms()) {
    MatrixJet p(x.dim(), x.nvars());
    for (int i = 0; i < x.dim(); ++i) {
      for (int j = 0; j < x.dim(); ++j) {
        for (const auto& [e, c] : x(i, j).terms()) {
          bool keep = true;
          for (int v = 0; v < m; ++v) keep = keep && e[static_cast<std::size_t>(holomorphic ? m + v : v)] == 0;
          if (keep) p(i, j).add_term(e, c);
        }
      }
    }
    if (!p.exactly_zero()) out.add(k, p);
  }
  return out;
}

// ---- criteria -----------------------------------------------------------------

Outcome anti_wick_reproduction() {
  Tally t;
  for (int m : {1, 2}) {
    Chart flat = flat_chart(m);
    TensorContext ctx(flat, BiBox{3, 3});
    t.expect_none(tensor_diff(C_from_graphs(ctx, 3), anti_wick(m, 3), 3, 3, flat), "C m=" + std::to_string(m));
  }
  Chart flat = config_chart(fixture("flat.json"));
  MatrixJet z = MatrixJet::scalar(1, Jet::variable(2, 0)), zbar = MatrixJet::scalar(1, Jet::variable(2, 1));
  SectionSeries expect(0, 3);
  expect.add(0, zbar * z);
  expect.add(1, MatrixJet::identity(1, 2));
  t.expect_none(compare_sections(graph_star(flat, 3)(zbar, z), expect, 3), "zbar * z by graphs");
  t.expect_none(compare_sections(OracleProduct(flat, 3)(section(zbar), section(z)), expect, 3), "zbar * z by oracle");
  SectionSeries pointwise_zzbar(0, 3);
  pointwise_zzbar.add(0, z * zbar);
  t.expect_none(compare_sections(graph_star(flat, 3)(z, zbar), pointwise_zzbar, 3), "z * zbar by graphs");
  t.expect_none(compare_sections(OracleProduct(flat, 3)(section(z), section(zbar)), pointwise_zzbar, 3),
                "z * zbar by oracle");
  return t.outcome("C through nu^3 for m=1,2; zbar*z = zbar z + nu; z*zbar = z zbar");
}

Outcome route_equivalence() {
  Tally t;
  Config cfg = fixture("bundle2.json");
  Chart c = config_chart(cfg);
  StarProduct graphs = graph_star(c, 2);
  OracleProduct oracle(c, 2);
  std::mt19937_64 rng(cfg.seed);
  for (int i = 0; i < 20; ++i) {
    SectionSeries f = random_section(rng, 2, 2, 3, 1), g = random_section(rng, 2, 2, 3, 1);
    t.expect_none(compare_sections(graphs(f, g), oracle(f, g), 2), "pair " + std::to_string(i));
  }
  return t.outcome("20 seeded pairs through nu^2, seed " + std::to_string(cfg.seed));
}

Outcome associativity_unitality() {
  Tally t;
  Config cfg = fixture("bundle2.json");
  Chart c = config_chart(cfg);
  StarProduct graphs = graph_star(c, 2);
  OracleProduct oracle(c, 2);
  using Mul = std::function<SectionSeries(const SectionSeries&, const SectionSeries&)>;
  std::mt19937_64 rng(cfg.seed + 1);
  SectionSeries one = section(c.identity());
  for (const auto& [name, mul] : std::vector<std::pair<std::string, Mul>>{{"graph", graphs}, {"oracle", oracle}}) {
    for (int i = 0; i < 6; ++i) {
      SectionSeries f = random_section(rng, 2, 2, 3, 1), g = random_section(rng, 2, 2, 3, 1),
                    h = random_section(rng, 2, 2, 3, 1);
      t.expect_none(compare_sections(mul(mul(f, g), h), mul(f, mul(g, h)), 2), name + " associativity");
      t.expect_none(compare_sections(mul(one, f), f, 2), name + " left unit");
      t.expect_none(compare_sections(mul(f, one), f, 2), name + " right unit");
    }
  }
  return t.outcome("both routes, 6 triples each, through nu^2");
}

Outcome separation_of_variables() {
  Tally t;
  for (const Chart& c : {config_chart(fixture("bundle2.json")), curved_chart()}) {
    StarProduct graphs = graph_star(c, 2);
    OracleProduct oracle(c, 2);
    using Mul = std::function<SectionSeries(const SectionSeries&, const SectionSeries&)>;
    std::mt19937_64 rng(11);
    for (const auto& [name, mul] : std::vector<std::pair<std::string, Mul>>{{"graph", graphs}, {"oracle", oracle}}) {
      for (int i = 0; i < 5; ++i) {
        SectionSeries f = random_section(rng, c.d(), 2, 3, 1), g = random_section(rng, c.d(), 2, 3, 1);
        SectionSeries hol = only_part(random_section(rng, c.d(), 2, 3, 1), 1, true);
        // antiholomorphic section: u g u~ with g free of z
        SectionSeries anti = pointwise(pointwise(c.u(), only_part(g, 1, false)), c.u_inv());
        t.expect_none(compare_sections(mul(hol, g), pointwise(hol, g), 2), name + " holomorphic left");
        t.expect_none(compare_sections(mul(f, anti), pointwise(f, anti), 2), name + " antiholomorphic right");
      }
    }
  }
  return t.outcome("d=2 fixture and curved chart, both routes");
}

Outcome inversion() {
  Tally t;
  for (const Chart& c : {config_chart(fixture("flat.json")), config_chart(fixture("bundle2.json"))}) {
    TensorContext ctx(c, BiBox{4, 4});
    IndexedTensor ct = C_from_graphs(ctx, 4);
    IndexedTensor e = E_from_calabi(c, BiBox{4, 4});
    IndexedTensor d = delta(c.m(), 2);
    t.expect_none(tensor_diff(contract(rows_upto(e, 2, 4), ct), d, 2, 2, c), "E C, d=" + std::to_string(c.d()));
    t.expect_none(tensor_diff(contract(ct, rows_upto(e, 4, 2)), d, 2, 2, c), "C E, d=" + std::to_string(c.d()));
  }
  return t.outcome("ranks <= 2, nu^0..nu^2, flat and d=2 fixtures");
}

Outcome calabi_cross_routes() {
  Tally t;
  for (const Chart& c : {curved_chart(3), config_chart(fixture("bundle2.json")), flat_chart(2)}) {
    TensorContext ctx(c, BiBox{3, 3});
    IndexedTensor by_graphs = E_from_graphs(ctx, 3, 3), by_calabi = E_from_calabi(c, BiBox{3, 3});
    auto d = compare_tensors(by_graphs, by_calabi, 8, ranks_upto(3));
    t.expect(!d, d ? "E routes: " + describe(*d, c.m(), c.nvars()) : "");
  }
  for (const Chart& c : {config_chart(fixture("bundle2.json")), config_chart(fixture("line.json")), m2_bundle_chart()}) {
    auto bch = bch_H(c, 3);
    auto h = calabi_H(c, BiBox{4, 4, 4});
    std::set<BiKey> keys;
    for (const auto& [k, v] : bch.terms()) keys.insert(k);
    for (const auto& [k, v] : h.terms()) keys.insert(k);
    for (const auto& k : keys) {
      MatrixJet a = bch.find(k) ? *bch.find(k) : zero_matrix(c);
      MatrixJet b = h.find(k) ? *h.find(k) : zero_matrix(c);
      t.expect(!first_difference(a, b), "bch_H vs log Q at bidegree " + std::to_string(k.p()) + "," + std::to_string(k.q()));
    }
  }
  // line bundle: H_{K Lbar} = d_K dbar_L log u
  Chart line = config_chart(fixture("line.json"));
  auto h = calabi_H(line, BiBox{3, 3});
  Jet logu = jet_log(line.u()(0, 0), line.accuracy());
  for (int p = 1; p <= 3; ++p) {
    for (int q = 1; q <= 3; ++q) {
      BiKey key;
      key.hol[0] = static_cast<std::uint8_t>(p);
      key.antihol[0] = static_cast<std::uint8_t>(q);
      MatrixJet got = tensor_component(h, key, zero_matrix(line));
      Jet want = derive_multi(logu, Exponent{static_cast<std::uint8_t>(p), static_cast<std::uint8_t>(q)});
      t.expect(got.accuracy() >= 0 && !first_difference(got(0, 0), want), "line H " + std::to_string(p) + "," + std::to_string(q));
    }
  }
  // H_{k lbar} = -i R_{k lbar} at the base point
  for (const Chart& c : {config_chart(fixture("bundle2.json")), curved_chart(), m2_bundle_chart()}) {
    auto hh = calabi_H(c, BiBox{2, 2});
    for (int k = 0; k < c.m(); ++k) {
      for (int l = 0; l < c.m(); ++l) {
        BiKey kl;
        kl.hol[static_cast<std::size_t>(k)] = 1;
        kl.antihol[static_cast<std::size_t>(l)] = 1;
        MatrixJet hkl = tensor_component(hh, kl, zero_matrix(c));
        MatrixJet rkl = c.curvature(k, l).scaled(-GR::imaginary_unit());
        t.expect(hkl.value_at_origin() == rkl.value_at_origin(), "H = -iR");
      }
    }
  }
  return t.outcome("E routes (3,3), BCH vs log Q degree <= 4, line-bundle H, curvature");
}

Outcome coefficient_identities() {
  Tally t;
  CoeffTable table;
  int special_free = 0, special_only = 0;
  for (const auto& g : enumerate(3, Family::M)) {
    std::string name = describe(g.graph);
    Rational c = table.c(g.graph);
    t.expect(c == c_closed(g.graph), "closed form: " + name);
    if (g.graph.specials == 0) {
      ++special_free;
      t.expect(c == Rational(g.graph.R() % 2 ? -1 : 1), "(-1)^R: " + name);
    }
    if (g.graph.R() == 0 && g.graph.specials > 0 && g.graph.in_family_n()) {
      ++special_only;
      int k = g.graph.specials;
      t.expect(c == Rational(k % 2 ? -1 : 1) / fact(k), "(-1)^k/k!: " + name);
    }
    t.expect(dgamma_sum(g.graph, table) == d_weight(g.graph), "defining relation: " + name);
  }
  t.expect(special_free > 5 && special_only >= 3, "class coverage");
  return t.outcome("all classes of degree <= 3");
}

Outcome combinatorial_duality() {
  Tally t;
  auto classes = enumerate(2, Family::M);
  int pairs = 0;
  for (const auto& a : classes) {
    for (const auto& b : classes) {
      int n = a.graph.p();
      if (n != b.graph.q()) continue;
      ++pairs;
      std::map<GraphKey, std::pair<GraphClass, std::int64_t>> t_count;
      std::vector<int> tau(static_cast<std::size_t>(n));
      std::iota(tau.begin(), tau.end(), 0);
      do {
        GraphClass c = canonicalize(concatenate(a.graph, b.graph, tau));
        auto [it, fresh] = t_count.try_emplace(c.key, c, 0);
        it->second.second += 1;
      } while (std::next_permutation(tau.begin(), tau.end()));
      for (const auto& [key, entry] : t_count) {
        const auto& [gamma, T] = entry;
        std::int64_t P = 0;
        for (const auto& pi : admissible_partitions(gamma.graph)) {
          Split sp = split(gamma.graph, pi);
          if (canonicalize(sp.first).key == a.key && canonicalize(sp.second).key == b.key) ++P;
        }
        t.expect(T * gamma.aut == P * a.aut * b.aut, "partition count " + describe(a.graph) + " # " + describe(b.graph));
      }
    }
  }
  // Gamma_A Gamma_B = 1/n! sum_tau Gamma_{A #_tau B} on a curved chart with a bundle
  Chart c = curved_chart();
  TensorContext ctx(c, BiBox{3, 3});
  int composed = 0;
  for (const auto& a : enumerate(2, Family::M, ctx.filter())) {
    for (const auto& b : enumerate(2, Family::M, ctx.filter())) {
      int n = a.graph.p();
      if (n != b.graph.q()) continue;
      IndexedTensor ta(1, 0, TensorSeries::kOpen), tb = ta, sum = ta;
      add_graph_tensor(ta, eval_graph(a.graph, GraphForm::Mixed, ctx), GR(1));
      add_graph_tensor(tb, eval_graph(b.graph, GraphForm::Mixed, ctx), GR(1));
      std::vector<int> tau(static_cast<std::size_t>(n));
      std::iota(tau.begin(), tau.end(), 0);
      GR w(Rational(1) / fact(n));
      do {
        add_graph_tensor(sum, eval_graph(concatenate(a.graph, b.graph, tau), GraphForm::Mixed, ctx), w);
      } while (std::next_permutation(tau.begin(), tau.end()));
      sum.prune();
      auto prod = fock_compose(make_operator(ta, 4), make_operator(tb, 4));
      auto d = compare_tensors(prod.tensor, sum, 8, [](const Exponent&, const Exponent&) { return true; });
      t.expect(!d, "composition " + describe(a.graph) + " # " + describe(b.graph));
      ++composed;
    }
  }
  t.expect(pairs > 10 && composed > 10, "pair coverage");

  // weighted sums: A B = sum_Gamma 1/|Aut| sum_pi a(Gamma_1^pi) b(Gamma_2^pi) / n_pi! Gamma
  std::mt19937_64 rng(23);
  std::map<GraphKey, GR> a_w, b_w;
  std::map<GraphKey, GraphClass> support;
  IndexedTensor ta(1, 0, TensorSeries::kOpen), tb = ta, rhs = ta;
  for (const auto& cls : enumerate(2, Family::M, ctx.filter())) {
    support.emplace(cls.key, cls);
    a_w[cls.key] = GR(static_cast<long>(rng() % 5) - 2);
    b_w[cls.key] = GR(static_cast<long>(rng() % 5) - 2);
    GR inv_aut(Rational(1) / Rational(cls.aut));
    auto value = eval_graph(cls.graph, GraphForm::Mixed, ctx);
    add_graph_tensor(ta, value, a_w[cls.key] * inv_aut);
    add_graph_tensor(tb, value, b_w[cls.key] * inv_aut);
  }
  std::map<GraphKey, GraphClass> gammas;
  for (const auto& [ka, a] : support) {
    for (const auto& [kb, b] : support) {
      int n = a.graph.p();
      if (n != b.graph.q()) continue;
      std::vector<int> tau(static_cast<std::size_t>(n));
      std::iota(tau.begin(), tau.end(), 0);
      do {
        GraphClass g = canonicalize(concatenate(a.graph, b.graph, tau));
        gammas.emplace(g.key, g);
      } while (std::next_permutation(tau.begin(), tau.end()));
    }
  }
  for (const auto& [key, gamma] : gammas) {
    GR weight;
    for (const auto& pi : admissible_partitions(gamma.graph)) {
      Split sp = split(gamma.graph, pi);
      auto ia = a_w.find(canonicalize(sp.first).key), ib = b_w.find(canonicalize(sp.second).key);
      if (ia == a_w.end() || ib == b_w.end()) continue;
      weight += ia->second * ib->second * GR(Rational(1) / fact(sp.first.p()));
    }
    add_graph_tensor(rhs, eval_graph(gamma.graph, GraphForm::Mixed, ctx), weight * GR(Rational(1) / Rational(gamma.aut)));
  }
  rhs.prune();
  auto lhs = fock_compose(make_operator(ta, 4), make_operator(tb, 4));
  auto d = compare_tensors(lhs.tensor, rhs, 8, [](const Exponent&, const Exponent&) { return true; });
  t.expect(!d, d ? "weighted composition: " + describe(*d, c.m(), c.nvars()) : "");
  return t.outcome(std::to_string(pairs) + " class pairs, " + std::to_string(composed) + " tensor compositions, " +
                   "weighted composition over " + std::to_string(gammas.size()) + " concatenation classes");
}

Outcome lambda_and_worked_example() {
  Tally t;
  for (const auto& cls : enumerate(3, Family::N)) {
    t.expect(cls.aut == brute_force_aut(cls.graph), "canonical |Aut|: " + describe(cls.graph));
  }
  for (int D = 0; D <= 3; ++D) {
    NKeyBounds b;
    b.max_degree = D;
    for (int w = -1; w <= D - 2; ++w) b.weights.push_back(w);
    for (const auto& k : n_keys(b)) {
      FGraph g = realize(k);
      t.expect(lambda_order(k) == brute_force_aut(g), "lambda: " + describe(g));
    }
  }
  // one regular vertex of weight 3, one edge in, two edges out
  Chart c = curved_chart(3);
  TensorContext ctx(c, BiBox{3, 3});
  FGraph g({3}, 0);
  g.at(0, 1) = 1;
  g.at(1, 2) = 2;
  const Jet& ginv = c.inverse_metric(0, 0);
  Jet d3 = derive_multi(*c.potential(3), Exponent{1, 2});
  Exponent one{1}, two{2};
  auto up = eval_graph(g, GraphForm::Upper, ctx);
  auto mixed = eval_graph(g, GraphForm::Mixed, ctx);
  auto lower = eval_graph(g, GraphForm::Lower, ctx);
  t.expect(up.order == 6 && mixed.order == 5 && lower.order == 3, "orders 6, 5, 3");
  t.expect(up.values.size() == 1 && up.values.count({one, two}) &&
               !first_difference(up.values.at({one, two})(0, 0), ginv * d3 * ginv * ginv),
           "upper form");
  t.expect(mixed.values.count({one, two}) && !first_difference(mixed.values.at({one, two})(0, 0), d3 * ginv * ginv),
           "mixed form");
  t.expect(lower.values.count({one, two}) && lower.values.at({one, two})(0, 0) == d3, "lower form");
  return t.outcome("N classes of degree <= 3; nu^6, nu^5, nu^3 forms");
}

Outcome naturality_constu_twist() {
  Tally t;
  Chart c = curved_chart(3);
  TensorContext ctx(c, BiBox{3, 3});
  for (const auto& [k, v] : C_from_graphs(ctx, 3).entries) {
    for (const auto& [s, x] : v.terms()) {
      t.expect(x.exactly_zero() || (total_degree(k.first) <= s && total_degree(k.second) <= s), "naturality");
    }
  }
  // constant metric: *_u is the matrix lift of the scalar product
  ChartData data = config_chart(fixture("bundle2.json")).data();
  data.u = MatrixJet::from_constants({{GR(2), GR(Rational(0), Rational(1))}, {GR(Rational(0), Rational(-1)), GR(1)}}, 2);
  Chart constant = Chart::validate(data);
  StarProduct lift = scalar_star(constant, 2), graphs = graph_star(constant, 2);
  OracleProduct oracle(constant, 2);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 6; ++i) {
    SectionSeries f = random_section(rng, 2, 2, 3, 1), g = random_section(rng, 2, 2, 3, 1);
    SectionSeries want = lift(f, g);
    t.expect_none(compare_sections(graphs(f, g), want, 2), "constant u, graphs");
    t.expect_none(compare_sections(oracle(f, g), want, 2), "constant u, oracle");
    t.expect_none(compare_sections(oracle.psi(f), f, 2), "constant u, psi = id");
  }
  // line bundle twist
  SuiteOptions o;
  o.samples = 6;
  Report r = verify_twisted(config_chart(fixture("line.json")), o);
  for (const auto& rec : r.records) t.expect(rec.pass, rec.name + " " + rec.locator);
  return t.outcome("naturality through nu^3, constant u, line-bundle twist");
}

// Criteria 2, 3 and 5 through nu^order with the given coefficients; true if any check fails.
bool detects(const Chart& c, const Coefficient& coefficient, int order, bool inversion) {
  StarProduct graphs = graph_star(c, order, coefficient);
  OracleProduct oracle(c, order);
  std::mt19937_64 rng(17);
  for (int i = 0; i < 4; ++i) {
    SectionSeries f = random_section(rng, c.d(), c.nvars(), 3, 1), g = random_section(rng, c.d(), c.nvars(), 3, 1),
                  h = random_section(rng, c.d(), c.nvars(), 3, 1);
    if (compare_sections(graphs(f, g), oracle(f, g), order)) return true;
    if (compare_sections(graphs(graphs(f, g), h), graphs(f, graphs(g, h)), order)) return true;
  }
  if (!inversion) return false;
  TensorContext ctx(c, BiBox{order + 2, order + 2});
  IndexedTensor ct = C_from_graphs(ctx, order + 2, coefficient);
  IndexedTensor e = E_from_calabi(c, BiBox{order + 2, order + 2});
  // rank-r rows of E C are known through nu^(order + 2 - r), so ranks stay <= 2 as in criterion 5
  return tensor_diff(contract(rows_upto(e, 2, order + 2), ct), delta(c.m(), 2), order, 2, c).has_value();
}

Chart with_order(ChartData data, int R) {
  data.R = R;
  return Chart::validate(data);
}

// Exact chart on the d=2 fixture bundle whose potentials have every third derivative
// nonzero, so that each degree-3 class has a nonvanishing tensor.
Chart rich_chart() {
  ChartData c = fixture("bundle2.json").chart;
  c.R = 3;
  c.potentials[-1] = poly(2, {{GR(1), {1, 1}}, {GR(1), {2, 2}}, {GR(1), {3, 1}}, {GR(1), {1, 3}}, {GR(Rational(1, 2)), {2, 1}},
                              {GR(Rational(1, 2)), {1, 2}}, {GR(1), {3, 3}}, {GR(1), {3, 2}}, {GR(1), {2, 3}}});
  c.potentials[0] = poly(2, {{GR(1), {1, 1}}, {GR(Rational(0), Rational(1)), {2, 1}}, {GR(Rational(0), Rational(-1)), {1, 2}},
                             {GR(1), {3, 1}}, {GR(1), {1, 3}}, {GR(1), {2, 2}}});
  c.potentials[1] = poly(2, {{GR(2), {1, 2}}, {GR(2), {2, 1}}, {GR(1), {2, 2}}, {GR(1), {1, 1}}});
  c.potentials[2] = poly(2, {{GR(1), {1, 1}}, {GR(1), {2, 1}}, {GR(1), {1, 2}}});
  return Chart::validate(c);
}

// Classes of degree <= 2 are probed with criteria 2, 3 and 5 as stated (through nu^2).
// A class of degree 3 first contributes at nu^3, where criteria 2 and 3 are rerun; the
// inversion check is left out there because C through nu^5 on a curved chart is too slow.
Outcome negative_control() {
  Tally t;
  ChartData bundle = fixture("bundle2.json").chart;
  std::map<int, std::vector<Chart>> charts = {
      {2, {with_order(bundle, 2), curved_chart(2)}},
      {3, {with_order(bundle, 3), rich_chart()}},
  };
  for (const auto& [order, cs] : charts) {
    for (const Chart& c : cs) t.expect(!detects(c, {}, order, order == 2), "uncorrupted coefficients flagged");
  }
  std::map<int, int> total, on_fixture;
  for (const auto& cls : enumerate(3, Family::M)) {
    int order = std::max(cls.degree, 2);
    Coefficient bad = corrupted_coefficient(cls.graph, Rational(1));
    ++total[order];
    if (detects(charts[order][0], bad, order, order == 2)) {
      ++on_fixture[order];
      continue;
    }
    t.expect(detects(charts[order][1], bad, order, order == 2), "undetected corruption of " + describe(cls.graph));
  }
  return t.outcome(std::to_string(total[2]) + " corruptions of degree <= 2 caught through nu^2 (" +
                   std::to_string(on_fixture[2]) + " on the d=2 fixture, the rest on a curved chart); " +
                   std::to_string(total[3]) + " of degree 3 caught by criteria 2/3 through nu^3 (" +
                   std::to_string(on_fixture[3]) + " on the fixture, the rest on a richer curved chart)");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"anti-Wick reproduction", anti_wick_reproduction},
      {"route equivalence", route_equivalence},
      {"associativity and unitality", associativity_unitality},
      {"separation of variables", separation_of_variables},
      {"inversion", inversion},
      {"Calabi cross-routes", calabi_cross_routes},
      {"coefficient identities", coefficient_identities},
      {"combinatorial duality", combinatorial_duality},
      {"automorphism formula and worked example", lambda_and_worked_example},
      {"naturality, constant u, line-bundle twist", naturality_constu_twist},
      {"negative control", negative_control},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream line;
    line.precision(2);
    line << std::fixed << "criterion " << (i + 1) << ": " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first
         << " -- " << o.detail << " [" << secs << "s]";
    std::cout << line.str() << std::endl;
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
