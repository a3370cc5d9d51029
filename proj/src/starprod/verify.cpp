#include "endoquant/starprod/verify.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <sstream>

#include "endoquant/coefficients/coefficients.hpp"
#include "endoquant/tensors/fock.hpp"

namespace endoquant {

bool Report::all_pass() const {
  return std::all_of(records.begin(), records.end(), [](const CheckRecord& r) { return r.pass; });
}

void Report::sort() {
  std::stable_sort(records.begin(), records.end(),
                   [](const CheckRecord& a, const CheckRecord& b) { return a.name < b.name; });
}

void Report::append(const Report& other) { records.insert(records.end(), other.records.begin(), other.records.end()); }

std::string Report::text() const {
  std::ostringstream os;
  for (const auto& r : records) {
    os << (r.pass ? "PASS " : "FAIL ") << r.name << " [" << r.params << "]";
    if (!r.locator.empty()) os << " " << r.locator;
    os << "\n";
  }
  return os.str();
}

namespace {

constexpr int kMaxInputDegree = 3;
constexpr int kInversionRank = 2;

class Recorder {
 public:
  explicit Recorder(Report& r) : report_(r) {}

  // Runs `body`, which returns the first discrepancy or nullopt; window and
  // accuracy exhaustion count as failures.
  void check(const std::string& name, const std::string& params,
             const std::function<std::optional<std::string>()>& body) {
    CheckRecord rec{name, params, true, {}};
    try {
      if (auto d = body()) {
        rec.pass = false;
        rec.locator = *d;
      }
    } catch (const WindowUnderflow& e) {
      rec.pass = false;
      rec.locator = std::string("window underflow: ") + e.what();
    } catch (const AccuracyUnderflow& e) {
      rec.pass = false;
      rec.locator = std::string("accuracy underflow: ") + e.what();
    }
    report_.records.push_back(std::move(rec));
  }

 private:
  Report& report_;
};

std::string params(const SuiteOptions& o, int sample = -1) {
  std::string s = "seed=" + std::to_string(o.seed) + " order=" + std::to_string(o.order);
  if (sample >= 0) s += " sample=" + std::to_string(sample);
  return s;
}

// Keeps only monomials without antiholomorphic (or holomorphic) variables.
MatrixJet keep_part(const MatrixJet& x, int m, bool holomorphic) {
  MatrixJet out(x.dim(), x.nvars());
  for (int i = 0; i < x.dim(); ++i) {
    for (int j = 0; j < x.dim(); ++j) {
      for (const auto& [e, c] : x(i, j).terms()) {
        bool keep = true;
        for (int v = 0; v < m; ++v) keep = keep && e[static_cast<std::size_t>(holomorphic ? m + v : v)] == 0;
        if (keep) out(i, j).add_term(e, c);
      }
    }
  }
  return out;
}

SectionSeries part_section(const SectionSeries& s, int m, bool holomorphic) {
  SectionSeries out(s.smin(), s.smax());
  for (const auto& [k, x] : s.terms()) {
    MatrixJet p = keep_part(x, m, holomorphic);
    if (!p.exactly_zero()) out.add(k, p);
  }
  return out;
}

// Constant Hermitian positive metric that is not a multiple of the identity for d > 1.
MatrixJet constant_metric(int d, int nvars) {
  MatrixJet u = MatrixJet::scalar(d, Jet::constant(nvars, GaussianRational(d == 1 ? 3 : 2)));
  if (d > 1) {
    u(0, 1) = Jet::constant(nvars, GaussianRational::imaginary_unit());
    u(1, 0) = Jet::constant(nvars, -GaussianRational::imaginary_unit());
  }
  return u;
}

// Constant invertible, non-unitary change of frame.
MatrixJet constant_frame(int d, int nvars) {
  MatrixJet a = MatrixJet::scalar(d, Jet::constant(nvars, GaussianRational(2)));
  a(0, 0) = Jet::constant(nvars, GaussianRational(Rational(1), Rational(1)));
  if (d > 1) a(0, 1) = Jet::constant(nvars, GaussianRational(Rational(0), Rational(1)));
  return a;
}

Chart with_bundle(const Chart& chart, const MatrixJet& u) {
  ChartData data = chart.data();
  data.u = u;
  return Chart::validate(std::move(data));
}

std::optional<std::string> tensor_difference(const IndexedTensor& a, const IndexedTensor& b, int through, int rank,
                                             const Chart& chart) {
  auto d = compare_tensors(a, b, through, [rank](const Exponent& x, const Exponent& y) {
    return total_degree(x) <= rank && total_degree(y) <= rank;
  });
  if (!d) return std::nullopt;
  return describe(*d, chart.m(), chart.nvars());
}

// Entries within the rank region must be known through `through`.
std::optional<std::string> window_short(const IndexedTensor& t, int through, int rank) {
  for (const auto& [k, v] : t.entries) {
    if (total_degree(k.first) > rank || total_degree(k.second) > rank) continue;
    if (t.window(k.first, k.second) < through) return "tensor window ends before nu^" + std::to_string(through);
  }
  if (t.smax < through && t.row_smax.empty() && t.col_smax.empty()) {
    return "tensor window ends before nu^" + std::to_string(through);
  }
  return std::nullopt;
}

IndexedTensor restrict_rows(const IndexedTensor& t, int max_a, int max_b) {
  IndexedTensor out = t;
  std::erase_if(out.entries, [&](const auto& e) {
    return total_degree(e.first.first) > max_a || total_degree(e.first.second) > max_b;
  });
  return out;
}

}  // namespace

void require_headroom(const Chart& chart, int order) {
  bool exact = chart.u().is_exact() && chart.u_inv().is_exact();
  for (int r = -1; r <= chart.max_weight(); ++r) {
    if (const Jet* p = chart.potential(r)) exact = exact && p->is_exact();
  }
  int need = 2 * order + kMaxInputDegree;
  if (!exact && chart.accuracy() < need) {
    throw InvalidInput("accuracy: inexact chart data needs accuracy >= " + std::to_string(need) + " for order " +
                       std::to_string(order));
  }
}

MatrixJet constant_inverse(const MatrixJet& a) {
  int d = a.dim();
  std::vector<std::vector<GaussianRational>> m(static_cast<std::size_t>(d)), inv = m;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      if (a(i, j).max_degree() > 0 || !a(i, j).is_exact()) throw InvalidInput("constant_inverse: matrix is not constant");
      m[i].push_back(a(i, j).value_at_origin());
      inv[i].push_back(GaussianRational(i == j ? 1 : 0));
    }
  }
  for (int c = 0; c < d; ++c) {
    int p = c;
    while (p < d && m[p][c].is_zero()) ++p;
    if (p == d) throw InvalidInput("constant_inverse: matrix is singular");
    std::swap(m[p], m[c]);
    std::swap(inv[p], inv[c]);
    GaussianRational s = GaussianRational(1) / m[c][c];
    for (int j = 0; j < d; ++j) {
      m[c][j] *= s;
      inv[c][j] *= s;
    }
    for (int r = 0; r < d; ++r) {
      if (r == c || m[r][c].is_zero()) continue;
      GaussianRational f = m[r][c];
      for (int j = 0; j < d; ++j) {
        m[r][j] -= f * m[c][j];
        inv[r][j] -= f * inv[c][j];
      }
    }
  }
  return MatrixJet::from_constants(inv, a.nvars());
}

Chart change_trivialization(const Chart& chart, const MatrixJet& a) {
  return with_bundle(chart, a * chart.u() * a.hermitian_conj_swap(chart.m()));
}

Coefficient corrupted_coefficient(const FGraph& target, const Rational& shift) {
  auto table = std::make_shared<CoeffTable>();
  GraphKey key = canonicalize(target).key;
  return [table, key, shift](const FGraph& g) {
    Rational c = table->c(g);
    if (canonicalize(g).key == key) c += shift;
    return c;
  };
}

Report verify_suite(const Chart& chart, const SuiteOptions& o) {
  require_headroom(chart, o.order);
  Report report;
  Recorder rec(report);
  int m = chart.m(), d = chart.d(), nv = chart.nvars(), n = o.order;
  std::mt19937_64 rng(o.seed);
  auto random = [&] { return random_section(rng, d, nv, kMaxInputDegree, 1); };

  StarProduct graphs = graph_star(chart, n, o.coefficient);
  OracleProduct oracle(chart, n);
  using Mul = std::function<SectionSeries(const SectionSeries&, const SectionSeries&)>;
  std::vector<std::pair<std::string, Mul>> routes = {{"graph", graphs}, {"oracle", oracle}};

  for (int i = 0; i < o.samples; ++i) {
    SectionSeries f = random(), g = random(), h = random();
    rec.check("route_equivalence", params(o, i), [&] { return compare_sections(graphs(f, g), oracle(f, g), n); });
    for (const auto& [route, mul] : routes) {
      rec.check("associativity." + route, params(o, i),
                [&] { return compare_sections(mul(mul(f, g), h), mul(f, mul(g, h)), n); });
      rec.check("unitality." + route, params(o, i), [&]() -> std::optional<std::string> {
        SectionSeries one = section(chart.identity());
        if (auto e = compare_sections(mul(one, f), f, n)) return "left: " + *e;
        if (auto e = compare_sections(mul(f, one), f, n)) return "right: " + *e;
        return std::nullopt;
      });
      SectionSeries hol = part_section(g, m, true);
      rec.check("separation.holomorphic." + route, params(o, i),
                [&] { return compare_sections(mul(hol, f), pointwise(hol, f), n); });
      SectionSeries anti = pointwise(pointwise(chart.u(), part_section(h, m, false)), chart.u_inv());
      rec.check("separation.antiholomorphic." + route, params(o, i),
                [&] { return compare_sections(mul(f, anti), pointwise(f, anti), n); });
    }
  }

  // constant u: both routes reduce to the matrix lift of the scalar product
  {
    Chart flat_bundle = with_bundle(chart, constant_metric(d, nv));
    StarProduct scalar = scalar_star(chart, n);
    StarProduct g2 = graph_star(flat_bundle, n, o.coefficient);
    OracleProduct o2(flat_bundle, n);
    for (int i = 0; i < o.samples; ++i) {
      SectionSeries f = random(), g = random();
      SectionSeries expect = scalar(f, g);
      rec.check("constant_u.graph", params(o, i), [&] { return compare_sections(g2(f, g), expect, n); });
      rec.check("constant_u.oracle", params(o, i), [&] { return compare_sections(o2(f, g), expect, n); });
      rec.check("constant_u.psi", params(o, i), [&] { return compare_sections(o2.psi(f), f, n); });
    }
  }

  // constant change of trivialization u -> a u a^dagger, f -> a f a^{-1}
  {
    MatrixJet a = constant_frame(d, nv), ai = constant_inverse(a);
    Chart other = change_trivialization(chart, a);
    StarProduct g2 = graph_star(other, n, o.coefficient);
    OracleProduct o2(other, n);
    std::vector<std::pair<std::string, Mul>> moved = {{"graph", g2}, {"oracle", o2}};
    auto conj = [&](const SectionSeries& s) { return pointwise(pointwise(a, s), ai); };
    for (int i = 0; i < o.samples; ++i) {
      SectionSeries f = random(), g = random();
      for (std::size_t r = 0; r < routes.size(); ++r) {
        rec.check("trivialization_change." + routes[r].first, params(o, i),
                  [&] { return compare_sections(moved[r].second(conj(f), conj(g)), conj(routes[r].second(f, g)), n); });
      }
    }
  }

  // naturality: the nu^r part of C differentiates each argument at most r times
  rec.check("naturality", params(o), [&]() -> std::optional<std::string> {
    for (const auto& [k, v] : graphs.tensor().entries) {
      int reach = std::max(total_degree(k.first), total_degree(k.second));
      for (const auto& [s, x] : v.terms()) {
        if (s < reach && !x.exactly_zero()) {
          return "nu^" + std::to_string(s) + " index (" + format_exponent(k.first, m) + ", " +
                 format_exponent(k.second, m) + ") is nonzero";
        }
      }
    }
    return std::nullopt;
  });

  // inversion: E C = Delta and C E = Delta for ranks <= 2 through nu^order
  {
    int big = n + kInversionRank;
    TensorContext ctx(chart, BiBox{big, big});
    IndexedTensor ct = C_from_graphs(ctx, big, o.coefficient);
    IndexedTensor e = E_from_calabi(chart, BiBox{big, big});
    IndexedTensor delta = delta_tensor(m, kInversionRank, nv);
    rec.check("inversion.left", params(o), [&]() -> std::optional<std::string> {
      IndexedTensor t = contract(restrict_rows(e, kInversionRank, big), ct);
      if (auto w = window_short(t, n, kInversionRank)) return w;
      return tensor_difference(t, delta, n, kInversionRank, chart);
    });
    rec.check("inversion.right", params(o), [&]() -> std::optional<std::string> {
      IndexedTensor t = contract(ct, restrict_rows(e, big, kInversionRank));
      if (auto w = window_short(t, n, kInversionRank)) return w;
      return tensor_difference(t, delta, n, kInversionRank, chart);
    });
    // operator form on the Fock space: E_K^P C_P^I and C_K^P E_P^I
    auto [gl, gu] = g_tensors(chart, big);
    FockOperator em = make_operator(contract(e, gu), big);
    FockOperator cm = make_operator(contract(gl, ct), big);
    // rows of rank <= r, with the row windows folded into one uniform window
    auto rows = [](const FockOperator& op, int r) {
      FockOperator out = op;
      IndexedTensor& t = out.tensor;
      t = restrict_rows(op.tensor, r, 1 << 20);
      for (const auto& [k, w] : t.row_smax) {
        if (total_degree(k) <= r) t.smax = std::min(t.smax, w);
      }
      t.row_smax.clear();
      for (auto& [k, v] : t.entries) v = v.truncated(t.smax);
      t.prune();
      out.max_rank = r;
      return out;
    };
    rec.check("inversion.operator.left", params(o), [&]() -> std::optional<std::string> {
      IndexedTensor t = fock_compose(rows(em, kInversionRank), cm).tensor;
      if (auto w = window_short(t, n, kInversionRank)) return w;
      return tensor_difference(t, delta, n, kInversionRank, chart);
    });
    rec.check("inversion.operator.right", params(o), [&]() -> std::optional<std::string> {
      IndexedTensor t = fock_compose(rows(cm, kInversionRank), em).tensor;
      if (auto w = window_short(t, n, kInversionRank)) return w;
      return tensor_difference(t, delta, n, kInversionRank, chart);
    });
  }

  report.sort();
  return report;
}

Report verify_left_mult(const Chart& chart, const SuiteOptions& o) {
  require_headroom(chart, o.order);
  Report report;
  Recorder rec(report);
  int m = chart.m(), d = chart.d(), nv = chart.nvars(), n = o.order;
  std::mt19937_64 rng(o.seed ^ 0x5bd1e995u);

  StarProduct graphs = graph_star(chart, n, o.coefficient);
  OracleProduct oracle(chart, n);
  StarProduct scalar = scalar_star(chart, n);
  using Mul = std::function<SectionSeries(const SectionSeries&, const SectionSeries&)>;
  std::vector<std::pair<std::string, Mul>> routes = {{"graph", graphs}, {"oracle", oracle}};

  // d Phi / d z^k (or zbar^k) as a nu-formal scalar section of rank `dim`
  auto dphi = [&](int var, int dim) {
    SectionSeries s(-1, SectionSeries::kOpen);
    for (int r = -1; r <= chart.max_weight(); ++r) {
      const Jet* p = chart.potential(r);
      if (!p) continue;
      Jet j = p->derive(var);
      if (!j.known_zero()) s.add(r, MatrixJet::scalar(dim, j));
    }
    return s;
  };
  auto derived = [](const SectionSeries& g, int var) {
    return g.map([var](const MatrixJet& x) { return x.derive(var); });
  };
  // the product lowers the window by one: dPhi starts at nu^-1
  int through = n - 1;

  for (int i = 0; i < o.samples; ++i) {
    SectionSeries g = random_section(rng, d, nv, kMaxInputDegree, 1);
    SectionSeries f1 = random_section(rng, 1, nv, kMaxInputDegree, 1);
    for (int k = 0; k < m; ++k) {
      std::string p = params(o, i) + " k=" + std::to_string(k + 1);
      SectionSeries phi_k = dphi(k, d);
      SectionSeries left = phi_k + section(chart.christoffel(k));
      SectionSeries expect = derived(g, k) + pointwise(phi_k, g) + pointwise(g, chart.christoffel(k));
      for (const auto& [route, mul] : routes) {
        rec.check("left_multiplication." + route, p, [&] { return compare_sections(mul(left, g), expect, through); });
      }
      SectionSeries s_k = dphi(k, 1), s_l = dphi(m + k, 1);
      rec.check("scalar.left_potential", p, [&] {
        return compare_sections(scalar(s_k, f1), pointwise(s_k, f1) + derived(f1, k), through);
      });
      rec.check("scalar.right_potential", p, [&] {
        return compare_sections(scalar(f1, s_l), pointwise(s_l, f1) + derived(f1, m + k), through);
      });
    }
  }
  report.sort();
  return report;
}

Report verify_twisted(const Chart& chart, const SuiteOptions& o) {
  if (chart.d() != 1) throw InvalidInput("d: the twist identity needs a line bundle (d = 1)");
  require_headroom(chart, o.order);
  Report report;
  Recorder rec(report);
  int nv = chart.nvars(), n = o.order;
  std::mt19937_64 rng(o.seed ^ 0x9e3779b9u);

  ChartData data = trivialized(chart).data();
  Jet log_u = jet_log(chart.u()(0, 0), chart.accuracy());
  auto it = data.potentials.find(0);
  if (it == data.potentials.end()) {
    data.potentials[0] = log_u;
  } else {
    it->second += log_u;
  }
  if (data.R < 0) data.R = 0;
  StarProduct twisted = scalar_star(Chart::validate(std::move(data)), n);
  StarProduct graphs = graph_star(chart, n, o.coefficient);
  OracleProduct oracle(chart, n);
  for (int i = 0; i < o.samples; ++i) {
    SectionSeries f = random_section(rng, 1, nv, kMaxInputDegree, 1);
    SectionSeries g = random_section(rng, 1, nv, kMaxInputDegree, 1);
    SectionSeries expect = twisted(f, g);
    rec.check("twisted.graph", params(o, i), [&] { return compare_sections(graphs(f, g), expect, n); });
    rec.check("twisted.oracle", params(o, i), [&] { return compare_sections(oracle(f, g), expect, n); });
  }
  report.sort();
  return report;
}

Report verify_all(const Chart& chart, const SuiteOptions& o) {
  Report r = verify_suite(chart, o);
  r.append(verify_left_mult(chart, o));
  if (chart.d() == 1) r.append(verify_twisted(chart, o));
  r.sort();
  return r;
}

}  // namespace endoquant
