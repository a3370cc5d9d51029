#include "endoquant/cli/commands.hpp"

#include <sstream>

#include "endoquant/coefficients/coefficients.hpp"
#include "endoquant/graphs/graph_io.hpp"
#include "endoquant/starprod/verify.hpp"
#include "endoquant/tensors/fock.hpp"
#include "endoquant/tensors/graph_tensor.hpp"

namespace endoquant {

using nlohmann::json;

namespace {

json counts(const Exponent& e, int m) {
  json out = json::array();
  for (int k = 0; k < m; ++k) out.push_back(e[static_cast<std::size_t>(k)]);
  return out;
}

json tensor_table(const IndexedTensor& t) {
  std::map<int, json> by_order;
  for (const auto& [k, v] : t.entries) {
    for (const auto& [s, x] : v.terms()) {
      by_order[s].push_back({{"first", counts(k.first, t.m)}, {"second", counts(k.second, t.m)},
                             {"value", matrix_to_json(x)}});
    }
  }
  json orders = json::object();
  for (auto& [s, rows] : by_order) orders[std::to_string(s)] = std::move(rows);
  return {{"smin", t.smin}, {"smax", t.is_open() ? json(nullptr) : json(t.smax)}, {"orders", orders}};
}

std::string tensor_summary(const std::string& name, const IndexedTensor& t) {
  std::map<int, int> sizes;
  for (const auto& [k, v] : t.entries) {
    for (const auto& [s, x] : v.terms()) ++sizes[s];
  }
  std::ostringstream os;
  for (const auto& [s, n] : sizes) os << name << " nu^" << s << ": " << n << " components\n";
  return os.str();
}

CommandResult graphs(const Config& c) {
  CommandResult r;
  CoeffTable table;
  json rows = json::array();
  std::ostringstream os;
  for (const auto& cls : enumerate(c.order, c.family)) {
    json row = {{"canonical", graph_to_json(cls.graph)}, {"degree", nu_degree(cls.graph)},
                {"aut", cls.aut}};
    if (c.family == Family::M) {
      Rational v = table.c(cls.graph);
      row["c"] = v.get_str();
      os << describe(cls.graph) << "  degree " << nu_degree(cls.graph) << "  |Aut| " << cls.aut << "  c " << v
         << "\n";
    } else {
      Rational w = e_weight(cls.graph);
      row["e_weight"] = w.get_str();
      os << describe(cls.graph) << "  degree " << nu_degree(cls.graph) << "  |Aut| " << cls.aut << "  e-weight "
         << w << "\n";
    }
    rows.push_back(row);
  }
  r.output = {{"family", c.family == Family::M ? "M" : "N"}, {"max_degree", c.order}, {"classes", rows}};
  r.text = os.str();
  return r;
}

CommandResult tensor(const Config& c) {
  Chart chart = config_chart(c);
  IndexedTensor ct;
  if (c.route == "graph") {
    TensorContext ctx(chart, BiBox{c.order, c.order});
    ct = C_from_graphs(ctx, c.order);
  } else {
    ct = C_from_fock(chart, c.order);
  }
  IndexedTensor e = E_from_calabi(chart, BiBox{c.order, c.order});
  CommandResult r;
  r.output = {{"order", c.order}, {"C", tensor_table(ct)}, {"E", tensor_table(e)}};
  r.text = tensor_summary("C", ct) + tensor_summary("E", e);
  return r;
}

const SectionSeries& section_arg(const Config& c, const std::string& name) {
  auto it = c.sections.find(name);
  if (it == c.sections.end()) throw InvalidInput("sections." + name + ": required by mul");
  return it->second;
}

CommandResult mul(const Config& c) {
  Chart chart = config_chart(c);
  const SectionSeries& f = section_arg(c, "f");
  const SectionSeries& g = section_arg(c, "g");
  SectionSeries p = c.route == "graph" ? graph_star(chart, c.order)(f, g) : OracleProduct(chart, c.order)(f, g);
  CommandResult r;
  r.output = {{"product", series_to_json(p)}};
  std::ostringstream os;
  for (const auto& [s, x] : p.terms()) os << "nu^" << s << ": " << x.str() << "\n";
  os << "known through nu^" << p.smax() << "\n";
  r.text = os.str();
  return r;
}

CommandResult verify(const Config& c) {
  Chart chart = config_chart(c);
  SuiteOptions o;
  o.seed = c.seed;
  o.order = c.order;
  o.samples = c.samples;
  require_headroom(chart, c.order);
  Report report = verify_all(chart, o);
  json records = json::array();
  for (const auto& rec : report.records) {
    records.push_back({{"name", rec.name}, {"params", rec.params}, {"pass", rec.pass}, {"locator", rec.locator}});
  }
  CommandResult r;
  r.status = report.all_pass() ? kExitOk : kExitVerificationFailure;
  r.output = {{"seed", c.seed}, {"order", c.order}, {"all_pass", report.all_pass()}, {"records", records}};
  r.text = report.text();
  return r;
}

}  // namespace

CommandResult run_command(const std::string& command, const Config& config) {
  if (command == "graphs") return graphs(config);
  if (command == "tensor") return tensor(config);
  if (command == "mul") return mul(config);
  if (command == "verify") return verify(config);
  throw InvalidInput("command: unknown command '" + command + "'");
}

}  // namespace endoquant
