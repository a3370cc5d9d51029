#include "endoquant/cli/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "endoquant/algebra/errors.hpp"

namespace endoquant {

using nlohmann::json;

namespace {

const std::set<std::string> kKeys = {"m",     "d",    "R",       "accuracy", "potentials", "u",
                                     "order", "seed", "samples", "family",   "route",      "sections"};

int get_int(const json& j, const std::string& key, int fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number_integer()) throw InvalidInput(key + ": expected an integer");
  return j.at(key).get<int>();
}

int parse_order(const std::string& text, const std::string& field) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw InvalidInput(field + ": '" + text + "' is not an integer");
  return v;
}

}  // namespace

json jet_to_json(const Jet& j) {
  json terms = json::array();
  for (const auto& [e, c] : j.terms()) {
    std::vector<int> exps;
    for (int v = 0; v < j.nvars(); ++v) exps.push_back(e[static_cast<std::size_t>(v)]);
    terms.push_back({c.str(), exps});
  }
  if (j.is_exact()) return terms;
  return {{"accuracy", j.accuracy()}, {"terms", terms}};
}

Jet jet_from_json(const json& j, int nvars, const std::string& field) {
  const json* terms = &j;
  int accuracy = kExact;
  if (j.is_object()) {
    if (!j.contains("terms")) throw InvalidInput(field + ": missing 'terms'");
    terms = &j.at("terms");
    accuracy = get_int(j, "accuracy", kExact);
    if (accuracy < 0) throw InvalidInput(field + ".accuracy: must be nonnegative");
  }
  if (!terms->is_array()) throw InvalidInput(field + ": expected a list of [coefficient, exponents] terms");
  Jet out(nvars, accuracy);
  for (std::size_t t = 0; t < terms->size(); ++t) {
    const json& term = (*terms)[t];
    std::string where = field + "[" + std::to_string(t) + "]";
    if (!term.is_array() || term.size() != 2 || !term[0].is_string() || !term[1].is_array()) {
      throw InvalidInput(where + ": expected [\"coefficient\", [exponents]]");
    }
    if (static_cast<int>(term[1].size()) != nvars) {
      throw InvalidInput(where + ": exponent vector needs " + std::to_string(nvars) + " entries");
    }
    Exponent e{};
    for (int v = 0; v < nvars; ++v) {
      const json& x = term[1][static_cast<std::size_t>(v)];
      if (!x.is_number_integer() || x.get<int>() < 0 || x.get<int>() > 255) {
        throw InvalidInput(where + ": exponents must be integers in [0, 255]");
      }
      e[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(x.get<int>());
    }
    if (total_degree(e) > accuracy) throw InvalidInput(where + ": monomial degree exceeds the accuracy");
    GaussianRational c;
    try {
      c = GaussianRational::parse(term[0].get<std::string>());
    } catch (const InvalidInput& err) {
      throw InvalidInput(where + ": " + err.what());
    }
    out.add_term(e, c);
  }
  return out;
}

json matrix_to_json(const MatrixJet& x) {
  json rows = json::array();
  for (int i = 0; i < x.dim(); ++i) {
    json row = json::array();
    for (int k = 0; k < x.dim(); ++k) row.push_back(jet_to_json(x(i, k)));
    rows.push_back(row);
  }
  return rows;
}

MatrixJet matrix_from_json(const json& j, int dim, int nvars, const std::string& field) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim) {
    throw InvalidInput(field + ": expected " + std::to_string(dim) + " rows");
  }
  MatrixJet out(dim, nvars);
  for (int i = 0; i < dim; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != dim) {
      throw InvalidInput(field + "[" + std::to_string(i) + "]: expected " + std::to_string(dim) + " entries");
    }
    for (int k = 0; k < dim; ++k) {
      out(i, k) = jet_from_json(row[static_cast<std::size_t>(k)], nvars,
                                field + "[" + std::to_string(i) + "][" + std::to_string(k) + "]");
    }
  }
  return out;
}

json series_to_json(const SectionSeries& s) {
  json terms = json::object();
  for (const auto& [k, x] : s.terms()) terms[std::to_string(k)] = matrix_to_json(x);
  return {{"smin", s.smin()}, {"smax", s.is_open() ? json(nullptr) : json(s.smax())}, {"terms", terms}};
}

Config parse_config(const json& j) {
  if (!j.is_object()) throw InvalidInput("config: top level must be an object");
  for (const auto& [key, value] : j.items()) {
    if (!kKeys.count(key)) throw InvalidInput(key + ": unknown field");
  }
  Config c;
  ChartData& data = c.chart;
  data.m = get_int(j, "m", 1);
  data.d = get_int(j, "d", 1);
  data.R = get_int(j, "R", 2);
  data.accuracy = get_int(j, "accuracy", 8);
  if (data.m < 1 || 2 * data.m > kMaxVars) throw InvalidInput("m: complex dimension must be 1..3");
  if (data.d < 1) throw InvalidInput("d: bundle rank must be positive");
  int nv = 2 * data.m;

  if (!j.contains("potentials") || !j.at("potentials").is_object()) {
    throw InvalidInput("potentials: expected an object keyed by weight");
  }
  for (const auto& [key, value] : j.at("potentials").items()) {
    int r = parse_order(key, "potentials." + key);
    data.potentials[r] = jet_from_json(value, nv, "potentials." + key);
  }
  if (j.contains("u")) data.u = matrix_from_json(j.at("u"), data.d, nv, "u");

  c.order = get_int(j, "order", 2);
  if (c.order < 0) throw InvalidInput("order: must be nonnegative");
  c.samples = get_int(j, "samples", 4);
  if (c.samples < 1) throw InvalidInput("samples: must be positive");
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) throw InvalidInput("seed: expected a nonnegative integer");
    c.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("family")) {
    std::string f = j.at("family").is_string() ? j.at("family").get<std::string>() : "";
    if (f != "M" && f != "N") throw InvalidInput("family: expected \"M\" or \"N\"");
    c.family = f == "M" ? Family::M : Family::N;
  }
  if (j.contains("route")) {
    c.route = j.at("route").is_string() ? j.at("route").get<std::string>() : "";
    if (c.route != "graph" && c.route != "oracle") throw InvalidInput("route: expected \"graph\" or \"oracle\"");
  }
  if (j.contains("sections")) {
    if (!j.at("sections").is_object()) throw InvalidInput("sections: expected an object");
    for (const auto& [name, value] : j.at("sections").items()) {
      std::string field = "sections." + name;
      if (!value.is_object()) throw InvalidInput(field + ": expected an object keyed by nu order");
      std::map<int, MatrixJet> terms;
      for (const auto& [order, matrix] : value.items()) {
        int k = parse_order(order, field + "." + order);
        MatrixJet x = matrix_from_json(matrix, data.d, nv, field + "." + order);
        if (!x.exactly_zero()) terms[k] = x;
      }
      SectionSeries s(terms.empty() ? 0 : terms.begin()->first, SectionSeries::kOpen);
      for (const auto& [k, x] : terms) s.add(k, x);
      c.sections.emplace(name, std::move(s));
    }
  }
  return c;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("config: cannot open '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidInput("config: " + path + ": " + e.what());
  }
  return parse_config(j);
}

json emit_config(const Config& c) {
  json j;
  const ChartData& data = c.chart;
  j["m"] = data.m;
  j["d"] = data.d;
  j["R"] = data.R;
  j["accuracy"] = data.accuracy;
  json pots = json::object();
  for (const auto& [r, phi] : data.potentials) pots[std::to_string(r)] = jet_to_json(phi);
  j["potentials"] = pots;
  if (data.u.dim() > 0) j["u"] = matrix_to_json(data.u);
  j["order"] = c.order;
  j["seed"] = c.seed;
  j["samples"] = c.samples;
  j["family"] = c.family == Family::M ? "M" : "N";
  j["route"] = c.route;
  if (!c.sections.empty()) {
    json secs = json::object();
    for (const auto& [name, s] : c.sections) {
      json terms = json::object();
      for (const auto& [k, x] : s.terms()) terms[std::to_string(k)] = matrix_to_json(x);
      secs[name] = terms;
    }
    j["sections"] = secs;
  }
  return j;
}

Chart config_chart(const Config& c) { return Chart::validate(c.chart); }

}  // namespace endoquant
