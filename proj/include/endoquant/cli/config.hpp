#pragma once

#include <cstdint>
#include <map>
#include <string>

#include <json.hpp>

#include "endoquant/geometry/chart.hpp"
#include "endoquant/graphs/enumerate.hpp"
#include "endoquant/starprod/star.hpp"

namespace endoquant {

/// Chart plus command parameters. JSON layout:
///   {"m": 1, "d": 2, "R": 2, "accuracy": 8,
///    "potentials": {"-1": [["1", [1, 1]]]},
///    "u": [[poly, poly], [poly, poly]],
///    "order": 2, "seed": 7, "samples": 4, "family": "M", "route": "graph",
///    "sections": {"f": {"0": matrix, "1": matrix}, "g": {...}}}
/// A polynomial is a list of [coefficient, exponent vector over z..., zbar...];
/// coefficients are exact strings "p/q", "r/s*i" or "p/q+r/s*i".
struct Config {
  ChartData chart;
  int order = 2;
  std::uint64_t seed = 7;
  int samples = 4;
  Family family = Family::M;
  std::string route = "graph";
  std::map<std::string, SectionSeries> sections;
};

/// Throws InvalidInput naming the field (and the line for syntax errors).
Config parse_config(const nlohmann::json& j);
Config load_config(const std::string& path);
nlohmann::json emit_config(const Config& c);

/// Chart validation with the error prefixed by the config field.
Chart config_chart(const Config& c);

nlohmann::json jet_to_json(const Jet& j);
Jet jet_from_json(const nlohmann::json& j, int nvars, const std::string& field);
nlohmann::json matrix_to_json(const MatrixJet& x);
MatrixJet matrix_from_json(const nlohmann::json& j, int dim, int nvars, const std::string& field);
/// {"smin": s, "smax": s or null (exact), "terms": {"order": matrix}}.
nlohmann::json series_to_json(const SectionSeries& s);

}  // namespace endoquant
