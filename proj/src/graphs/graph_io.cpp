#include "endoquant/graphs/graph_io.hpp"

#include "endoquant/algebra/errors.hpp"

namespace endoquant {

namespace {

std::string vertex_name(const FGraph& g, int v) {
  if (v == g.source()) return "in";
  if (v == g.sink()) return "out";
  if (g.is_regular(v)) return "r" + std::to_string(v - 1);
  return "s" + std::to_string(g.label(v));
}

int parse_vertex(const FGraph& g, const std::string& s) {
  if (s == "in") return g.source();
  if (s == "out") return g.sink();
  if (s.size() >= 2 && (s[0] == 'r' || s[0] == 's')) {
    std::size_t used = 0;
    int i = -1;
    try {
      i = std::stoi(s.substr(1), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == s.size() - 1) {
      if (s[0] == 'r' && i >= 0 && i < g.R()) return i + 1;
      if (s[0] == 's' && i >= 1 && i <= g.specials) return g.special_vertex(i);
    }
  }
  throw InvalidInput("graph: unknown vertex reference '" + s + "'");
}

}  // namespace

nlohmann::json graph_to_json(const FGraph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (int a = 0; a < g.size(); ++a) {
    for (int b = 0; b < g.size(); ++b) {
      for (int i = 0; i < g.at(a, b); ++i) edges.push_back({vertex_name(g, a), vertex_name(g, b)});
    }
  }
  return {{"regular", g.weights}, {"specials", g.specials}, {"edges", edges}};
}

FGraph graph_from_json(const nlohmann::json& j) {
  try {
    FGraph g(j.at("regular").get<std::vector<int>>(), j.value("specials", 0));
    if (g.specials < 0) throw InvalidInput("graph: negative special count");
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw InvalidInput("graph: an edge must be a pair of vertex names");
      g.at(parse_vertex(g, e[0].get<std::string>()), parse_vertex(g, e[1].get<std::string>())) += 1;
    }
    return validate_graph(g);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("graph: ") + e.what());
  }
}

}  // namespace endoquant
