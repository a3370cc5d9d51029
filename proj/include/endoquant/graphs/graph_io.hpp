#pragma once

#include <json.hpp>

#include "endoquant/graphs/graph.hpp"

namespace endoquant {

/// {"regular": [weights], "specials": k, "edges": [["in", "r0"], ["r0", "out"], ...]}
/// with one entry per edge, sorted by (tail, head) index. Regular vertices are
/// r0, r1, ...; specials s1..sk.
nlohmann::json graph_to_json(const FGraph& g);
/// Parses and validates.
FGraph graph_from_json(const nlohmann::json& j);

}  // namespace endoquant
