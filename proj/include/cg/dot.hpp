#pragma once

#include <string>

#include "cg/strategy.hpp"

namespace cg {

// Graphviz: + box, − diamond, 0 circle; covers as arrows; minimal conflicts
// as dashed undirected edges; levels as clusters.
std::string es_to_dot(const EventStructure& e);
// the carrier, each node labelled with its image in the game
std::string strategy_to_dot(const Strategy& s);

}  // namespace cg
