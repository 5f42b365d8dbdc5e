#pragma once

#include <vector>

#include "n905/engine/world.hpp"
#include "n905/kg/graph.hpp"

namespace n905 {

/// Keeps exactly the candidates whose argument entities are all present in
/// the graph. Zero-argument commands always pass. Order-preserving.
std::vector<ActionCommand> filter_commands(const KnowledgeGraph& kg,
                                           const std::vector<ActionCommand>& candidates);

}  // namespace n905
