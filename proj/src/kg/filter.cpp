#include "n905/kg/filter.hpp"

namespace n905 {

std::vector<ActionCommand> filter_commands(const KnowledgeGraph& kg,
                                           const std::vector<ActionCommand>& candidates) {
    std::vector<ActionCommand> out;
    out.reserve(candidates.size());
    for (const ActionCommand& c : candidates) {
        bool keep = true;
        for (const EntityId& a : c.args) {
            if (!kg.contains_entity(a)) {
                keep = false;
                break;
            }
        }
        if (keep) out.push_back(c);
    }
    return out;
}

}  // namespace n905
