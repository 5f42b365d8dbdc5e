#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "n905/extract/entity.hpp"

namespace n905 {

enum class RelationLabel { In, On, Has, HasA, ExitTo, AttributeOf, Wearing };

std::string_view relation_name(RelationLabel r);
RelationLabel relation_from_name(std::string_view name);  // throws on unknown

enum class TripleSource { Observed, InferredHasA, InferredQA };

std::string_view source_name(TripleSource s);
TripleSource source_from_name(std::string_view name);  // throws on unknown

/// One belief atom. Identity (ordering, equality, dedup) is the
/// (subject, relation, object) key; source is provenance only.
struct Triple {
    EntityId subject;
    RelationLabel relation = RelationLabel::In;
    EntityId object;
    TripleSource source = TripleSource::Observed;

    friend bool operator==(const Triple& a, const Triple& b) {
        return a.subject == b.subject && a.relation == b.relation && a.object == b.object;
    }
    friend bool operator<(const Triple& a, const Triple& b) {
        if (a.subject != b.subject) return a.subject < b.subject;
        if (a.relation != b.relation) return a.relation < b.relation;
        return a.object < b.object;
    }
};

/// "subject<TAB>relation<TAB>object<TAB>source"
std::string to_line(const Triple& t);
Triple triple_from_line(std::string_view line);  // throws on malformed input

}  // namespace n905
