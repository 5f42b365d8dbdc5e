#pragma once

#include <set>
#include <string>
#include <vector>

#include "n905/kg/graph.hpp"

namespace n905 {

/// One fact usable to answer a templated question. relation is one of
/// "contains", "located_in", "attribute".
struct Fact {
    EntityId entity;
    std::string relation;
    EntityId value;

    friend bool operator<(const Fact& a, const Fact& b) {
        if (a.entity != b.entity) return a.entity < b.entity;
        if (a.relation != b.relation) return a.relation < b.relation;
        return a.value < b.value;
    }
};

struct FactBase {
    std::set<Fact> facts;

    std::vector<EntityId> all_entities() const;
};

FactBase load_facts(const std::string& path);
FactBase parse_facts(const std::string& content, const std::string& origin);

/// A question template plus the conversion from matching facts to triples.
struct QuestionTemplate {
    std::string text;           // e.g. "What is in {x}?"
    std::string fact_relation;  // which facts answer it
    RelationLabel produces;     // triple relation of the answer
};

struct QuestionSet {
    std::vector<QuestionTemplate> questions;
};

/// "What is in X?", "Where is X?", "What attributes does X possess?".
QuestionSet default_questions();

/// Instantiates every template for the current location and for every
/// entity already in the graph, answers from the fact base, and converts
/// answers to triples tagged InferredQA. Pure.
std::vector<Triple> qa_infer(const FactBase& facts, const QuestionSet& questions,
                             const EntityId& location, const KnowledgeGraph& kg);

}  // namespace n905
