#include "n905/commonsense/qa.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "n905/util/strings.hpp"

namespace n905 {

std::vector<EntityId> FactBase::all_entities() const {
    std::vector<EntityId> out;
    for (const Fact& f : facts) {
        out.push_back(f.entity);
        out.push_back(f.value);
    }
    return out;
}

FactBase parse_facts(const std::string& content, const std::string& origin) {
    FactBase fb;
    std::istringstream in(content);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::vector<std::string> f = split(line, '\t');
        if (f.size() != 3) {
            throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                                     ": expected \"entity<TAB>relation<TAB>value\"");
        }
        std::string rel = trim(f[1]);
        if (rel != "contains" && rel != "located_in" && rel != "attribute") {
            throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                                     ": unknown fact relation: " + rel);
        }
        fb.facts.insert(Fact{canonicalize(f[0]), rel, canonicalize(f[2])});
    }
    return fb;
}

FactBase load_facts(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open fact base: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_facts(ss.str(), path);
}

QuestionSet default_questions() {
    QuestionSet qs;
    qs.questions.push_back({"What is in {x}?", "contains", RelationLabel::In});
    qs.questions.push_back({"Where is {x}?", "located_in", RelationLabel::In});
    qs.questions.push_back(
        {"What attributes does {x} possess?", "attribute", RelationLabel::AttributeOf});
    return qs;
}

std::vector<Triple> qa_infer(const FactBase& facts, const QuestionSet& questions,
                             const EntityId& location, const KnowledgeGraph& kg) {
    std::set<EntityId> targets;
    targets.insert(location);
    for (const EntityId& e : kg.entities()) targets.insert(e);

    std::set<Triple> out;
    for (const QuestionTemplate& q : questions.questions) {
        for (const EntityId& x : targets) {
            // Answers are the facts about x under the template's relation.
            auto it = facts.facts.lower_bound(Fact{x, q.fact_relation, ""});
            for (; it != facts.facts.end() && it->entity == x && it->relation == q.fact_relation;
                 ++it) {
                Triple t;
                t.source = TripleSource::InferredQA;
                t.relation = q.produces;
                if (q.fact_relation == "contains") {
                    t.subject = it->value;  // the contained thing is in x
                    t.object = x;
                } else if (q.fact_relation == "located_in") {
                    t.subject = x;
                    t.object = it->value;
                } else {  // attribute
                    t.subject = it->value;
                    t.object = x;
                }
                out.insert(std::move(t));
            }
        }
    }
    return std::vector<Triple>(out.begin(), out.end());
}

}  // namespace n905
