#include "n905/extract/triple.hpp"

#include <stdexcept>

#include "n905/util/strings.hpp"

namespace n905 {

std::string_view relation_name(RelationLabel r) {
    switch (r) {
        case RelationLabel::In: return "In";
        case RelationLabel::On: return "On";
        case RelationLabel::Has: return "Has";
        case RelationLabel::HasA: return "HasA";
        case RelationLabel::ExitTo: return "ExitTo";
        case RelationLabel::AttributeOf: return "AttributeOf";
        case RelationLabel::Wearing: return "Wearing";
    }
    return "?";
}

RelationLabel relation_from_name(std::string_view name) {
    if (name == "In") return RelationLabel::In;
    if (name == "On") return RelationLabel::On;
    if (name == "Has") return RelationLabel::Has;
    if (name == "HasA") return RelationLabel::HasA;
    if (name == "ExitTo") return RelationLabel::ExitTo;
    if (name == "AttributeOf") return RelationLabel::AttributeOf;
    if (name == "Wearing") return RelationLabel::Wearing;
    throw std::invalid_argument("unknown relation label: " + std::string(name));
}

std::string_view source_name(TripleSource s) {
    switch (s) {
        case TripleSource::Observed: return "observed";
        case TripleSource::InferredHasA: return "inferred_hasa";
        case TripleSource::InferredQA: return "inferred_qa";
    }
    return "?";
}

TripleSource source_from_name(std::string_view name) {
    if (name == "observed") return TripleSource::Observed;
    if (name == "inferred_hasa") return TripleSource::InferredHasA;
    if (name == "inferred_qa") return TripleSource::InferredQA;
    throw std::invalid_argument("unknown triple source: " + std::string(name));
}

std::string to_line(const Triple& t) {
    std::string out = t.subject;
    out += '\t';
    out += relation_name(t.relation);
    out += '\t';
    out += t.object;
    out += '\t';
    out += source_name(t.source);
    return out;
}

Triple triple_from_line(std::string_view line) {
    std::vector<std::string> f = split(line, '\t');
    if (f.size() != 4) {
        throw std::invalid_argument("triple line needs 4 tab-separated fields: " +
                                    std::string(line));
    }
    return Triple{f[0], relation_from_name(f[1]), f[2], source_from_name(f[3])};
}

}  // namespace n905
