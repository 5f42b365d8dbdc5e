#include <doctest.h>

#include <stdexcept>

#include "n905/extract/entity.hpp"
#include "n905/util/strings.hpp"

using namespace n905;

TEST_CASE("word_tokens lowercases and strips punctuation") {
    auto t = word_tokens("On the end table are a telephone, a wallet and some keys.");
    REQUIRE(t.size() == 12);
    CHECK(t.front() == "on");
    CHECK(t.back() == "keys");
}

TEST_CASE("split_sentences on terminators") {
    auto s = split_sentences("First. Second! Third? trailing");
    REQUIRE(s.size() == 4);
    CHECK(s[0] == "First");
    CHECK(s[3] == "trailing");
}

TEST_CASE("canonicalize strips articles and joins with underscores") {
    CHECK(canonicalize("the end table") == "end_table");
    CHECK(canonicalize("Keys") == "keys");
    CHECK(canonicalize("A Telephone") == "telephone");
}

TEST_CASE("canonicalize is idempotent") {
    for (const char* phrase : {"the end table", "Some Keys", "shower stall", "front door"}) {
        EntityId e = canonicalize(phrase);
        CHECK(canonicalize(e) == e);
        CHECK(is_canonical(e));
    }
}

TEST_CASE("canonicalize rejects article-only phrases") {
    CHECK_THROWS_AS(canonicalize("a "), std::invalid_argument);
    CHECK_THROWS_AS(canonicalize("  "), std::invalid_argument);
}

TEST_CASE("fnv1a is stable") {
    CHECK(fnv1a("") == 1469598103934665603ULL);
    CHECK(fnv1a("a") != fnv1a("b"));
}
