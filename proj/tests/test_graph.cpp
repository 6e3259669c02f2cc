#include <doctest.h>

#include "chimera/errors.hpp"
#include "chimera/graph.hpp"

using namespace chimera;

TEST_CASE("single triple parses into a two-concept graph") {
    auto g = ConceptGraph::parse("snout pw pig", "pig");
    CHECK(g.concept_count() == 2);
    CHECK(g.triple_count() == 1);
    CHECK(g.triples()[0].relation == "pw");
    CHECK(g.has_concept("snout"));
    CHECK(g.has_concept("pig"));
}

TEST_CASE("empty text yields the empty graph") {
    auto g = ConceptGraph::parse("", "x");
    CHECK(g.concept_count() == 0);
    CHECK(g.triple_count() == 0);
}

TEST_CASE("wrong arity reports the line number") {
    CHECK_THROWS_AS(ConceptGraph::parse("pig pw"), MalformedLineError);
    try {
        ConceptGraph::parse("# header\n\nsnout pw pig\npig pw\n");
    } catch (const MalformedLineError& e) {
        CHECK(e.line_no == 4);
    }
}

TEST_CASE("self loops are rejected with their line") {
    try {
        ConceptGraph::parse("snout pw pig\npig isa pig\n");
        FAIL("expected SelfLoopError");
    } catch (const SelfLoopError& e) {
        CHECK(e.line_no == 2);
    }
}

TEST_CASE("comments and blank lines are skipped, duplicates collapse") {
    auto g = ConceptGraph::parse(
        "# the pig space\n"
        "snout pw pig\n"
        "\n"
        "snout pw pig\n"
        "tail pw pig\n");
    CHECK(g.triple_count() == 2);
    CHECK(g.concept_count() == 3);
}

TEST_CASE("json mirror is accepted and round-trips") {
    auto g = ConceptGraph::parse(
        R"({"name": "pig", "triples": [["snout", "pw", "pig"]]})");
    CHECK(g.name() == "pig");
    CHECK(g.triple_count() == 1);
    auto again = ConceptGraph::parse(g.to_json());
    CHECK(again == g);
}

TEST_CASE("text serialization round-trips") {
    auto g = ConceptGraph::parse("b r c\na r b\na s c\n", "g");
    auto again = ConceptGraph::parse(g.to_text(), "g");
    CHECK(again == g);
}

TEST_CASE("graph equality ignores triple input order") {
    auto g1 = ConceptGraph::parse("a r b\nb s c\n", "g");
    auto g2 = ConceptGraph::parse("b s c\na r b\n", "g");
    CHECK(g1 == g2);
}

TEST_CASE("neighbors honors direction and sort order") {
    auto g = ConceptGraph::parse("snout pw pig", "pig");
    auto in = g.neighbors("pig", Direction::Incoming);
    REQUIRE(in.size() == 1);
    CHECK(in[0].relation == "pw");
    CHECK(in[0].other == "snout");
    CHECK(in[0].dir == EdgeDir::Incoming);
    CHECK(g.neighbors("pig", Direction::Outgoing).empty());

    auto g2 = ConceptGraph::parse("a r b\na r c\n", "g");
    auto both = g2.neighbors("a", Direction::Both);
    REQUIRE(both.size() == 2);
    CHECK(both[0].other == "b");
    CHECK(both[1].other == "c");
    CHECK(both[0].dir == EdgeDir::Outgoing);
}

TEST_CASE("neighbors(both) is the disjoint union of the two directions") {
    auto g = ConceptGraph::parse("a r b\nc r a\nb s a\na t d\n", "g");
    auto both = g.neighbors("a", Direction::Both);
    auto out = g.neighbors("a", Direction::Outgoing);
    auto in = g.neighbors("a", Direction::Incoming);
    CHECK(both.size() == out.size() + in.size());
    for (const auto& e : out) CHECK(std::count(both.begin(), both.end(), e) == 1);
    for (const auto& e : in) CHECK(std::count(both.begin(), both.end(), e) == 1);
}

TEST_CASE("unknown concept raises") {
    auto g = ConceptGraph::parse("a r b", "g");
    CHECK_THROWS_AS(g.neighbors("z", Direction::Both), UnknownConceptError);
}

TEST_CASE("isolated concepts survive the json round-trip") {
    ConceptGraph g("g", {{"a", "r", "b"}}, {"lonely"});
    CHECK(g.concept_count() == 3);
    auto again = ConceptGraph::parse(g.to_json());
    CHECK(again == g);
}
