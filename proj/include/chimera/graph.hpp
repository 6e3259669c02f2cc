#pragma once

#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace chimera {

/// One directed, labeled edge of a concept graph.
struct Triple {
    std::string head;
    std::string relation;
    std::string tail;

    auto operator<=>(const Triple&) const = default;
};

enum class EdgeDir { Outgoing, Incoming };

/// Neighbor query selector.
enum class Direction { Outgoing, Incoming, Both };

struct NeighborEdge {
    std::string relation;
    std::string other;
    EdgeDir dir = EdgeDir::Outgoing;

    auto operator<=>(const NeighborEdge&) const = default;
};

/// Immutable labeled directed graph of concepts, built from relation triples.
/// Concepts are the union of triple endpoints plus any explicitly declared
/// isolated concepts. Triples are deduplicated and kept sorted, so equality
/// is independent of input order.
class ConceptGraph {
public:
    ConceptGraph() = default;
    ConceptGraph(std::string name, std::vector<Triple> triples,
                 std::vector<std::string> isolated_concepts = {});

    /// Parses either the line-oriented triple format (three whitespace
    /// separated tokens per line, `#` starts a comment line) or, when the
    /// first non-space character is `{` or `[`, the JSON mirror
    /// {"name": str, "triples": [[head, relation, tail], ...]}.
    static ConceptGraph parse(std::string_view text,
                              std::string_view fallback_name = "");

    std::string to_text() const;
    std::string to_json() const;

    const std::string& name() const { return name_; }
    const std::vector<std::string>& concepts() const { return concepts_; }
    const std::vector<Triple>& triples() const { return triples_; }
    std::size_t concept_count() const { return concepts_.size(); }
    std::size_t triple_count() const { return triples_.size(); }
    bool has_concept(std::string_view label) const;

    /// Edges incident to `label`, sorted by (relation, other, direction).
    /// Throws UnknownConceptError when the concept is absent.
    std::vector<NeighborEdge> neighbors(const std::string& label,
                                        Direction dir) const;

    bool operator==(const ConceptGraph& o) const {
        return name_ == o.name_ && concepts_ == o.concepts_ &&
               triples_ == o.triples_;
    }

private:
    void index();

    std::string name_;
    std::vector<Triple> triples_;      // sorted, unique
    std::vector<std::string> concepts_;  // sorted, unique
    std::map<std::string, std::vector<NeighborEdge>> adjacency_;  // pre-sorted
};

}  // namespace chimera
