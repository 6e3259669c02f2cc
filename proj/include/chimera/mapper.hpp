#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "chimera/graph.hpp"

namespace chimera {

/// Initial concept pair a synchronized expansion starts from.
struct RootMapping {
    std::string left;
    std::string right;

    auto operator<=>(const RootMapping&) const = default;
};

/// Why a mapping pair entered the analogy: the relation label and edge
/// direction it was reached through, and the expansion depth it sits at.
struct SignatureStep {
    std::string relation;
    EdgeDir dir = EdgeDir::Outgoing;
    int depth = 0;

    auto operator<=>(const SignatureStep&) const = default;
};

/// One structure-preserving set of concept mappings between two graphs.
/// `mappings` starts with the root pair and is a bijection between its left
/// and right columns. `signature[i]` justifies `mappings[i + 1]`.
struct Analogy {
    RootMapping root;
    std::vector<std::pair<std::string, std::string>> mappings;
    std::vector<SignatureStep> signature;

    std::size_t size() const { return mappings.size(); }
    bool operator==(const Analogy&) const = default;
};

struct MapperParams {
    int max_depth = 4;
    bool cross_space_only = true;
    std::size_t min_mappings = 2;
    std::size_t max_analogies_per_root = 10000;
    bool require_direction_match = true;
};

struct ExpansionResult {
    std::vector<Analogy> analogies;
    bool truncated = false;  // per-root analogy cap was hit
};

struct AnalogySet {
    std::vector<Analogy> analogies;
    std::vector<RootMapping> truncated_roots;
};

/// All candidate root pairs, lexicographically ordered. With
/// `cross_space_only` one concept is taken from each space; otherwise every
/// unordered pair of distinct labels from the union of both spaces is listed.
std::vector<RootMapping> enumerate_root_mappings(const ConceptGraph& a,
                                                 const ConceptGraph& b,
                                                 const MapperParams& params);

/// Every maximal analogy rooted at `root`: pairs are grown outward from the
/// root, each new pair reached from an already-mapped pair through edges that
/// share relation label and direction, at matching depth <= max_depth.
ExpansionResult expand_root_mapping(const ConceptGraph& a, const ConceptGraph& b,
                                    const RootMapping& root,
                                    const MapperParams& params);

/// Expands every root mapping and keeps the analogies of globally maximal
/// mapping count, deduplicated by mapping set. Throws NoAnalogyError when the
/// maximum falls below params.min_mappings.
AnalogySet find_analogies(const ConceptGraph& a, const ConceptGraph& b,
                          const MapperParams& params);

/// Checks that each mapping pair is justified by its signature step: some
/// earlier pair one depth above connects to it through edges with the
/// recorded relation label and direction, in both graphs.
bool replay_signature(const ConceptGraph& a, const ConceptGraph& b,
                      const Analogy& analogy, const MapperParams& params);

}  // namespace chimera
