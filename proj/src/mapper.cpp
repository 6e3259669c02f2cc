#include "chimera/mapper.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "chimera/errors.hpp"

namespace chimera {
namespace {

using Mapping = std::pair<std::string, std::string>;

/// Shared expansion state over one (a, b, params) triple.
struct Expansion {
    const ConceptGraph& a;
    const ConceptGraph& b;
    const MapperParams& params;

    std::vector<NeighborEdge> edges_a(const std::string& c) const {
        return a.has_concept(c) ? a.neighbors(c, Direction::Both)
                                : std::vector<NeighborEdge>{};
    }
    std::vector<NeighborEdge> edges_b(const std::string& c) const {
        return b.has_concept(c) ? b.neighbors(c, Direction::Both)
                                : std::vector<NeighborEdge>{};
    }

    /// True when (u,v) connects to (x,y) through some shared relation label
    /// (and, in strict mode, shared edge direction) in both graphs.
    bool pairs_adjacent(const Mapping& uv, const Mapping& xy) const {
        for (const auto& ea : edges_a(uv.first)) {
            if (ea.other != xy.first) continue;
            for (const auto& eb : edges_b(uv.second)) {
                if (eb.other != xy.second || eb.relation != ea.relation) continue;
                if (!params.require_direction_match || eb.dir == ea.dir) return true;
            }
        }
        return false;
    }

    /// BFS depth of every pair in `pairs` from pairs[0]; -1 when unreachable.
    std::vector<int> pair_depths(const std::vector<Mapping>& pairs) const {
        std::vector<int> depth(pairs.size(), -1);
        depth[0] = 0;
        std::vector<std::size_t> frontier{0};
        while (!frontier.empty()) {
            std::vector<std::size_t> next;
            for (auto i : frontier) {
                for (std::size_t j = 0; j < pairs.size(); ++j) {
                    if (depth[j] >= 0) continue;
                    if (pairs_adjacent(pairs[i], pairs[j])) {
                        depth[j] = depth[i] + 1;
                        next.push_back(j);
                    }
                }
            }
            frontier = std::move(next);
        }
        return depth;
    }

    /// Depth the candidate would get if appended; -1 when unreachable.
    int candidate_depth(const std::vector<Mapping>& mapped,
                        const Mapping& cand) const {
        auto pairs = mapped;
        pairs.push_back(cand);
        return pair_depths(pairs).back();
    }
};

struct SearchState {
    std::vector<Mapping> mapped;  // insertion order, root first
    std::set<std::string> used_left;
    std::set<std::string> used_right;
};

std::vector<Mapping> open_candidates(const Expansion& ex, const SearchState& st) {
    std::set<Mapping> found;
    for (const auto& uv : st.mapped) {
        for (const auto& ea : ex.edges_a(uv.first)) {
            if (st.used_left.count(ea.other)) continue;
            for (const auto& eb : ex.edges_b(uv.second)) {
                if (eb.relation != ea.relation) continue;
                if (ex.params.require_direction_match && eb.dir != ea.dir) continue;
                if (st.used_right.count(eb.other)) continue;
                found.insert({ea.other, eb.other});
            }
        }
    }
    std::vector<Mapping> out;
    for (const auto& cand : found) {
        int d = ex.candidate_depth(st.mapped, cand);
        if (d >= 1 && d <= ex.params.max_depth) out.push_back(cand);
    }
    return out;
}

std::string mapping_set_key(std::vector<Mapping> pairs) {
    std::sort(pairs.begin(), pairs.end());
    std::ostringstream os;
    for (const auto& [l, r] : pairs) os << l << '\x1f' << r << '\x1e';
    return os.str();
}

struct Emitter {
    const Expansion& ex;
    RootMapping root;
    std::set<std::string> seen;
    std::vector<Analogy> out;
    bool truncated = false;

    bool full() const { return out.size() >= ex.params.max_analogies_per_root; }

    void emit(const std::vector<Mapping>& mapped) {
        auto key = mapping_set_key(mapped);
        if (!seen.insert(key).second) return;
        if (full()) {
            truncated = true;
            return;
        }

        auto depths = ex.pair_depths(mapped);
        std::vector<std::size_t> order(mapped.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
            return std::tie(depths[i], mapped[i]) < std::tie(depths[j], mapped[j]);
        });

        Analogy an;
        an.root = root;
        for (auto i : order) an.mappings.push_back(mapped[i]);
        for (std::size_t i = 1; i < order.size(); ++i) {
            const auto& xy = mapped[order[i]];
            int d = depths[order[i]];
            // Canonically smallest (relation, direction) over valid parents.
            SignatureStep best;
            bool have = false;
            for (std::size_t j = 0; j < i; ++j) {
                const auto& uv = mapped[order[j]];
                if (depths[order[j]] != d - 1) continue;
                for (const auto& ea : ex.edges_a(uv.first)) {
                    if (ea.other != xy.first) continue;
                    for (const auto& eb : ex.edges_b(uv.second)) {
                        if (eb.other != xy.second || eb.relation != ea.relation)
                            continue;
                        if (ex.params.require_direction_match && eb.dir != ea.dir)
                            continue;
                        SignatureStep step{ea.relation, ea.dir, d};
                        if (!have || step < best) {
                            best = step;
                            have = true;
                        }
                    }
                }
            }
            an.signature.push_back(best);
        }
        out.push_back(std::move(an));
    }
};

/// Binary include/exclude search. At each state the canonically smallest
/// open candidate is either taken or permanently forbidden, so every maximal
/// mapping set is reached along exactly one decision path.
void search(const Expansion& ex, SearchState& st, std::set<Mapping>& forbidden,
            Emitter& em) {
    if (em.full()) {
        em.truncated = true;
        return;
    }
    auto open = open_candidates(ex, st);
    std::vector<Mapping> allowed;
    for (const auto& c : open)
        if (!forbidden.count(c)) allowed.push_back(c);

    if (allowed.empty()) {
        if (open.empty()) em.emit(st.mapped);  // maximal regardless of exclusions
        return;
    }

    Mapping pivot = *std::min_element(allowed.begin(), allowed.end());

    st.mapped.push_back(pivot);
    st.used_left.insert(pivot.first);
    st.used_right.insert(pivot.second);
    search(ex, st, forbidden, em);
    st.used_right.erase(pivot.second);
    st.used_left.erase(pivot.first);
    st.mapped.pop_back();

    forbidden.insert(pivot);
    search(ex, st, forbidden, em);
    forbidden.erase(pivot);
}

}  // namespace

std::vector<RootMapping> enumerate_root_mappings(const ConceptGraph& a,
                                                 const ConceptGraph& b,
                                                 const MapperParams& params) {
    if (a.concept_count() == 0 || b.concept_count() == 0) throw EmptyGraphError();
    std::vector<RootMapping> out;
    if (params.cross_space_only) {
        for (const auto& l : a.concepts())
            for (const auto& r : b.concepts())
                if (l != r) out.push_back({l, r});
    } else {
        std::vector<std::string> all;
        all.insert(all.end(), a.concepts().begin(), a.concepts().end());
        all.insert(all.end(), b.concepts().begin(), b.concepts().end());
        std::sort(all.begin(), all.end());
        all.erase(std::unique(all.begin(), all.end()), all.end());
        for (std::size_t i = 0; i < all.size(); ++i)
            for (std::size_t j = i + 1; j < all.size(); ++j)
                out.push_back({all[i], all[j]});
    }
    std::sort(out.begin(), out.end());
    return out;
}

ExpansionResult expand_root_mapping(const ConceptGraph& a, const ConceptGraph& b,
                                    const RootMapping& root,
                                    const MapperParams& params) {
    Expansion ex{a, b, params};
    Emitter em{ex, root};
    SearchState st;
    st.mapped.push_back({root.left, root.right});
    st.used_left.insert(root.left);
    st.used_right.insert(root.right);
    std::set<Mapping> forbidden;
    search(ex, st, forbidden, em);
    return {std::move(em.out), em.truncated};
}

AnalogySet find_analogies(const ConceptGraph& a, const ConceptGraph& b,
                          const MapperParams& params) {
    AnalogySet result;
    std::set<std::string> seen;
    std::size_t best = 0;
    for (const auto& root : enumerate_root_mappings(a, b, params)) {
        auto expanded = expand_root_mapping(a, b, root, params);
        if (expanded.truncated) result.truncated_roots.push_back(root);
        for (auto& an : expanded.analogies) {
            if (!seen.insert(mapping_set_key(an.mappings)).second) continue;
            best = std::max(best, an.size());
            result.analogies.push_back(std::move(an));
        }
    }
    if (best < params.min_mappings) throw NoAnalogyError(best);
    std::erase_if(result.analogies,
                  [&](const Analogy& an) { return an.size() != best; });
    std::sort(result.analogies.begin(), result.analogies.end(),
              [](const Analogy& x, const Analogy& y) {
                  return x.mappings < y.mappings;
              });
    return result;
}

bool replay_signature(const ConceptGraph& a, const ConceptGraph& b,
                      const Analogy& an, const MapperParams& params) {
    if (an.mappings.empty()) return false;
    if (an.mappings.front().first != an.root.left ||
        an.mappings.front().second != an.root.right)
        return false;
    if (an.signature.size() + 1 != an.mappings.size()) return false;

    std::set<std::string> lefts, rights;
    for (const auto& [l, r] : an.mappings) {
        if (!lefts.insert(l).second || !rights.insert(r).second) return false;
    }

    Expansion ex{a, b, params};
    std::vector<int> depth(an.mappings.size(), 0);
    for (std::size_t i = 1; i < an.mappings.size(); ++i) {
        const auto& step = an.signature[i - 1];
        depth[i] = step.depth;
        if (step.depth < 1 || step.depth > params.max_depth) return false;

        bool justified = false;
        for (std::size_t j = 0; j < i && !justified; ++j) {
            if (depth[j] != step.depth - 1) continue;
            for (const auto& ea : ex.edges_a(an.mappings[j].first)) {
                if (ea.other != an.mappings[i].first || ea.relation != step.relation)
                    continue;
                if (params.require_direction_match && ea.dir != step.dir) continue;
                for (const auto& eb : ex.edges_b(an.mappings[j].second)) {
                    if (eb.other != an.mappings[i].second ||
                        eb.relation != step.relation)
                        continue;
                    if (params.require_direction_match && eb.dir != step.dir)
                        continue;
                    justified = true;
                    break;
                }
                if (justified) break;
            }
        }
        if (!justified) return false;
    }
    return true;
}

}  // namespace chimera
