#pragma once

// Brute-force reference enumerator of maximal label- and direction-preserving
// partial subgraph isomorphisms that contain a given root pair. Grows states
// breadth-first over all insertion orders with memoization, scanning raw
// triple lists instead of the library's adjacency index, so it stays an
// independent check of the expansion algorithm.

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "chimera/graph.hpp"

namespace oracle {

using Pair = std::pair<std::string, std::string>;
using MappingSet = std::set<Pair>;

struct BruteForce {
    const chimera::ConceptGraph& a;
    const chimera::ConceptGraph& b;
    int max_depth = 4;
    bool strict_direction = true;

    bool pair_adjacent(const Pair& uv, const Pair& xy) const {
        for (const auto& ta : a.triples()) {
            bool forward;
            if (ta.head == uv.first && ta.tail == xy.first)
                forward = true;
            else if (ta.tail == uv.first && ta.head == xy.first)
                forward = false;
            else
                continue;
            for (const auto& tb : b.triples()) {
                if (tb.relation != ta.relation) continue;
                bool forward_b;
                if (tb.head == uv.second && tb.tail == xy.second)
                    forward_b = true;
                else if (tb.tail == uv.second && tb.head == xy.second)
                    forward_b = false;
                else
                    continue;
                if (!strict_direction || forward_b == forward) return true;
            }
        }
        return false;
    }

    // BFS depth of `cand` from `root` within members ∪ {cand}; -1 unreachable.
    int depth_of(const MappingSet& members, const Pair& root,
                 const Pair& cand) const {
        std::vector<Pair> nodes(members.begin(), members.end());
        nodes.push_back(cand);
        std::vector<int> depth(nodes.size(), -1);
        for (std::size_t i = 0; i < nodes.size(); ++i)
            if (nodes[i] == root) depth[i] = 0;
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t i = 0; i < nodes.size(); ++i) {
                if (depth[i] < 0) continue;
                for (std::size_t j = 0; j < nodes.size(); ++j) {
                    if (depth[j] >= 0 && depth[j] <= depth[i] + 1) continue;
                    if (pair_adjacent(nodes[i], nodes[j])) {
                        depth[j] = depth[i] + 1;
                        changed = true;
                    }
                }
            }
        }
        return depth.back();
    }

    std::vector<Pair> extensions(const MappingSet& state, const Pair& root) const {
        std::set<std::string> used_l, used_r;
        for (const auto& [l, r] : state) {
            used_l.insert(l);
            used_r.insert(r);
        }
        std::vector<Pair> out;
        for (const auto& x : a.concepts()) {
            if (used_l.count(x)) continue;
            for (const auto& y : b.concepts()) {
                if (used_r.count(y)) continue;
                Pair cand{x, y};
                bool touches = false;
                for (const auto& m : state)
                    if (pair_adjacent(m, cand)) {
                        touches = true;
                        break;
                    }
                if (!touches) continue;
                int d = depth_of(state, root, cand);
                if (d >= 1 && d <= max_depth) out.push_back(cand);
            }
        }
        return out;
    }

    std::set<MappingSet> maximal_sets(const Pair& root) const {
        std::set<MappingSet> visited, maxima;
        std::vector<MappingSet> frontier{MappingSet{root}};
        visited.insert(MappingSet{root});
        while (!frontier.empty()) {
            std::vector<MappingSet> next;
            for (const auto& state : frontier) {
                auto exts = extensions(state, root);
                if (exts.empty()) {
                    maxima.insert(state);
                    continue;
                }
                for (const auto& e : exts) {
                    auto grown = state;
                    grown.insert(e);
                    if (visited.insert(grown).second) next.push_back(grown);
                }
            }
            frontier = std::move(next);
        }
        return maxima;
    }
};

}  // namespace oracle
