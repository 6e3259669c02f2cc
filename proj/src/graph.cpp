#include "chimera/graph.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include <json.hpp>

#include "chimera/errors.hpp"

namespace chimera {
namespace {

std::vector<std::string> split_tokens(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

ConceptGraph parse_json_graph(std::string_view text, std::string_view fallback) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError("<document>", e.what());
    }

    std::string name(fallback);
    nlohmann::json triples = nlohmann::json::array();
    std::vector<std::string> isolated;
    if (doc.is_array()) {
        triples = doc;
    } else if (doc.is_object()) {
        if (doc.contains("name")) {
            if (!doc["name"].is_string()) throw SchemaError("name", "expected string");
            name = doc["name"].get<std::string>();
        }
        if (doc.contains("triples")) {
            if (!doc["triples"].is_array())
                throw SchemaError("triples", "expected array");
            triples = doc["triples"];
        }
        if (doc.contains("concepts")) {
            if (!doc["concepts"].is_array())
                throw SchemaError("concepts", "expected array");
            for (const auto& c : doc["concepts"]) {
                if (!c.is_string()) throw SchemaError("concepts", "expected string");
                isolated.push_back(c.get<std::string>());
            }
        }
    } else {
        throw SchemaError("<document>", "expected object or array");
    }

    std::vector<Triple> parsed;
    std::size_t line = 0;
    for (const auto& t : triples) {
        ++line;
        if (!t.is_array() || t.size() != 3 || !t[0].is_string() ||
            !t[1].is_string() || !t[2].is_string()) {
            throw MalformedLineError(line, "triple must be [head, relation, tail]");
        }
        Triple tr{t[0].get<std::string>(), t[1].get<std::string>(),
                  t[2].get<std::string>()};
        if (tr.head == tr.tail) throw SelfLoopError(line, tr.head);
        parsed.push_back(std::move(tr));
    }
    return ConceptGraph(std::move(name), std::move(parsed), std::move(isolated));
}

}  // namespace

ConceptGraph::ConceptGraph(std::string name, std::vector<Triple> triples,
                           std::vector<std::string> isolated_concepts)
    : name_(std::move(name)), triples_(std::move(triples)) {
    std::sort(triples_.begin(), triples_.end());
    triples_.erase(std::unique(triples_.begin(), triples_.end()), triples_.end());
    for (const auto& t : triples_) {
        if (t.head == t.tail) throw SelfLoopError(0, t.head);
        concepts_.push_back(t.head);
        concepts_.push_back(t.tail);
    }
    for (auto& c : isolated_concepts) concepts_.push_back(std::move(c));
    std::sort(concepts_.begin(), concepts_.end());
    concepts_.erase(std::unique(concepts_.begin(), concepts_.end()),
                    concepts_.end());
    index();
}

void ConceptGraph::index() {
    for (const auto& t : triples_) {
        adjacency_[t.head].push_back({t.relation, t.tail, EdgeDir::Outgoing});
        adjacency_[t.tail].push_back({t.relation, t.head, EdgeDir::Incoming});
    }
    for (auto& [label, edges] : adjacency_) std::sort(edges.begin(), edges.end());
}

ConceptGraph ConceptGraph::parse(std::string_view text,
                                 std::string_view fallback_name) {
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos &&
        (text[first] == '{' || text[first] == '[')) {
        return parse_json_graph(text, fallback_name);
    }

    std::vector<Triple> triples;
    std::istringstream is{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        auto start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        auto toks = split_tokens(line);
        if (toks.size() != 3) {
            throw MalformedLineError(line_no, "expected `head relation tail`, got " +
                                                  std::to_string(toks.size()) +
                                                  " token(s)");
        }
        if (toks[0] == toks[2]) throw SelfLoopError(line_no, toks[0]);
        triples.push_back({toks[0], toks[1], toks[2]});
    }
    return ConceptGraph(std::string(fallback_name), std::move(triples));
}

std::string ConceptGraph::to_text() const {
    std::ostringstream os;
    for (const auto& t : triples_)
        os << t.head << ' ' << t.relation << ' ' << t.tail << '\n';
    return os.str();
}

std::string ConceptGraph::to_json() const {
    nlohmann::json doc;
    doc["name"] = name_;
    auto arr = nlohmann::json::array();
    for (const auto& t : triples_)
        arr.push_back(nlohmann::json::array({t.head, t.relation, t.tail}));
    doc["triples"] = std::move(arr);

    // Endpoints reconstruct themselves; only isolated concepts need listing.
    std::vector<std::string> isolated;
    for (const auto& c : concepts_)
        if (adjacency_.find(c) == adjacency_.end()) isolated.push_back(c);
    if (!isolated.empty()) doc["concepts"] = isolated;
    return doc.dump(2);
}

bool ConceptGraph::has_concept(std::string_view label) const {
    return std::binary_search(concepts_.begin(), concepts_.end(), label);
}

std::vector<NeighborEdge> ConceptGraph::neighbors(const std::string& label,
                                                  Direction dir) const {
    if (!has_concept(label)) throw UnknownConceptError(label);
    auto it = adjacency_.find(label);
    if (it == adjacency_.end()) return {};
    if (dir == Direction::Both) return it->second;
    std::vector<NeighborEdge> out;
    for (const auto& e : it->second) {
        if ((dir == Direction::Outgoing && e.dir == EdgeDir::Outgoing) ||
            (dir == Direction::Incoming && e.dir == EdgeDir::Incoming)) {
            out.push_back(e);
        }
    }
    return out;
}

}  // namespace chimera
