#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "chimera/graph.hpp"
#include "chimera/scene.hpp"

namespace testutil {

inline std::filesystem::path fixture_dir() { return CHIMERA_FIXTURE_DIR; }

inline std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline chimera::Scene fixture_scene(const std::string& name) {
    return chimera::load_scene(read_text(fixture_dir() / (name + ".scene.json")));
}

inline chimera::ConceptGraph fixture_graph(const std::string& name) {
    return chimera::ConceptGraph::parse(
        read_text(fixture_dir() / (name + ".triples")), name);
}

}  // namespace testutil
