#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "chimera/evolve.hpp"
#include "chimera/mapper.hpp"

namespace chimera::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitEmptyResult = 3;

struct MapArgs {
    std::string left_path;
    std::string right_path;
    std::string out_path;
    MapperParams mapper;
};

struct BlendArgs {
    std::string analogies_path;
    std::string scenes_dir;
    std::string out_dir;
    std::uint64_t seed = 0;
    BlendParams blend;
};

struct EvolveArgs {
    std::string left_path;
    std::string right_path;
    std::string scenes_dir;
    std::string out_dir;
    MapperParams mapper;
    EvolutionParams evolution;
};

int cmd_map(const MapArgs& args);
int cmd_blend(const BlendArgs& args);
int cmd_evolve(const EvolveArgs& args);

// file-format helpers shared with tests

struct AnalogyFile {
    std::string left;
    std::string right;
    std::vector<Analogy> analogies;
};

std::string analogy_file_to_json(const AnalogyFile& file);
AnalogyFile analogy_file_from_json(std::string_view text);

std::string provenance_to_json(const Blend& blend, double fitness_value);

/// Loads `.scene.json` directly or imports `.svg` (with an optional
/// `<stem>.relations.json` sidecar), normalizing imports onto the canonical
/// 1000x1000 canvas.
Scene load_scene_file(const std::filesystem::path& path);

/// Scenes of a directory grouped by concept, file order sorted by name.
std::map<std::string, std::vector<Scene>> load_scene_dir(
    const std::filesystem::path& dir);

}  // namespace chimera::cli
