#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "chimera/cli.hpp"

namespace {

std::uint64_t seed_fallback() {
    if (const char* env = std::getenv("BLEND_SEED")) {
        try {
            return std::stoull(env);
        } catch (...) {
            std::cerr << "warning: ignoring unparsable BLEND_SEED\n";
        }
    }
    return 0;
}

bool parse_raster(const std::string& spec, int& w, int& h) {
    auto x = spec.find('x');
    if (x == std::string::npos) return false;
    try {
        w = std::stoi(spec.substr(0, x));
        h = std::stoi(spec.substr(x + 1));
    } catch (...) {
        return false;
    }
    return w > 0 && h > 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"analogy-driven visual blend generator"};
    app.require_subcommand(1);

    using namespace chimera::cli;
    MapArgs map_args;
    BlendArgs blend_args;
    EvolveArgs evolve_args;
    std::string raster_spec = "256x256";
    blend_args.seed = seed_fallback();
    evolve_args.evolution.seed = seed_fallback();

    auto* map_cmd = app.add_subcommand("map", "derive analogies from two triple files");
    map_cmd->add_option("left", map_args.left_path, "left concept triples")->required();
    map_cmd->add_option("right", map_args.right_path, "right concept triples")->required();
    map_cmd->add_option("-o,--out", map_args.out_path, "output analogy json")->required();
    map_cmd->add_option("--max-depth", map_args.mapper.max_depth, "expansion depth bound");
    map_cmd->add_option("--cross-space-only", map_args.mapper.cross_space_only,
                        "restrict roots to one concept per space");
    map_cmd->add_option("--min-mappings", map_args.mapper.min_mappings,
                        "minimum mapping count");

    auto* blend_cmd = app.add_subcommand("blend", "construct blends from stored analogies");
    blend_cmd->add_option("analogies", blend_args.analogies_path, "analogy json")->required();
    blend_cmd->add_option("scenes", blend_args.scenes_dir, "scene directory")->required();
    blend_cmd->add_option("out", blend_args.out_dir, "output directory")->required();
    blend_cmd->add_option("--seed", blend_args.seed, "rng seed");
    blend_cmd->add_option("--similarity-threshold",
                          blend_args.blend.similarity_threshold,
                          "minimum rmse distance to either base");
    blend_cmd->add_option("--raster", raster_spec, "gate raster size WxH");

    auto* evolve_cmd = app.add_subcommand("evolve", "evolve blend populations per analogy");
    evolve_cmd->add_option("left", evolve_args.left_path, "left concept triples")->required();
    evolve_cmd->add_option("right", evolve_args.right_path, "right concept triples")->required();
    evolve_cmd->add_option("scenes", evolve_args.scenes_dir, "scene directory")->required();
    evolve_cmd->add_option("out", evolve_args.out_dir, "output directory")->required();
    evolve_cmd->add_option("--seed", evolve_args.evolution.seed, "rng seed");
    evolve_cmd->add_option("--generations", evolve_args.evolution.generations,
                           "generations per population");
    evolve_cmd->add_option("--pop-size", evolve_args.evolution.max_size,
                           "population size");
    evolve_cmd->add_option("--mutation", evolve_args.evolution.mutation_prob_per_gene,
                           "mutation probability per gene");
    evolve_cmd->add_option("--recombination",
                           evolve_args.evolution.recombination_prob_per_individual,
                           "recombination probability per individual");
    evolve_cmd->add_option("--tournament", evolve_args.evolution.tournament_size,
                           "tournament size");
    evolve_cmd->add_option("--crossover-points",
                           evolve_args.evolution.crossover_points, "crossover cuts");
    evolve_cmd->add_option("--mutation-step", evolve_args.evolution.mutation_step,
                           "max displacement per axis");
    evolve_cmd->add_option("--similarity-threshold",
                           evolve_args.evolution.blend.similarity_threshold,
                           "minimum rmse distance to either base");
    evolve_cmd->add_option("--raster", raster_spec, "gate raster size WxH");
    evolve_cmd->add_option("--max-depth", evolve_args.mapper.max_depth,
                           "expansion depth bound");
    evolve_cmd->add_option("--cross-space-only", evolve_args.mapper.cross_space_only,
                           "restrict roots to one concept per space");

    CLI11_PARSE(app, argc, argv);

    int w = 256, h = 256;
    if (!parse_raster(raster_spec, w, h)) {
        std::cerr << "error: bad --raster value '" << raster_spec << "'\n";
        return chimera::cli::kExitInputError;
    }
    blend_args.blend.raster_width = w;
    blend_args.blend.raster_height = h;
    evolve_args.evolution.blend.raster_width = w;
    evolve_args.evolution.blend.raster_height = h;

    try {
        if (map_cmd->parsed()) return cmd_map(map_args);
        if (blend_cmd->parsed()) return cmd_blend(blend_args);
        return cmd_evolve(evolve_args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return chimera::cli::kExitInputError;
    }
}
