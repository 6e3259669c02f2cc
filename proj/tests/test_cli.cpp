#include <filesystem>
#include <fstream>
#include <map>

#include <doctest.h>
#include <json.hpp>

#include "chimera/cli.hpp"
#include "chimera/svg.hpp"
#include "support/fixtures.hpp"

using namespace chimera;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& tag) {
    fs::path dir = fs::temp_directory_path() / ("chimera_test_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write(const fs::path& path, const std::string& text) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    out << text;
}

std::map<std::string, std::string> slurp_tree(const fs::path& dir) {
    std::map<std::string, std::string> out;
    for (const auto& entry : fs::recursive_directory_iterator(dir))
        if (entry.is_regular_file())
            out[fs::relative(entry.path(), dir).string()] =
                testutil::read_text(entry.path());
    return out;
}

cli::BlendArgs blend_args(const fs::path& analogies, const fs::path& scenes,
                          const fs::path& out) {
    cli::BlendArgs args;
    args.analogies_path = analogies.string();
    args.scenes_dir = scenes.string();
    args.out_dir = out.string();
    args.blend.raster_width = 64;
    args.blend.raster_height = 64;
    return args;
}

}  // namespace

TEST_CASE("cmd_map writes analogies for the pig/cactus fixtures") {
    auto dir = temp_dir("map");
    cli::MapArgs args;
    args.left_path = (testutil::fixture_dir() / "pig.triples").string();
    args.right_path = (testutil::fixture_dir() / "cactus.triples").string();
    args.out_path = (dir / "analogies.json").string();
    CHECK(cli::cmd_map(args) == cli::kExitOk);

    auto file = cli::analogy_file_from_json(testutil::read_text(dir / "analogies.json"));
    CHECK(file.left == "pig");
    CHECK(file.right == "cactus");
    REQUIRE(file.analogies.size() == 1);
    CHECK(file.analogies[0].size() == 4);
}

TEST_CASE("cmd_map exits 3 when the vocabularies do not meet") {
    auto dir = temp_dir("map3");
    write(dir / "a.triples", "x r y\n");
    write(dir / "b.triples", "u q v\n");
    cli::MapArgs args;
    args.left_path = (dir / "a.triples").string();
    args.right_path = (dir / "b.triples").string();
    args.out_path = (dir / "out.json").string();
    CHECK(cli::cmd_map(args) == cli::kExitEmptyResult);
}

TEST_CASE("cmd_map exits 2 on unreadable or malformed input") {
    auto dir = temp_dir("map2");
    cli::MapArgs args;
    args.left_path = (dir / "missing.triples").string();
    args.right_path = (dir / "missing2.triples").string();
    args.out_path = (dir / "out.json").string();
    CHECK(cli::cmd_map(args) == cli::kExitInputError);

    write(dir / "bad.triples", "one two\n");
    write(dir / "ok.triples", "a r b\n");
    args.left_path = (dir / "bad.triples").string();
    args.right_path = (dir / "ok.triples").string();
    CHECK(cli::cmd_map(args) == cli::kExitInputError);
}

TEST_CASE("cmd_blend emits svg plus provenance and is byte-deterministic") {
    auto dir = temp_dir("blend");
    cli::MapArgs map_args;
    map_args.left_path = (testutil::fixture_dir() / "pig.triples").string();
    map_args.right_path = (testutil::fixture_dir() / "cactus.triples").string();
    map_args.out_path = (dir / "analogies.json").string();
    REQUIRE(cli::cmd_map(map_args) == cli::kExitOk);

    auto out1 = dir / "out1";
    auto out2 = dir / "out2";
    auto args1 = blend_args(dir / "analogies.json", testutil::fixture_dir(), out1);
    args1.seed = 9;
    CHECK(cli::cmd_blend(args1) == cli::kExitOk);
    auto args2 = blend_args(dir / "analogies.json", testutil::fixture_dir(), out2);
    args2.seed = 9;
    CHECK(cli::cmd_blend(args2) == cli::kExitOk);

    auto tree1 = slurp_tree(out1);
    CHECK(!tree1.empty());
    bool has_svg = false;
    for (const auto& [name, text] : tree1)
        if (name.ends_with(".svg")) has_svg = true;
    CHECK(has_svg);
    CHECK(tree1 == slurp_tree(out2));
}

TEST_CASE("cmd_blend warns but succeeds on an empty analogy file") {
    auto dir = temp_dir("blend_empty");
    write(dir / "empty.json",
          R"({"left": "pig", "right": "cactus", "analogies": []})");
    auto args = blend_args(dir / "empty.json", testutil::fixture_dir(), dir / "out");
    CHECK(cli::cmd_blend(args) == cli::kExitOk);
    CHECK(!fs::exists(dir / "out"));
}

TEST_CASE("cmd_blend exits 2 on a broken analogy document") {
    auto dir = temp_dir("blend_bad");
    write(dir / "bad.json", "{}");
    auto args = blend_args(dir / "bad.json", testutil::fixture_dir(), dir / "out");
    CHECK(cli::cmd_blend(args) == cli::kExitInputError);
}

TEST_CASE("cmd_evolve writes galleries, a manifest and a monotone elite curve") {
    auto dir = temp_dir("evolve");
    cli::EvolveArgs args;
    args.left_path = (testutil::fixture_dir() / "pig.triples").string();
    args.right_path = (testutil::fixture_dir() / "cactus.triples").string();
    args.scenes_dir = testutil::fixture_dir().string();
    args.out_dir = (dir / "run").string();
    args.evolution.max_size = 6;
    args.evolution.generations = 3;
    args.evolution.seed = 21;
    args.evolution.blend.raster_width = 64;
    args.evolution.blend.raster_height = 64;
    CHECK(cli::cmd_evolve(args) == cli::kExitOk);

    auto manifest =
        nlohmann::json::parse(testutil::read_text(dir / "run" / "manifest.json"));
    CHECK(manifest.contains("populations"));
    CHECK(manifest["populations"].size() == 1);

    std::istringstream csv(testutil::read_text(dir / "run" / "elite_curve.csv"));
    std::string line;
    std::getline(csv, line);
    CHECK(line == "generation,population,best_fitness,mean_fitness");
    double prev = -1.0;
    int rows = 0;
    while (std::getline(csv, line)) {
        auto c1 = line.find(','), c2 = line.find(',', line.find(',') + 1);
        auto c3 = line.rfind(',');
        double best = std::stod(line.substr(c2 + 1, c3 - c2 - 1));
        CHECK(best >= prev);
        prev = best;
        ++rows;
    }
    CHECK(rows == args.evolution.generations + 1);
    CHECK(fs::exists(dir / "run" / "pop_000" / "ind_00.svg"));
    CHECK(fs::exists(dir / "run" / "pop_000" / "ind_00.provenance.json"));
}

TEST_CASE("cmd_evolve with zero generations reports the initial state") {
    auto dir = temp_dir("evolve0");
    cli::EvolveArgs args;
    args.left_path = (testutil::fixture_dir() / "pig.triples").string();
    args.right_path = (testutil::fixture_dir() / "cactus.triples").string();
    args.scenes_dir = testutil::fixture_dir().string();
    args.out_dir = (dir / "run").string();
    args.evolution.max_size = 4;
    args.evolution.generations = 0;
    args.evolution.blend.raster_width = 64;
    args.evolution.blend.raster_height = 64;
    CHECK(cli::cmd_evolve(args) == cli::kExitOk);
    std::istringstream csv(testutil::read_text(dir / "run" / "elite_curve.csv"));
    std::string line;
    int rows = -1;  // header
    while (std::getline(csv, line)) ++rows;
    CHECK(rows == 1);
}

TEST_CASE("scene directories load both json scenes and svg with sidecars") {
    auto dir = temp_dir("scenes");
    auto pig = testutil::fixture_scene("pig");
    write(dir / "pig.svg", export_svg(pig));
    nlohmann::json rels = nlohmann::json::array();
    for (const auto& r : pig.relations)
        rels.push_back({{"a", r.a}, {"type", to_string(r.type)}, {"b", r.b}});
    write(dir / "pig.relations.json", rels.dump(2));
    write(dir / "cactus.scene.json",
          testutil::read_text(testutil::fixture_dir() / "cactus.scene.json"));

    auto scenes = cli::load_scene_dir(dir);
    REQUIRE(scenes.count("pig"));
    REQUIRE(scenes.count("cactus"));
    CHECK(scenes["pig"].front().relations.size() == pig.relations.size());
    CHECK(scenes["pig"].front().canvas == Vec2{1000.0, 1000.0});
}
