#include "chimera/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "chimera/errors.hpp"
#include "chimera/relations.hpp"
#include "chimera/svg.hpp"

namespace chimera::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const fs::path& path, std::string_view content) {
    fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(path.string());
    out << content;
}

int classify(const Error& e) {
    if (dynamic_cast<const NoAnalogyError*>(&e) ||
        dynamic_cast<const RefillExhaustedError*>(&e))
        return kExitEmptyResult;
    return kExitInputError;
}

json analogy_to_json(const Analogy& an) {
    json j;
    j["root"] = json::array({an.root.left, an.root.right});
    auto maps = json::array();
    for (const auto& [l, r] : an.mappings) maps.push_back(json::array({l, r}));
    j["mappings"] = std::move(maps);
    auto sig = json::array();
    for (const auto& s : an.signature)
        sig.push_back(json::array(
            {s.relation, s.dir == EdgeDir::Outgoing ? "out" : "in", s.depth}));
    j["signature"] = std::move(sig);
    return j;
}

Analogy analogy_from_json(const json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("root") || !j.contains("mappings"))
        throw SchemaError(where, "analogy needs 'root' and 'mappings'");
    Analogy an;
    if (!j["root"].is_array() || j["root"].size() != 2)
        throw SchemaError(where + ".root", "expected [left, right]");
    an.root = {j["root"][0].get<std::string>(), j["root"][1].get<std::string>()};
    for (const auto& m : j["mappings"]) {
        if (!m.is_array() || m.size() != 2)
            throw SchemaError(where + ".mappings", "expected [left, right] pairs");
        an.mappings.emplace_back(m[0].get<std::string>(), m[1].get<std::string>());
    }
    if (j.contains("signature")) {
        for (const auto& s : j["signature"]) {
            if (!s.is_array() || s.size() != 3)
                throw SchemaError(where + ".signature",
                                  "expected [relation, direction, depth]");
            SignatureStep step;
            step.relation = s[0].get<std::string>();
            std::string dir = s[1].get<std::string>();
            if (dir != "out" && dir != "in")
                throw SchemaError(where + ".signature", "direction is out|in");
            step.dir = dir == "out" ? EdgeDir::Outgoing : EdgeDir::Incoming;
            step.depth = s[2].get<int>();
            an.signature.push_back(std::move(step));
        }
    }
    return an;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::string csv_num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

}  // namespace

std::string analogy_file_to_json(const AnalogyFile& file) {
    json doc;
    doc["left"] = file.left;
    doc["right"] = file.right;
    auto arr = json::array();
    for (const auto& an : file.analogies) arr.push_back(analogy_to_json(an));
    doc["analogies"] = std::move(arr);
    return doc.dump(2) + "\n";
}

AnalogyFile analogy_file_from_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError("<document>", e.what());
    }
    if (!doc.is_object() || !doc.contains("left") || !doc.contains("right") ||
        !doc.contains("analogies") || !doc["analogies"].is_array())
        throw SchemaError("<document>", "expected {left, right, analogies}");
    AnalogyFile file;
    file.left = doc["left"].get<std::string>();
    file.right = doc["right"].get<std::string>();
    std::size_t i = 0;
    for (const auto& a : doc["analogies"])
        file.analogies.push_back(
            analogy_from_json(a, "analogies[" + std::to_string(i++) + "]"));
    return file;
}

std::string provenance_to_json(const Blend& blend, double fitness_value) {
    const BlendProvenance& prov = blend.provenance;
    json doc;
    doc["analogy"] = analogy_to_json(prov.analogy);
    doc["base"] = to_string(prov.base_choice);
    doc["base_concept"] = prov.base_concept;
    doc["donor_concept"] = prov.donor_concept;
    auto reps = json::array();
    for (const auto& [pa, pb] : prov.replacements)
        reps.push_back(json::array({pa, pb}));
    doc["replacements"] = std::move(reps);
    doc["compositions"] = prov.compositions;
    doc["fitness"] = fitness_value;
    return doc.dump(2) + "\n";
}

Scene load_scene_file(const fs::path& path) {
    if (path.extension() == ".svg") {
        Scene scene = import_svg(read_file(path));
        fs::path sidecar = path;
        sidecar.replace_extension(".relations.json");
        if (fs::exists(sidecar)) {
            json doc;
            try {
                doc = json::parse(read_file(sidecar));
            } catch (const json::parse_error& e) {
                throw SchemaError(sidecar.string(), e.what());
            }
            const json& arr = doc.is_array() ? doc : doc.value("relations", json::array());
            std::size_t i = 0;
            for (const auto& r : arr) {
                std::string loc = sidecar.string() + "[" + std::to_string(i) + "]";
                if (!r.is_object() || !r.contains("a") || !r.contains("type") ||
                    !r.contains("b"))
                    throw SchemaError(loc, "expected {a, type, b}");
                auto type = relation_from_string(r["type"].get<std::string>());
                if (!type) throw SchemaError(loc, "unknown relation type");
                SceneRelation rel{r["a"].get<std::string>(), *type,
                                  r["b"].get<std::string>()};
                if (!scene.find(rel.a)) throw DanglingRelationError(i, rel.a);
                if (!scene.find(rel.b)) throw DanglingRelationError(i, rel.b);
                scene.relations.push_back(std::move(rel));
                ++i;
            }
        }
        if (scene.canvas.x != 1000.0 || scene.canvas.y != 1000.0)
            scale_scene(scene, 1000.0 / scene.canvas.x, 1000.0 / scene.canvas.y);
        scene.validate();
        return scene;
    }
    return load_scene(read_file(path));
}

std::map<std::string, std::vector<Scene>> load_scene_dir(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw IoError(dir.string());
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        auto name = entry.path().filename().string();
        if (name.ends_with(".scene.json") || name.ends_with(".svg"))
            files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    std::map<std::string, std::vector<Scene>> by_concept;
    for (const auto& f : files) {
        Scene scene = load_scene_file(f);
        by_concept[scene.concept_name].push_back(std::move(scene));
    }
    return by_concept;
}

int cmd_map(const MapArgs& args) {
    try {
        auto left = ConceptGraph::parse(read_file(args.left_path),
                                        fs::path(args.left_path).stem().string());
        auto right = ConceptGraph::parse(read_file(args.right_path),
                                         fs::path(args.right_path).stem().string());
        auto found = find_analogies(left, right, args.mapper);
        for (const auto& root : found.truncated_roots)
            std::cerr << "warning: analogy cap hit at root (" << root.left << ", "
                      << root.right << ")\n";
        AnalogyFile file{left.name(), right.name(), found.analogies};
        write_file(args.out_path, analogy_file_to_json(file));
        std::size_t max_size =
            found.analogies.empty() ? 0 : found.analogies.front().size();
        std::cout << found.analogies.size() << " analogies, max " << max_size
                  << " mappings\n";
        return kExitOk;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return classify(e);
    }
}

int cmd_blend(const BlendArgs& args) {
    try {
        auto file = analogy_file_from_json(read_file(args.analogies_path));
        auto scenes = load_scene_dir(args.scenes_dir);
        if (file.analogies.empty()) {
            std::cerr << "warning: no analogies in " << args.analogies_path << "\n";
            std::cout << "0 blends\n";
            return kExitOk;
        }
        auto it_a = scenes.find(file.left);
        auto it_b = scenes.find(file.right);
        if (it_a == scenes.end())
            throw SchemaError(args.scenes_dir, "no scene for concept '" + file.left + "'");
        if (it_b == scenes.end())
            throw SchemaError(args.scenes_dir, "no scene for concept '" + file.right + "'");

        std::size_t written = 0;
        for (std::size_t ra = 0; ra < it_a->second.size(); ++ra) {
            for (std::size_t rb = 0; rb < it_b->second.size(); ++rb) {
                const Scene& scene_a = it_a->second[ra];
                const Scene& scene_b = it_b->second[rb];
                BaseRasters rasters = BaseRasters::make(scene_a, scene_b, args.blend);
                for (std::size_t i = 0; i < file.analogies.size(); ++i) {
                    for (BaseChoice choice : {BaseChoice::A, BaseChoice::B}) {
                        std::uint64_t salt =
                            ((i * 2 + (choice == BaseChoice::B)) * 16 + ra) * 16 + rb;
                        auto blend = construct_blend(
                            file.analogies[i], choice, scene_a, scene_b,
                            mix_seed(args.seed, salt), args.blend, &rasters);
                        char tag[64];
                        std::snprintf(tag, sizeof tag, "blend_%03zu_%s_%zu_%zu",
                                      i, to_string(choice), ra, rb);
                        if (!blend) {
                            std::cerr << "skip " << tag
                                      << ": too similar to a base representation\n";
                            continue;
                        }
                        fs::path out = fs::path(args.out_dir) / tag;
                        write_file(out.string() + ".svg", export_svg(blend->scene));
                        write_file(out.string() + ".provenance.json",
                                   provenance_to_json(*blend, fitness(blend->scene)));
                        ++written;
                    }
                }
            }
        }
        std::cout << written << " blends\n";
        return kExitOk;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return classify(e);
    }
}

int cmd_evolve(const EvolveArgs& args) {
    try {
        auto left = ConceptGraph::parse(read_file(args.left_path),
                                        fs::path(args.left_path).stem().string());
        auto right = ConceptGraph::parse(read_file(args.right_path),
                                         fs::path(args.right_path).stem().string());
        auto found = find_analogies(left, right, args.mapper);
        auto scenes = load_scene_dir(args.scenes_dir);
        auto it_a = scenes.find(left.name());
        auto it_b = scenes.find(right.name());
        if (it_a == scenes.end())
            throw SchemaError(args.scenes_dir,
                              "no scene for concept '" + left.name() + "'");
        if (it_b == scenes.end())
            throw SchemaError(args.scenes_dir,
                              "no scene for concept '" + right.name() + "'");
        const Scene& scene_a = it_a->second.front();
        const Scene& scene_b = it_b->second.front();

        auto runs = evolve(found.analogies, scene_a, scene_b, args.evolution);

        std::ostringstream csv;
        csv << "generation,population,best_fitness,mean_fitness\n";
        json manifest;
        manifest["params"] = {
            {"seed", args.evolution.seed},
            {"generations", args.evolution.generations},
            {"population_size", args.evolution.max_size},
            {"mutation_prob_per_gene", args.evolution.mutation_prob_per_gene},
            {"recombination_prob_per_individual",
             args.evolution.recombination_prob_per_individual},
            {"tournament_size", args.evolution.tournament_size},
            {"crossover_points", args.evolution.crossover_points},
            {"mutation_step", args.evolution.mutation_step},
            {"similarity_threshold", args.evolution.blend.similarity_threshold},
            {"raster",
             {args.evolution.blend.raster_width, args.evolution.blend.raster_height}},
            {"max_depth", args.mapper.max_depth},
            {"cross_space_only", args.mapper.cross_space_only},
        };
        auto pops = json::array();
        for (std::size_t k = 0; k < runs.size(); ++k) {
            auto& run = runs[k];
            // gallery: final population, best first
            std::vector<std::size_t> order(run.population.individuals.size());
            for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
            std::stable_sort(order.begin(), order.end(),
                             [&](std::size_t x, std::size_t y) {
                                 return run.population.individuals[x].fitness() >
                                        run.population.individuals[y].fitness();
                             });
            char pop_tag[32];
            std::snprintf(pop_tag, sizeof pop_tag, "pop_%03zu", k);
            auto files = json::array();
            for (std::size_t rank = 0; rank < order.size(); ++rank) {
                Individual& ind = run.population.individuals[order[rank]];
                char ind_tag[32];
                std::snprintf(ind_tag, sizeof ind_tag, "ind_%02zu", rank);
                fs::path base = fs::path(args.out_dir) / pop_tag / ind_tag;
                write_file(base.string() + ".svg", export_svg(ind.blend.scene));
                write_file(base.string() + ".provenance.json",
                           provenance_to_json(ind.blend, ind.fitness()));
                files.push_back(std::string(pop_tag) + "/" + ind_tag + ".svg");
            }
            for (std::size_t g = 0; g < run.elite_curve.size(); ++g)
                csv << g << ',' << k << ',' << csv_num(run.elite_curve[g]) << ','
                    << csv_num(run.mean_curve[g]) << '\n';
            json pj;
            pj["index"] = k;
            pj["root"] = {run.population.analogy.root.left,
                          run.population.analogy.root.right};
            pj["mappings"] = run.population.analogy.size();
            pj["elite_curve"] = run.elite_curve;
            pj["files"] = std::move(files);
            pops.push_back(std::move(pj));
        }
        manifest["populations"] = std::move(pops);
        manifest["csv"] = "elite_curve.csv";
        write_file(fs::path(args.out_dir) / "elite_curve.csv", csv.str());
        write_file(fs::path(args.out_dir) / "manifest.json",
                   manifest.dump(2) + "\n");
        std::cout << runs.size() << " populations evolved\n";
        return kExitOk;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return classify(e);
    }
}

}  // namespace chimera::cli
