#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "chimera/blend.hpp"
#include "chimera/cli.hpp"
#include "chimera/errors.hpp"
#include "chimera/evolve.hpp"
#include "chimera/graph.hpp"
#include "chimera/mapper.hpp"
#include "chimera/raster.hpp"
#include "chimera/relations.hpp"
#include "chimera/scene.hpp"
#include "chimera/svg.hpp"

namespace py = pybind11;
using namespace chimera;

PYBIND11_MODULE(_core, m) {
    m.doc() = "analogy-driven visual blend generation";

    py::register_exception<Error>(m, "ChimeraError");

    py::enum_<Direction>(m, "Direction")
        .value("OUTGOING", Direction::Outgoing)
        .value("INCOMING", Direction::Incoming)
        .value("BOTH", Direction::Both);

    py::enum_<EdgeDir>(m, "EdgeDir")
        .value("OUTGOING", EdgeDir::Outgoing)
        .value("INCOMING", EdgeDir::Incoming);

    py::class_<Triple>(m, "Triple")
        .def(py::init<std::string, std::string, std::string>())
        .def_readwrite("head", &Triple::head)
        .def_readwrite("relation", &Triple::relation)
        .def_readwrite("tail", &Triple::tail)
        .def("__repr__", [](const Triple& t) {
            return "Triple(" + t.head + " " + t.relation + " " + t.tail + ")";
        });

    py::class_<NeighborEdge>(m, "NeighborEdge")
        .def_readonly("relation", &NeighborEdge::relation)
        .def_readonly("other", &NeighborEdge::other)
        .def_readonly("dir", &NeighborEdge::dir);

    py::class_<ConceptGraph>(m, "ConceptGraph")
        .def(py::init<>())
        .def(py::init<std::string, std::vector<Triple>, std::vector<std::string>>(),
             py::arg("name"), py::arg("triples"),
             py::arg("isolated_concepts") = std::vector<std::string>{})
        .def_property_readonly("name", &ConceptGraph::name)
        .def_property_readonly("concepts", &ConceptGraph::concepts)
        .def_property_readonly("triples", &ConceptGraph::triples)
        .def("neighbors", &ConceptGraph::neighbors, py::arg("label"),
             py::arg("direction") = Direction::Both)
        .def("to_text", &ConceptGraph::to_text)
        .def("to_json", &ConceptGraph::to_json)
        .def("__eq__", [](const ConceptGraph& a, const ConceptGraph& b) { return a == b; })
        .def("__len__", &ConceptGraph::concept_count);

    m.def("parse_triples", &ConceptGraph::parse, py::arg("text"),
          py::arg("name") = "");

    py::class_<RootMapping>(m, "RootMapping")
        .def(py::init<std::string, std::string>())
        .def_readwrite("left", &RootMapping::left)
        .def_readwrite("right", &RootMapping::right);

    py::class_<SignatureStep>(m, "SignatureStep")
        .def_readonly("relation", &SignatureStep::relation)
        .def_readonly("dir", &SignatureStep::dir)
        .def_readonly("depth", &SignatureStep::depth);

    py::class_<Analogy>(m, "Analogy")
        .def_readonly("root", &Analogy::root)
        .def_readonly("mappings", &Analogy::mappings)
        .def_readonly("signature", &Analogy::signature)
        .def("__len__", &Analogy::size);

    py::class_<MapperParams>(m, "MapperParams")
        .def(py::init<>())
        .def_readwrite("max_depth", &MapperParams::max_depth)
        .def_readwrite("cross_space_only", &MapperParams::cross_space_only)
        .def_readwrite("min_mappings", &MapperParams::min_mappings)
        .def_readwrite("max_analogies_per_root", &MapperParams::max_analogies_per_root)
        .def_readwrite("require_direction_match",
                       &MapperParams::require_direction_match);

    py::class_<ExpansionResult>(m, "ExpansionResult")
        .def_readonly("analogies", &ExpansionResult::analogies)
        .def_readonly("truncated", &ExpansionResult::truncated);

    py::class_<AnalogySet>(m, "AnalogySet")
        .def_readonly("analogies", &AnalogySet::analogies)
        .def_readonly("truncated_roots", &AnalogySet::truncated_roots);

    m.def("enumerate_root_mappings", &enumerate_root_mappings, py::arg("a"),
          py::arg("b"), py::arg("params") = MapperParams{});
    m.def("expand_root_mapping", &expand_root_mapping, py::arg("a"), py::arg("b"),
          py::arg("root"), py::arg("params") = MapperParams{});
    m.def("find_analogies", &find_analogies, py::arg("a"), py::arg("b"),
          py::arg("params") = MapperParams{});
    m.def("replay_signature", &replay_signature, py::arg("a"), py::arg("b"),
          py::arg("analogy"), py::arg("params") = MapperParams{});

    py::class_<Scene>(m, "Scene")
        .def_property_readonly("concept",
                               [](const Scene& s) { return s.concept_name; })
        .def_property_readonly("canvas",
                               [](const Scene& s) {
                                   return std::make_pair(s.canvas.x, s.canvas.y);
                               })
        .def_property_readonly("relations",
                               [](const Scene& s) {
                                   std::vector<std::tuple<std::string, std::string,
                                                          std::string>> out;
                                   for (const auto& r : s.relations)
                                       out.emplace_back(r.a, to_string(r.type), r.b);
                                   return out;
                               })
        .def("all_paths", &Scene::all_paths)
        .def("absolute_position",
             [](const Scene& s, const std::string& path) {
                 Vec2 p = s.absolute_position(path);
                 return std::make_pair(p.x, p.y);
             })
        .def("bounding_box",
             [](const Scene& s, const std::string& path) {
                 Box b = s.bounding_box(path);
                 return std::make_tuple(b.lo.x, b.lo.y, b.hi.x, b.hi.y);
             })
        .def("validate", &Scene::validate);

    m.def("load_scene", [](const std::string& text) { return load_scene(text); });
    m.def("save_scene", &save_scene);
    m.def("import_svg", [](const std::string& text) { return import_svg(text); });
    m.def("export_svg", &export_svg);

    m.def("eval_relation",
          [](const Scene& scene, const std::string& a, const std::string& type,
             const std::string& b) {
              auto t = relation_from_string(type);
              if (!t) throw SchemaError("type", "unknown relation type '" + type + "'");
              return eval_relation(scene, {a, *t, b});
          },
          py::arg("scene"), py::arg("a"), py::arg("type"), py::arg("b"));
    m.def("relation_scores", [](const Scene& scene) {
        std::vector<std::tuple<std::string, std::string, std::string, double>> out;
        for (const auto& rs : relation_scores(scene))
            out.emplace_back(rs.relation.a, to_string(rs.relation.type),
                             rs.relation.b, rs.value);
        return out;
    });
    m.def("fitness", &fitness);
    m.def("mean_satisfaction", &mean_satisfaction);

    py::class_<Bitmap>(m, "Bitmap")
        .def_readonly("width", &Bitmap::width)
        .def_readonly("height", &Bitmap::height)
        .def_property_readonly("pixels", [](const Bitmap& b) {
            return py::bytes(reinterpret_cast<const char*>(b.pixels.data()),
                             b.pixels.size());
        });
    m.def("rasterize", &rasterize, py::arg("scene"), py::arg("width"),
          py::arg("height"));
    m.def("rmse", &rmse);

    py::enum_<BaseChoice>(m, "BaseChoice")
        .value("A", BaseChoice::A)
        .value("B", BaseChoice::B);

    py::class_<BlendParams>(m, "BlendParams")
        .def(py::init<>())
        .def_readwrite("similarity_threshold", &BlendParams::similarity_threshold)
        .def_readwrite("raster_width", &BlendParams::raster_width)
        .def_readwrite("raster_height", &BlendParams::raster_height)
        .def_readwrite("replace_probability", &BlendParams::replace_probability)
        .def_readwrite("scale_to_fit", &BlendParams::scale_to_fit);

    py::class_<BlendProvenance>(m, "BlendProvenance")
        .def_readonly("analogy", &BlendProvenance::analogy)
        .def_property_readonly("base",
                               [](const BlendProvenance& p) {
                                   return std::string(to_string(p.base_choice));
                               })
        .def_readonly("base_concept", &BlendProvenance::base_concept)
        .def_readonly("donor_concept", &BlendProvenance::donor_concept)
        .def_readonly("replacements", &BlendProvenance::replacements)
        .def_readonly("compositions", &BlendProvenance::compositions);

    py::class_<Blend>(m, "Blend")
        .def_readonly("scene", &Blend::scene)
        .def_readonly("provenance", &Blend::provenance);

    m.def("construct_blend",
          [](const Analogy& analogy, BaseChoice choice, const Scene& a,
             const Scene& b, std::uint64_t seed, const BlendParams& params) {
              return construct_blend(analogy, choice, a, b, seed, params);
          },
          py::arg("analogy"), py::arg("base_choice"), py::arg("scene_a"),
          py::arg("scene_b"), py::arg("seed"), py::arg("params") = BlendParams{});
    m.def("respects_analogy", &respects_analogy);

    py::class_<EvolutionParams>(m, "EvolutionParams")
        .def(py::init<>())
        .def_readwrite("mutation_prob_per_gene",
                       &EvolutionParams::mutation_prob_per_gene)
        .def_readwrite("recombination_prob_per_individual",
                       &EvolutionParams::recombination_prob_per_individual)
        .def_readwrite("tournament_size", &EvolutionParams::tournament_size)
        .def_readwrite("crossover_points", &EvolutionParams::crossover_points)
        .def_readwrite("max_size", &EvolutionParams::max_size)
        .def_readwrite("generations", &EvolutionParams::generations)
        .def_readwrite("mutation_step", &EvolutionParams::mutation_step)
        .def_readwrite("seed", &EvolutionParams::seed)
        .def_readwrite("blend", &EvolutionParams::blend);

    py::class_<Individual>(m, "Individual")
        .def_readonly("blend", &Individual::blend)
        .def("fitness", &Individual::fitness);

    py::class_<Population>(m, "Population")
        .def_readonly("analogy", &Population::analogy)
        .def_readonly("individuals", &Population::individuals)
        .def_readonly("generation", &Population::generation);

    py::class_<PopulationRun>(m, "PopulationRun")
        .def_readonly("population", &PopulationRun::population)
        .def_readonly("elite_curve", &PopulationRun::elite_curve)
        .def_readonly("mean_curve", &PopulationRun::mean_curve);

    m.def("evolve", &evolve, py::arg("analogies"), py::arg("scene_a"),
          py::arg("scene_b"), py::arg("params") = EvolutionParams{},
          py::call_guard<py::gil_scoped_release>());
}
