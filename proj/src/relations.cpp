#include "chimera/relations.hpp"

#include <algorithm>

namespace chimera {
namespace {

bool is_strict_subtree(std::string_view ancestor, std::string_view path) {
    return path.size() > ancestor.size() + 1 &&
           path.substr(0, ancestor.size()) == ancestor &&
           path[ancestor.size()] == '/';
}

/// Endpoint extent for the box tests. When the endpoints are nested, the
/// ancestor is measured without the other endpoint's subtree; otherwise a
/// composed child could never satisfy a relation against its own anchor.
Box endpoint_box(const Scene& scene, std::string_view path,
                 std::string_view other) {
    if (is_strict_subtree(path, other))
        return scene.bounding_box_excluding(path, other);
    return scene.bounding_box(path);
}

}  // namespace

double eval_relation(const Scene& scene, const SceneRelation& rel) {
    if (rel.type == RelationType::Inside) {
        auto pts = scene.sample_points(rel.a, kInsideSampleCount, kInsideSampleSeed);
        if (pts.empty()) return 0.0;
        std::size_t in = 0;
        for (const auto& p : pts)
            if (scene.region_contains(rel.b, p, rel.a)) ++in;
        return static_cast<double>(in) / static_cast<double>(pts.size());
    }

    Box a = endpoint_box(scene, rel.a, rel.b);
    Box b = endpoint_box(scene, rel.b, rel.a);
    switch (rel.type) {
        case RelationType::Above: return a.hi.y < b.lo.y ? 1.0 : 0.0;
        case RelationType::Below: return a.lo.y > b.hi.y ? 1.0 : 0.0;
        case RelationType::LeftOf: return a.hi.x < b.lo.x ? 1.0 : 0.0;
        case RelationType::RightOf: return a.lo.x > b.hi.x ? 1.0 : 0.0;
        case RelationType::LowerPartOf:
            return a.intersects(b) && a.center().y > b.center().y ? 1.0 : 0.0;
        case RelationType::UpperPartOf:
            return a.intersects(b) && a.center().y < b.center().y ? 1.0 : 0.0;
        case RelationType::Overlaps: return a.intersects(b) ? 1.0 : 0.0;
        case RelationType::Inside: break;  // handled above
    }
    return 0.0;
}

std::vector<RelationScore> relation_scores(const Scene& scene) {
    std::vector<RelationScore> out;
    out.reserve(scene.relations.size());
    for (const auto& rel : scene.relations)
        out.push_back({rel, eval_relation(scene, rel)});
    return out;
}

double mean_satisfaction(std::vector<double> values) {
    if (values.empty()) return 0.0;
    std::sort(values.begin(), values.end());
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

double fitness(const Scene& scene) {
    if (scene.relations.empty()) return 0.0;
    std::vector<double> values;
    values.reserve(scene.relations.size());
    for (const auto& rel : scene.relations)
        values.push_back(eval_relation(scene, rel));
    return mean_satisfaction(std::move(values));
}

}  // namespace chimera
