#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chimera/geometry.hpp"

namespace chimera {

struct Style {
    double stroke_width = 3.0;
    std::optional<Color> stroke = Color{0, 0, 0};
    std::optional<Color> fill;

    bool operator==(const Style&) const = default;
};

struct PathCmd {
    enum class Op { Move, Line, Cubic, Close };
    Op op = Op::Move;
    Vec2 c1{};  // cubic control points
    Vec2 c2{};
    Vec2 p{};   // target point (unused for Close)

    bool operator==(const PathCmd&) const = default;
};

/// A drawable primitive in object-local coordinates.
struct Shape {
    enum class Kind { Polyline, Polygon, Ellipse, Path };

    Kind kind = Kind::Polygon;
    std::vector<Vec2> points;     // polyline / polygon vertices
    Vec2 center{};                // ellipse
    Vec2 radii{};
    std::vector<PathCmd> commands;  // path
    bool closed = false;
    Style style;

    bool operator==(const Shape&) const = default;

    static Shape polyline(std::vector<Vec2> pts, Style style = {});
    static Shape polygon(std::vector<Vec2> pts, Style style = {});
    static Shape ellipse(Vec2 center, Vec2 radii, Style style = {});
    static Shape path(std::vector<PathCmd> cmds, Style style = {});

    void validate(const std::string& where) const;
    Box local_bbox() const;

    struct Outline {
        std::vector<Vec2> pts;
        bool closed = false;
    };
    /// Flattened outline chains (curves subdivided, subpaths separated).
    std::vector<Outline> outlines() const;

    /// Interior membership in local coordinates. Closed shapes use analytic
    /// (even-odd) containment; open polylines use a stroke-width band.
    bool contains_local(Vec2 pt) const;
    bool has_interior() const;
};

/// Node of the composite object tree. Children ride on the parent's offset,
/// so moving an object rigidly moves its whole subtree.
struct GraphicObject {
    std::string name;
    std::optional<Shape> shape;
    Vec2 offset{};
    std::vector<GraphicObject> children;

    bool operator==(const GraphicObject&) const = default;
};

enum class RelationType {
    Above,
    Below,
    LeftOf,
    RightOf,
    Inside,
    LowerPartOf,
    UpperPartOf,
    Overlaps,
};

const char* to_string(RelationType type);
std::optional<RelationType> relation_from_string(std::string_view name);

/// Typed spatial relation between two parts, addressed by slash-joined
/// object paths starting at the root's name.
struct SceneRelation {
    std::string a;
    RelationType type = RelationType::Above;
    std::string b;

    bool operator==(const SceneRelation&) const = default;
};

struct Scene {
    std::string concept_name;
    Vec2 canvas{1000.0, 1000.0};
    GraphicObject root;
    std::vector<SceneRelation> relations;

    bool operator==(const Scene&) const = default;

    const GraphicObject* find(std::string_view path) const;
    GraphicObject* find_mut(std::string_view path);

    /// Pre-order listing of every object path, root first.
    std::vector<std::string> all_paths() const;

    /// Sum of offsets along the ancestor chain. Throws UnknownPathError.
    Vec2 absolute_position(std::string_view path) const;

    /// Covers all geometry of the object and its descendants, in absolute
    /// coordinates. Throws EmptyGeometryError when the subtree has no shape.
    Box bounding_box(std::string_view path) const;

    /// Same box with `exclude_subtree` (and everything below it) left out.
    /// Falls back to the object's position when the exclusion removes all
    /// geometry.
    Box bounding_box_excluding(std::string_view path,
                               std::string_view exclude_subtree) const;

    /// Deterministic points on the subtree's outlines and interiors:
    /// outline positions are arc-length stratified, interior positions are
    /// seeded rejection samples drawn in each shape's local frame.
    std::vector<Vec2> sample_points(std::string_view path, std::size_t n,
                                    std::uint64_t seed) const;

    /// Whether `pt` (absolute) lies inside any shape of the subtree at
    /// `path`, skipping `exclude_subtree` and everything below it.
    bool region_contains(std::string_view path, Vec2 pt,
                         std::string_view exclude_subtree = {}) const;

    bool has_part_named(std::string_view name) const;

    /// Tree integrity: valid names, sibling uniqueness, positive canvas,
    /// resolvable relation endpoints, well-formed shapes.
    void validate() const;
};

Scene load_scene(std::string_view json_text);
std::string save_scene(const Scene& scene);

/// Rescales every offset and shape, including stroke widths (by the average
/// axis factor). Used to normalize imported fixtures onto the canvas.
void scale_object(GraphicObject& obj, double sx, double sy);
void scale_scene(Scene& scene, double sx, double sy);

std::string parent_path(std::string_view path);
std::string leaf_name(std::string_view path);

}  // namespace chimera
