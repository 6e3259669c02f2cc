#include <cmath>

#include <doctest.h>

#include "chimera/errors.hpp"
#include "chimera/raster.hpp"
#include "chimera/scene.hpp"
#include "support/fixtures.hpp"

using namespace chimera;

namespace {

Scene one_circle_scene() {
    Scene s;
    s.concept_name = "dot";
    s.canvas = {10, 10};
    s.root.name = "dot";
    s.root.shape = Shape::ellipse({0, 0}, {1, 1});
    return s;
}

}  // namespace

TEST_CASE("minimal one-object scene loads and is degenerate-friendly") {
    auto s = load_scene(R"({
      "concept": "dot",
      "canvas": [100, 100],
      "root": {"name": "dot", "offset": [50, 50],
               "shape": {"kind": "ellipse", "center": [0,0], "radii": [5,5]}}
    })");
    CHECK(s.concept_name == "dot");
    CHECK(s.relations.empty());
    CHECK(s.all_paths() == std::vector<std::string>{"dot"});
}

TEST_CASE("relations naming missing parts are rejected") {
    CHECK_THROWS_AS(load_scene(R"({
      "concept": "x",
      "root": {"name": "x", "shape": {"kind": "ellipse", "center": [0,0], "radii": [5,5]}},
      "relations": [{"a": "x/ghost", "type": "above", "b": "x"}]
    })"),
                    DanglingRelationError);
}

TEST_CASE("pig fixture loads with its full part inventory") {
    auto pig = testutil::fixture_scene("pig");
    auto paths = pig.all_paths();
    CHECK(paths.size() >= 10);
    CHECK(pig.find("pig/head/eye") != nullptr);
    CHECK(pig.find("pig/head/nose") != nullptr);
    CHECK(pig.find("pig/tail") != nullptr);
    CHECK(pig.relations.size() == 9);
    pig.validate();
}

TEST_CASE("scene json round-trips on its canonical form") {
    for (const char* name : {"pig", "angel", "cactus"}) {
        auto first = save_scene(testutil::fixture_scene(name));
        auto second = save_scene(load_scene(first));
        CHECK(first == second);
    }
}

TEST_CASE("absolute positions sum ancestor offsets") {
    Scene s;
    s.root.name = "a";
    s.root.offset = {0, 0};
    GraphicObject b;
    b.name = "b";
    b.offset = {3, 4};
    s.root.children.push_back(b);
    CHECK(s.absolute_position("a/b") == Vec2{3, 4});

    s.root.offset = {1, 1};
    s.root.children[0].offset = {2, 0};
    GraphicObject c;
    c.name = "c";
    c.offset = {0, 5};
    s.root.children[0].children.push_back(c);
    CHECK(s.absolute_position("a/b/c") == Vec2{3, 6});

    // moving the parent rigidly moves descendants
    auto before = s.absolute_position("a/b/c");
    s.root.offset += {10, 0};
    auto after = s.absolute_position("a/b/c");
    CHECK(after.x == before.x + 10);
    CHECK(after.y == before.y);

    CHECK_THROWS_AS(s.absolute_position("a/zzz"), UnknownPathError);
}

TEST_CASE("bounding box of a unit circle at the origin") {
    auto s = one_circle_scene();
    Box b = s.bounding_box("dot");
    CHECK(b.lo.x == doctest::Approx(-1.0));
    CHECK(b.lo.y == doctest::Approx(-1.0));
    CHECK(b.hi.x == doctest::Approx(1.0));
    CHECK(b.hi.y == doctest::Approx(1.0));
}

TEST_CASE("parent bounding boxes contain their children") {
    auto pig = testutil::fixture_scene("pig");
    Box head = pig.bounding_box("pig/head");
    for (const char* child : {"pig/head/eye", "pig/head/ear", "pig/head/nose"}) {
        Box cb = pig.bounding_box(child);
        CHECK(head.lo.x <= cb.lo.x);
        CHECK(head.lo.y <= cb.lo.y);
        CHECK(head.hi.x >= cb.hi.x);
        CHECK(head.hi.y >= cb.hi.y);
    }
}

TEST_CASE("sample points stay within the bounding box and are deterministic") {
    auto s = one_circle_scene();
    auto pts = s.sample_points("dot", 100, 7);
    CHECK(pts.size() == 100);
    Box b = s.bounding_box("dot");
    for (const auto& p : pts) CHECK(b.contains(p));
    CHECK(pts == s.sample_points("dot", 100, 7));

    Scene bare;
    bare.root.name = "empty";
    CHECK_THROWS_AS(bare.sample_points("empty", 10, 1), EmptyGeometryError);
    CHECK_THROWS_AS(bare.bounding_box("empty"), EmptyGeometryError);
}

TEST_CASE("empty scenes rasterize to white, full rectangles to black") {
    Scene blank;
    blank.concept_name = "blank";
    blank.canvas = {100, 100};
    blank.root.name = "blank";
    auto white = rasterize(blank, 32, 32);
    for (auto px : white.pixels) CHECK(px == 255);

    Scene full;
    full.canvas = {100, 100};
    full.root.name = "full";
    Style ink;
    ink.fill = Color{0, 0, 0};
    ink.stroke = Color{0, 0, 0};
    ink.stroke_width = 2.0;
    full.root.shape =
        Shape::polygon({{0, 0}, {100, 0}, {100, 100}, {0, 100}}, ink);
    auto black = rasterize(full, 32, 32);
    for (auto px : black.pixels) CHECK(px == 0);

    CHECK(rasterize(full, 32, 32) == black);
}

TEST_CASE("rasterization is resolution-consistent") {
    for (const char* name : {"pig", "angel", "cactus"}) {
        auto scene = testutil::fixture_scene(name);
        auto fine = downsample2x(rasterize(scene, 512, 512));
        auto coarse = rasterize(scene, 256, 256);
        REQUIRE(fine.pixels.size() == coarse.pixels.size());
        double err = 0.0;
        for (std::size_t i = 0; i < fine.pixels.size(); ++i)
            err += std::abs(static_cast<int>(fine.pixels[i]) -
                            static_cast<int>(coarse.pixels[i]));
        err /= static_cast<double>(fine.pixels.size());
        CHECK(err <= 2.0);
    }
}

TEST_CASE("sibling name duplicates fail validation") {
    Scene s;
    s.root.name = "r";
    GraphicObject a;
    a.name = "x";
    s.root.children.push_back(a);
    s.root.children.push_back(a);
    CHECK_THROWS_AS(s.validate(), SchemaError);
}

TEST_CASE("unknown shape kinds and malformed documents raise schema errors") {
    CHECK_THROWS_AS(load_scene("not json"), SchemaError);
    CHECK_THROWS_AS(load_scene(R"({"root": {"name": "x",
        "shape": {"kind": "star", "points": []}}})"),
                    SchemaError);
    CHECK_THROWS_AS(load_scene(R"({"root": {"name": "x",
        "shape": {"kind": "polygon", "points": [[0, 0]]}}})"),
                    SchemaError);
}
