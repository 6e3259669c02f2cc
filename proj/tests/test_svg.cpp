#include <cmath>

#include <doctest.h>

#include "chimera/errors.hpp"
#include "chimera/svg.hpp"
#include "support/fixtures.hpp"

using namespace chimera;

namespace {

double max_geometry_gap(const GraphicObject& a, const GraphicObject& b);

double shape_gap(const Shape& a, const Shape& b) {
    double gap = 0.0;
    auto upd = [&](Vec2 x, Vec2 y) {
        gap = std::max({gap, std::abs(x.x - y.x), std::abs(x.y - y.y)});
    };
    REQUIRE(a.kind == b.kind);
    REQUIRE(a.points.size() == b.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i) upd(a.points[i], b.points[i]);
    upd(a.center, b.center);
    upd(a.radii, b.radii);
    REQUIRE(a.commands.size() == b.commands.size());
    for (std::size_t i = 0; i < a.commands.size(); ++i) {
        upd(a.commands[i].c1, b.commands[i].c1);
        upd(a.commands[i].c2, b.commands[i].c2);
        upd(a.commands[i].p, b.commands[i].p);
    }
    return gap;
}

double max_geometry_gap(const GraphicObject& a, const GraphicObject& b) {
    REQUIRE(a.name == b.name);
    REQUIRE(a.children.size() == b.children.size());
    REQUIRE(a.shape.has_value() == b.shape.has_value());
    double gap = std::max(std::abs(a.offset.x - b.offset.x),
                          std::abs(a.offset.y - b.offset.y));
    if (a.shape) gap = std::max(gap, shape_gap(*a.shape, *b.shape));
    for (std::size_t i = 0; i < a.children.size(); ++i)
        gap = std::max(gap, max_geometry_gap(a.children[i], b.children[i]));
    return gap;
}

}  // namespace

TEST_CASE("nested groups become the object tree") {
    auto scene = import_svg(R"(<svg viewBox="0 0 100 100">
      <g id="pig"><g id="head"><ellipse cx="5" cy="5" rx="4" ry="3"/></g></g>
    </svg>)");
    CHECK(scene.root.name == "pig");
    REQUIRE(scene.root.children.size() == 1);
    CHECK(scene.root.children[0].name == "head");
    CHECK(scene.root.children[0].shape.has_value());
    CHECK(scene.concept_name == "pig");
}

TEST_CASE("unsupported elements are refused") {
    CHECK_THROWS_AS(import_svg(R"(<svg><g id="a"><image href="x.png"/></g></svg>)"),
                    UnsupportedElementError);
    CHECK_THROWS_AS(import_svg(R"svg(<svg><g id="a" transform="scale(2)"/></svg>)svg"),
                    UnsupportedElementError);
    CHECK_THROWS_AS(import_svg(R"(<svg><g id="a"><path d="M 0 0 A 1 1 0 0 0 2 2"/></g></svg>)"),
                    UnsupportedElementError);
}

TEST_CASE("groups without ids are refused") {
    CHECK_THROWS_AS(import_svg("<svg><g><rect width=\"5\" height=\"5\"/></g></svg>"),
                    MissingIdError);
}

TEST_CASE("group translate becomes the object offset") {
    auto scene = import_svg(R"svg(<svg viewBox="0 0 100 100">
      <g id="a" transform="translate(7, 9)"><rect x="0" y="0" width="5" height="5"/></g>
    </svg>)svg");
    CHECK(scene.root.offset.x == doctest::Approx(7));
    CHECK(scene.root.offset.y == doctest::Approx(9));
}

TEST_CASE("export bytes are deterministic") {
    auto pig = testutil::fixture_scene("pig");
    CHECK(export_svg(pig) == export_svg(pig));
}

TEST_CASE("export then import keeps geometry within 1e-6 units") {
    for (const char* name : {"pig", "angel", "cactus"}) {
        auto scene = testutil::fixture_scene(name);
        auto round = import_svg(export_svg(scene));
        CHECK(round.root.name == scene.root.name);
        CHECK(max_geometry_gap(scene.root, round.root) < 1e-6);
    }
}

TEST_CASE("shape-less container objects survive the svg round-trip") {
    Scene s;
    s.concept_name = "box";
    s.root.name = "box";
    GraphicObject inner;
    inner.name = "inner";
    inner.offset = {5, 5};
    inner.shape = Shape::polygon({{0, 0}, {4, 0}, {4, 4}, {0, 4}});
    s.root.children.push_back(inner);
    auto round = import_svg(export_svg(s));
    CHECK(round.root.name == "box");
    CHECK_FALSE(round.root.shape.has_value());
    REQUIRE(round.root.children.size() == 1);
    CHECK(round.root.children[0].name == "inner");
}

TEST_CASE("path commands survive the svg round-trip") {
    Scene s;
    s.concept_name = "curve";
    s.root.name = "curve";
    Style st;
    st.fill = std::nullopt;
    s.root.shape = Shape::path(
        {
            {PathCmd::Op::Move, {}, {}, {1, 2}},
            {PathCmd::Op::Cubic, {2, 3}, {4, 5}, {6, 7}},
            {PathCmd::Op::Line, {}, {}, {8, 1}},
            {PathCmd::Op::Close},
        },
        st);
    auto round = import_svg(export_svg(s));
    REQUIRE(round.root.shape.has_value());
    CHECK(max_geometry_gap(s.root, round.root) < 1e-6);
    CHECK(round.root.shape->closed);
}
