#include <algorithm>
#include <random>

#include <doctest.h>

#include "chimera/relations.hpp"
#include "support/fixtures.hpp"

using namespace chimera;

namespace {

GraphicObject rect_part(const std::string& name, Vec2 lo, Vec2 hi) {
    GraphicObject obj;
    obj.name = name;
    obj.shape = Shape::polygon({{lo.x, lo.y}, {hi.x, lo.y}, {hi.x, hi.y}, {lo.x, hi.y}});
    return obj;
}

Scene two_part_scene(GraphicObject a, GraphicObject b) {
    Scene s;
    s.concept_name = "t";
    s.root.name = "t";
    s.root.children.push_back(std::move(a));
    s.root.children.push_back(std::move(b));
    return s;
}

double eval(const Scene& s, const std::string& a, RelationType t,
            const std::string& b) {
    return eval_relation(s, {a, t, b});
}

}  // namespace

TEST_CASE("directional relations are strict bounding-box separations") {
    auto s = two_part_scene(rect_part("a", {0, 0}, {10, 10}),
                            rect_part("b", {0, 20}, {10, 30}));
    CHECK(eval(s, "t/a", RelationType::Above, "t/b") == 1.0);
    CHECK(eval(s, "t/b", RelationType::Below, "t/a") == 1.0);
    CHECK(eval(s, "t/b", RelationType::Above, "t/a") == 0.0);

    auto same = two_part_scene(rect_part("a", {0, 0}, {10, 10}),
                               rect_part("b", {0, 0}, {10, 10}));
    CHECK(eval(same, "t/a", RelationType::Above, "t/b") == 0.0);
    CHECK(eval(same, "t/a", RelationType::Overlaps, "t/b") == 1.0);

    auto lr = two_part_scene(rect_part("a", {0, 0}, {10, 10}),
                             rect_part("b", {20, 0}, {30, 10}));
    CHECK(eval(lr, "t/a", RelationType::LeftOf, "t/b") == 1.0);
    CHECK(eval(lr, "t/b", RelationType::RightOf, "t/a") == 1.0);
    CHECK(eval(lr, "t/a", RelationType::Overlaps, "t/b") == 0.0);
}

TEST_CASE("part-of relations need intersection plus the right half") {
    auto s = two_part_scene(rect_part("a", {2, 12}, {8, 18}),
                            rect_part("b", {0, 0}, {10, 20}));
    CHECK(eval(s, "t/a", RelationType::LowerPartOf, "t/b") == 1.0);
    CHECK(eval(s, "t/a", RelationType::UpperPartOf, "t/b") == 0.0);

    auto apart = two_part_scene(rect_part("a", {2, 40}, {8, 50}),
                                rect_part("b", {0, 0}, {10, 20}));
    CHECK(eval(apart, "t/a", RelationType::LowerPartOf, "t/b") == 0.0);
}

TEST_CASE("inside counts the exact fraction of sample points") {
    // Width-zero polyline: all 200 samples sit on the outline at stratified
    // arc positions, so exactly half land in the left half-plane region.
    GraphicObject wire;
    wire.name = "a";
    Style hair;
    hair.stroke_width = 0.0;
    wire.shape = Shape::polyline({{0, 0}, {100, 0}}, hair);
    auto s = two_part_scene(std::move(wire), rect_part("b", {-1, -10}, {50, 10}));
    CHECK(eval(s, "t/a", RelationType::Inside, "t/b") == 0.5);

    auto in = two_part_scene(rect_part("a", {4, 4}, {6, 6}),
                             rect_part("b", {0, 0}, {10, 10}));
    CHECK(eval(in, "t/a", RelationType::Inside, "t/b") == 1.0);
    auto out = two_part_scene(rect_part("a", {40, 40}, {60, 60}),
                              rect_part("b", {0, 0}, {10, 10}));
    CHECK(eval(out, "t/a", RelationType::Inside, "t/b") == 0.0);
}

TEST_CASE("inside ignores the subject's own geometry inside the object") {
    auto pig = testutil::fixture_scene("pig");
    CHECK(eval(pig, "pig/head/eye", RelationType::Inside, "pig/head") == 1.0);
    CHECK(eval(pig, "pig/head/nose", RelationType::Inside, "pig/head") == 1.0);
}

TEST_CASE("evaluator outputs stay in range; binary ones are 0 or 1") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> coord(-50.0, 50.0);
    for (int trial = 0; trial < 40; ++trial) {
        Vec2 alo{coord(rng), coord(rng)};
        Vec2 ahi{alo.x + 1 + std::abs(coord(rng)), alo.y + 1 + std::abs(coord(rng))};
        Vec2 blo{coord(rng), coord(rng)};
        Vec2 bhi{blo.x + 1 + std::abs(coord(rng)), blo.y + 1 + std::abs(coord(rng))};
        auto s = two_part_scene(rect_part("a", alo, ahi), rect_part("b", blo, bhi));
        for (auto type :
             {RelationType::Above, RelationType::Below, RelationType::LeftOf,
              RelationType::RightOf, RelationType::LowerPartOf,
              RelationType::UpperPartOf, RelationType::Overlaps}) {
            double v = eval(s, "t/a", type, "t/b");
            CHECK((v == 0.0 || v == 1.0));
        }
        double vin = eval(s, "t/a", RelationType::Inside, "t/b");
        CHECK(vin >= 0.0);
        CHECK(vin <= 1.0);

        // antisymmetric pairs share their separation verdicts
        CHECK(eval(s, "t/a", RelationType::Above, "t/b") ==
              eval(s, "t/b", RelationType::Below, "t/a"));
        CHECK(eval(s, "t/a", RelationType::LeftOf, "t/b") ==
              eval(s, "t/b", RelationType::RightOf, "t/a"));
    }
}

TEST_CASE("rigid translation leaves every relation score unchanged") {
    for (const char* name : {"pig", "angel", "cactus"}) {
        auto scene = testutil::fixture_scene(name);
        auto scores = relation_scores(scene);
        auto moved = scene;
        moved.root.offset += {137.25, -58.5};
        auto moved_scores = relation_scores(moved);
        REQUIRE(scores.size() == moved_scores.size());
        for (std::size_t i = 0; i < scores.size(); ++i)
            CHECK(scores[i].value == moved_scores[i].value);
    }
}

TEST_CASE("the fitness mean matches direct computation to 1e-12") {
    std::mt19937 rng(4242);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> len(1, 60);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> scores;
        for (int i = 0, n = len(rng); i < n; ++i) scores.push_back(unit(rng));
        long double direct = 0.0;
        for (double v : scores) direct += v;
        direct /= scores.size();
        CHECK(std::abs(mean_satisfaction(scores) - static_cast<double>(direct)) <
              1e-12);
    }
}

TEST_CASE("fitness is the mean over all relations") {
    auto mixed = two_part_scene(rect_part("a", {0, 0}, {10, 10}),
                                rect_part("b", {0, 20}, {10, 30}));
    mixed.relations.push_back({"t/a", RelationType::Above, "t/b"});   // 1.0
    mixed.relations.push_back({"t/a", RelationType::Below, "t/b"});   // 0.0
    CHECK(fitness(mixed) == 0.5);

    Scene none = two_part_scene(rect_part("a", {0, 0}, {1, 1}),
                                rect_part("b", {5, 5}, {6, 6}));
    CHECK(fitness(none) == 0.0);
    CHECK(is_degenerate(none));
}

TEST_CASE("fitness is permutation-invariant over the relation list") {
    auto pig = testutil::fixture_scene("pig");
    double before = fitness(pig);
    std::mt19937 rng(7);
    std::shuffle(pig.relations.begin(), pig.relations.end(), rng);
    CHECK(fitness(pig) == before);
}

TEST_CASE("base fixtures satisfy every declared relation exactly") {
    for (const char* name : {"pig", "angel", "cactus"}) {
        auto scene = testutil::fixture_scene(name);
        for (const auto& rs : relation_scores(scene)) {
            INFO(name << ": " << rs.relation.a << " " << to_string(rs.relation.type)
                         << " " << rs.relation.b);
            CHECK(rs.value == 1.0);
        }
        CHECK(fitness(scene) == 1.0);
    }
}
