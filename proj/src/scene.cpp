#include "chimera/scene.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "chimera/errors.hpp"

namespace chimera {
namespace {

constexpr int kEllipseSegments = 64;
constexpr int kCubicSegments = 16;

bool valid_token(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (std::isspace(static_cast<unsigned char>(c)) || c == '/') return false;
    return true;
}

double segment_distance(Vec2 p, Vec2 a, Vec2 b) {
    Vec2 ab = b - a;
    double len2 = dot(ab, ab);
    double t = len2 > 0.0 ? std::clamp(dot(p - a, ab) / len2, 0.0, 1.0) : 0.0;
    Vec2 proj = a + ab * t;
    return norm(p - proj);
}

/// Even-odd crossing test over a closed point loop.
bool point_in_loop(Vec2 p, const std::vector<Vec2>& pts) {
    bool in = false;
    for (std::size_t i = 0, j = pts.size() - 1; i < pts.size(); j = i++) {
        const Vec2& pi = pts[i];
        const Vec2& pj = pts[j];
        if ((pi.y > p.y) != (pj.y > p.y)) {
            double x = pj.x + (p.y - pj.y) / (pi.y - pj.y) * (pi.x - pj.x);
            if (p.x < x) in = !in;
        }
    }
    return in;
}

void flatten_cubic(Vec2 from, const PathCmd& cmd, std::vector<Vec2>& out) {
    for (int i = 1; i <= kCubicSegments; ++i) {
        double t = static_cast<double>(i) / kCubicSegments;
        double u = 1.0 - t;
        Vec2 pt = from * (u * u * u) + cmd.c1 * (3 * u * u * t) +
                  cmd.c2 * (3 * u * t * t) + cmd.p * (t * t * t);
        out.push_back(pt);
    }
}

}  // namespace

Shape Shape::polyline(std::vector<Vec2> pts, Style style) {
    Shape s;
    s.kind = Kind::Polyline;
    s.points = std::move(pts);
    s.closed = false;
    s.style = style;
    return s;
}

Shape Shape::polygon(std::vector<Vec2> pts, Style style) {
    Shape s;
    s.kind = Kind::Polygon;
    s.points = std::move(pts);
    s.closed = true;
    s.style = style;
    return s;
}

Shape Shape::ellipse(Vec2 center, Vec2 radii, Style style) {
    Shape s;
    s.kind = Kind::Ellipse;
    s.center = center;
    s.radii = radii;
    s.closed = true;
    s.style = style;
    return s;
}

Shape Shape::path(std::vector<PathCmd> cmds, Style style) {
    Shape s;
    s.kind = Kind::Path;
    s.commands = std::move(cmds);
    s.closed = std::any_of(s.commands.begin(), s.commands.end(),
                           [](const PathCmd& c) { return c.op == PathCmd::Op::Close; });
    s.style = style;
    return s;
}

void Shape::validate(const std::string& where) const {
    switch (kind) {
        case Kind::Polyline:
        case Kind::Polygon:
            if (points.size() < 2)
                throw SchemaError(where, "polyline/polygon needs at least 2 points");
            if (kind == Kind::Polygon && !closed)
                throw SchemaError(where, "polygon must be closed");
            if (kind == Kind::Polyline && closed)
                throw SchemaError(where, "polyline cannot be closed");
            break;
        case Kind::Ellipse:
            if (radii.x <= 0.0 || radii.y <= 0.0)
                throw SchemaError(where, "ellipse radii must be positive");
            break;
        case Kind::Path: {
            if (commands.empty() || commands.front().op != PathCmd::Op::Move)
                throw SchemaError(where, "path must start with a move");
            for (const auto& c : commands) {
                if (c.op != PathCmd::Op::Move && c.op != PathCmd::Op::Line &&
                    c.op != PathCmd::Op::Cubic && c.op != PathCmd::Op::Close)
                    throw SchemaError(where, "path segments are move/line/cubic/close");
            }
            break;
        }
    }
    if (style.stroke_width < 0.0)
        throw SchemaError(where, "stroke width cannot be negative");
}

Box Shape::local_bbox() const {
    Box box;
    switch (kind) {
        case Kind::Polyline:
        case Kind::Polygon:
            for (const auto& p : points) box.extend(p);
            break;
        case Kind::Ellipse:
            box.extend(center - radii);
            box.extend(center + radii);
            break;
        case Kind::Path:
            for (const auto& c : commands) {
                if (c.op == PathCmd::Op::Close) continue;
                if (c.op == PathCmd::Op::Cubic) {
                    box.extend(c.c1);
                    box.extend(c.c2);
                }
                box.extend(c.p);
            }
            break;
    }
    return box;
}

std::vector<Shape::Outline> Shape::outlines() const {
    std::vector<Outline> out;
    switch (kind) {
        case Kind::Polyline:
        case Kind::Polygon:
            out.push_back({points, kind == Kind::Polygon});
            break;
        case Kind::Ellipse: {
            Outline o;
            o.closed = true;
            for (int i = 0; i < kEllipseSegments; ++i) {
                double t = 2.0 * M_PI * i / kEllipseSegments;
                o.pts.push_back(
                    {center.x + radii.x * std::cos(t), center.y + radii.y * std::sin(t)});
            }
            out.push_back(std::move(o));
            break;
        }
        case Kind::Path: {
            Outline cur;
            Vec2 pen{};
            for (const auto& c : commands) {
                switch (c.op) {
                    case PathCmd::Op::Move:
                        if (cur.pts.size() >= 2) out.push_back(cur);
                        cur = Outline{};
                        cur.pts.push_back(c.p);
                        pen = c.p;
                        break;
                    case PathCmd::Op::Line:
                        cur.pts.push_back(c.p);
                        pen = c.p;
                        break;
                    case PathCmd::Op::Cubic:
                        flatten_cubic(pen, c, cur.pts);
                        pen = c.p;
                        break;
                    case PathCmd::Op::Close:
                        cur.closed = true;
                        if (cur.pts.size() >= 2) out.push_back(cur);
                        cur = Outline{};
                        break;
                }
            }
            if (cur.pts.size() >= 2) out.push_back(cur);
            break;
        }
    }
    return out;
}

bool Shape::has_interior() const {
    if (closed) return true;
    return style.stroke_width > 0.0;
}

bool Shape::contains_local(Vec2 pt) const {
    switch (kind) {
        case Kind::Ellipse: {
            double nx = (pt.x - center.x) / radii.x;
            double ny = (pt.y - center.y) / radii.y;
            return nx * nx + ny * ny <= 1.0;
        }
        case Kind::Polygon:
            return point_in_loop(pt, points);
        case Kind::Polyline: {
            double half = style.stroke_width / 2.0;
            if (half <= 0.0) return false;
            for (std::size_t i = 0; i + 1 < points.size(); ++i)
                if (segment_distance(pt, points[i], points[i + 1]) <= half)
                    return true;
            return false;
        }
        case Kind::Path: {
            if (closed) {
                bool in = false;  // combined even-odd across subpaths
                for (const auto& o : outlines())
                    if (o.pts.size() >= 3 && point_in_loop(pt, o.pts)) in = !in;
                return in;
            }
            double half = style.stroke_width / 2.0;
            if (half <= 0.0) return false;
            for (const auto& o : outlines())
                for (std::size_t i = 0; i + 1 < o.pts.size(); ++i)
                    if (segment_distance(pt, o.pts[i], o.pts[i + 1]) <= half)
                        return true;
            return false;
        }
    }
    return false;
}

const char* to_string(RelationType type) {
    switch (type) {
        case RelationType::Above: return "above";
        case RelationType::Below: return "below";
        case RelationType::LeftOf: return "leftOf";
        case RelationType::RightOf: return "rightOf";
        case RelationType::Inside: return "inside";
        case RelationType::LowerPartOf: return "lowerPartOf";
        case RelationType::UpperPartOf: return "upperPartOf";
        case RelationType::Overlaps: return "overlaps";
    }
    return "?";
}

std::optional<RelationType> relation_from_string(std::string_view name) {
    static const std::pair<std::string_view, RelationType> table[] = {
        {"above", RelationType::Above},
        {"below", RelationType::Below},
        {"leftOf", RelationType::LeftOf},
        {"rightOf", RelationType::RightOf},
        {"inside", RelationType::Inside},
        {"lowerPartOf", RelationType::LowerPartOf},
        {"upperPartOf", RelationType::UpperPartOf},
        {"overlaps", RelationType::Overlaps},
    };
    for (const auto& [n, t] : table)
        if (n == name) return t;
    return std::nullopt;
}

// --- path resolution ---------------------------------------------------

namespace {

std::vector<std::string_view> split_path(std::string_view path) {
    std::vector<std::string_view> segs;
    std::size_t start = 0;
    while (start <= path.size()) {
        auto slash = path.find('/', start);
        if (slash == std::string_view::npos) {
            segs.push_back(path.substr(start));
            break;
        }
        segs.push_back(path.substr(start, slash - start));
        start = slash + 1;
    }
    return segs;
}

const GraphicObject* walk(const GraphicObject& root, std::string_view path) {
    auto segs = split_path(path);
    if (segs.empty() || segs[0] != root.name) return nullptr;
    const GraphicObject* cur = &root;
    for (std::size_t i = 1; i < segs.size(); ++i) {
        const GraphicObject* next = nullptr;
        for (const auto& child : cur->children)
            if (child.name == segs[i]) {
                next = &child;
                break;
            }
        if (!next) return nullptr;
        cur = next;
    }
    return cur;
}

struct PlacedShape {
    const Shape* shape;
    Vec2 origin;  // absolute position of the owning object
};

void collect_shapes(const GraphicObject& obj, Vec2 base, std::string prefix,
                    std::string_view exclude, std::vector<PlacedShape>& out) {
    std::string path = prefix.empty() ? obj.name : prefix + "/" + obj.name;
    if (!exclude.empty() && path == exclude) return;
    Vec2 origin = base + obj.offset;
    if (obj.shape) out.push_back({&*obj.shape, origin});
    for (const auto& child : obj.children)
        collect_shapes(child, origin, path, exclude, out);
}

double outline_length(const std::vector<Shape::Outline>& chains) {
    double total = 0.0;
    for (const auto& chain : chains) {
        for (std::size_t i = 0; i + 1 < chain.pts.size(); ++i)
            total += norm(chain.pts[i + 1] - chain.pts[i]);
        if (chain.closed && chain.pts.size() >= 2)
            total += norm(chain.pts.front() - chain.pts.back());
    }
    return total;
}

struct ArcPoint {
    Vec2 p;
    Vec2 dir;
};

/// Point (and direction) at arc length `s` along the chains.
ArcPoint point_at_arc(const std::vector<Shape::Outline>& chains, double s) {
    for (const auto& chain : chains) {
        std::size_t nseg = chain.pts.size() - 1 + (chain.closed ? 1 : 0);
        for (std::size_t i = 0; i < nseg; ++i) {
            Vec2 a = chain.pts[i];
            Vec2 b = chain.pts[(i + 1) % chain.pts.size()];
            double len = norm(b - a);
            if (s <= len || (i + 1 == nseg && &chain == &chains.back())) {
                double t = len > 0.0 ? std::clamp(s / len, 0.0, 1.0) : 0.0;
                Vec2 dir = len > 0.0 ? (b - a) * (1.0 / len) : Vec2{1.0, 0.0};
                return {a + (b - a) * t, dir};
            }
            s -= len;
        }
    }
    return {chains.front().pts.front(), {1.0, 0.0}};
}

/// Largest-remainder apportionment of `total` by `weights`.
std::vector<std::size_t> apportion(const std::vector<double>& weights,
                                   std::size_t total) {
    std::vector<std::size_t> out(weights.size(), 0);
    double sum = 0.0;
    for (double w : weights) sum += w;
    if (sum <= 0.0 || total == 0) return out;
    std::vector<std::pair<double, std::size_t>> rema;
    std::size_t assigned = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        double exact = total * weights[i] / sum;
        out[i] = static_cast<std::size_t>(exact);
        assigned += out[i];
        rema.push_back({exact - static_cast<double>(out[i]), i});
    }
    std::sort(rema.begin(), rema.end(), [](const auto& x, const auto& y) {
        return x.first > y.first || (x.first == y.first && x.second < y.second);
    });
    for (std::size_t k = 0; assigned < total; ++k, ++assigned)
        out[rema[k % rema.size()].second]++;
    return out;
}

}  // namespace

const GraphicObject* Scene::find(std::string_view path) const {
    return walk(root, path);
}

GraphicObject* Scene::find_mut(std::string_view path) {
    return const_cast<GraphicObject*>(walk(root, path));
}

namespace {
void list_paths(const GraphicObject& obj, const std::string& prefix,
                std::vector<std::string>& out) {
    std::string path = prefix.empty() ? obj.name : prefix + "/" + obj.name;
    out.push_back(path);
    for (const auto& child : obj.children) list_paths(child, path, out);
}
}  // namespace

std::vector<std::string> Scene::all_paths() const {
    std::vector<std::string> out;
    list_paths(root, "", out);
    return out;
}

Vec2 Scene::absolute_position(std::string_view path) const {
    auto segs = split_path(path);
    if (segs.empty() || segs[0] != root.name)
        throw UnknownPathError(std::string(path));
    const GraphicObject* cur = &root;
    Vec2 pos = root.offset;
    for (std::size_t i = 1; i < segs.size(); ++i) {
        const GraphicObject* next = nullptr;
        for (const auto& child : cur->children)
            if (child.name == segs[i]) {
                next = &child;
                break;
            }
        if (!next) throw UnknownPathError(std::string(path));
        cur = next;
        pos += cur->offset;
    }
    return pos;
}

Box Scene::bounding_box(std::string_view path) const {
    const GraphicObject* node = find(path);
    if (!node) throw UnknownPathError(std::string(path));
    Vec2 base = absolute_position(path) - node->offset;
    std::vector<PlacedShape> placed;
    collect_shapes(*node, base, std::string(parent_path(path)), {}, placed);
    Box box;
    for (const auto& ps : placed) {
        Box local = ps.shape->local_bbox();
        box.extend(local.translated(ps.origin));
    }
    if (box.empty()) throw EmptyGeometryError(std::string(path));
    return box;
}

Box Scene::bounding_box_excluding(std::string_view path,
                                  std::string_view exclude_subtree) const {
    const GraphicObject* node = find(path);
    if (!node) throw UnknownPathError(std::string(path));
    Vec2 base = absolute_position(path) - node->offset;
    std::vector<PlacedShape> placed;
    collect_shapes(*node, base, std::string(parent_path(path)), exclude_subtree,
                   placed);
    Box box;
    for (const auto& ps : placed) {
        Box local = ps.shape->local_bbox();
        box.extend(local.translated(ps.origin));
    }
    if (box.empty()) box.extend(absolute_position(path));
    return box;
}

std::vector<Vec2> Scene::sample_points(std::string_view path, std::size_t n,
                                       std::uint64_t seed) const {
    const GraphicObject* node = find(path);
    if (!node) throw UnknownPathError(std::string(path));
    if (n == 0) return {};
    Vec2 base = absolute_position(path) - node->offset;
    std::vector<PlacedShape> placed;
    collect_shapes(*node, base, std::string(parent_path(path)), {}, placed);
    if (placed.empty()) throw EmptyGeometryError(std::string(path));

    struct ShapeInfo {
        std::vector<Shape::Outline> chains;
        double length = 0.0;
        double interior_weight = 0.0;
    };
    std::vector<ShapeInfo> info(placed.size());
    bool any_interior = false;
    for (std::size_t i = 0; i < placed.size(); ++i) {
        info[i].chains = placed[i].shape->outlines();
        info[i].length = outline_length(info[i].chains);
        const Shape& s = *placed[i].shape;
        if (s.has_interior()) {
            if (s.closed) {
                Box bb = s.local_bbox();
                info[i].interior_weight =
                    std::max(bb.width() * bb.height(), 1e-9);
            } else {
                info[i].interior_weight = info[i].length * s.style.stroke_width;
            }
            if (info[i].interior_weight > 0.0) any_interior = true;
        }
    }

    std::size_t n_outline = any_interior ? n / 2 : n;
    std::size_t n_interior = n - n_outline;

    std::vector<double> lengths, weights;
    for (const auto& si : info) {
        lengths.push_back(si.length);
        weights.push_back(si.interior_weight);
    }
    auto outline_alloc = apportion(lengths, n_outline);
    auto interior_alloc = apportion(weights, n_interior);

    std::vector<Vec2> out;
    out.reserve(n);
    for (std::size_t i = 0; i < placed.size(); ++i) {
        const auto& si = info[i];
        Vec2 origin = placed[i].origin;
        for (std::size_t k = 0; k < outline_alloc[i]; ++k) {
            double s = (k + 0.5) / outline_alloc[i] * si.length;
            out.push_back(origin + point_at_arc(si.chains, s).p);
        }
        if (interior_alloc[i] == 0) continue;

        std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * (i + 1)));
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        const Shape& shape = *placed[i].shape;
        if (shape.closed) {
            Box bb = shape.local_bbox();
            for (std::size_t k = 0; k < interior_alloc[i]; ++k) {
                Vec2 pt{};
                bool ok = false;
                for (int attempt = 0; attempt < 64 && !ok; ++attempt) {
                    pt = {bb.lo.x + unit(rng) * bb.width(),
                          bb.lo.y + unit(rng) * bb.height()};
                    ok = shape.contains_local(pt);
                }
                if (!ok) pt = point_at_arc(si.chains, unit(rng) * si.length).p;
                out.push_back(origin + pt);
            }
        } else {
            double half = shape.style.stroke_width / 2.0;
            for (std::size_t k = 0; k < interior_alloc[i]; ++k) {
                auto at = point_at_arc(si.chains, unit(rng) * si.length);
                Vec2 normal{-at.dir.y, at.dir.x};
                double off = (unit(rng) * 2.0 - 1.0) * half;
                out.push_back(origin + at.p + normal * off);
            }
        }
    }
    return out;
}

bool Scene::region_contains(std::string_view path, Vec2 pt,
                            std::string_view exclude_subtree) const {
    const GraphicObject* node = find(path);
    if (!node) throw UnknownPathError(std::string(path));
    Vec2 base = absolute_position(path) - node->offset;
    std::vector<PlacedShape> placed;
    collect_shapes(*node, base, std::string(parent_path(path)), exclude_subtree,
                   placed);
    for (const auto& ps : placed)
        if (ps.shape->contains_local(pt - ps.origin)) return true;
    return false;
}

namespace {
bool subtree_has_name(const GraphicObject& obj, std::string_view name) {
    if (obj.name == name) return true;
    for (const auto& c : obj.children)
        if (subtree_has_name(c, name)) return true;
    return false;
}

void validate_object(const GraphicObject& obj, const std::string& where) {
    if (!valid_token(obj.name))
        throw SchemaError(where, "invalid object name '" + obj.name + "'");
    std::set<std::string_view> names;
    for (const auto& child : obj.children)
        if (!names.insert(child.name).second)
            throw SchemaError(where, "duplicate sibling name '" + child.name + "'");
    if (obj.shape) obj.shape->validate(where + ".shape");
    for (std::size_t i = 0; i < obj.children.size(); ++i)
        validate_object(obj.children[i],
                        where + ".children[" + std::to_string(i) + "]");
}
}  // namespace

bool Scene::has_part_named(std::string_view name) const {
    return subtree_has_name(root, name);
}

void Scene::validate() const {
    if (canvas.x <= 0.0 || canvas.y <= 0.0)
        throw SchemaError("canvas", "canvas must be strictly positive");
    validate_object(root, "root");
    for (std::size_t i = 0; i < relations.size(); ++i) {
        const auto& rel = relations[i];
        if (!find(rel.a)) throw DanglingRelationError(i, rel.a);
        if (!find(rel.b)) throw DanglingRelationError(i, rel.b);
        if (rel.a == rel.b)
            throw SchemaError("relations[" + std::to_string(i) + "]",
                              "relation endpoints must differ");
    }
}

// --- json --------------------------------------------------------------

namespace {

using nlohmann::json;

json vec_to_json(Vec2 v) { return json::array({v.x, v.y}); }

Vec2 vec_from_json(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw SchemaError(where, "expected [x, y]");
    return {j[0].get<double>(), j[1].get<double>()};
}

json color_to_json(const std::optional<Color>& c) {
    if (!c) return nullptr;
    return json::array({c->r, c->g, c->b});
}

std::optional<Color> color_from_json(const json& j, const std::string& where) {
    if (j.is_null()) return std::nullopt;
    if (!j.is_array() || j.size() != 3)
        throw SchemaError(where, "expected [r, g, b] or null");
    for (const auto& ch : j)
        if (!ch.is_number_integer() || ch.get<int>() < 0 || ch.get<int>() > 255)
            throw SchemaError(where, "channels are integers in 0..255");
    return Color{static_cast<std::uint8_t>(j[0].get<int>()),
                 static_cast<std::uint8_t>(j[1].get<int>()),
                 static_cast<std::uint8_t>(j[2].get<int>())};
}

json style_to_json(const Style& s) {
    return json{{"fill", color_to_json(s.fill)},
                {"stroke", color_to_json(s.stroke)},
                {"stroke_width", s.stroke_width}};
}

Style style_from_json(const json& j, const std::string& where) {
    if (!j.is_object()) throw SchemaError(where, "expected style object");
    Style s;
    if (j.contains("fill")) s.fill = color_from_json(j["fill"], where + ".fill");
    if (j.contains("stroke"))
        s.stroke = color_from_json(j["stroke"], where + ".stroke");
    if (j.contains("stroke_width")) {
        if (!j["stroke_width"].is_number())
            throw SchemaError(where + ".stroke_width", "expected number");
        s.stroke_width = j["stroke_width"].get<double>();
    }
    return s;
}

json shape_to_json(const Shape& s) {
    json j;
    j["style"] = style_to_json(s.style);
    j["closed"] = s.closed;
    switch (s.kind) {
        case Shape::Kind::Polyline:
        case Shape::Kind::Polygon: {
            j["kind"] = s.kind == Shape::Kind::Polygon ? "polygon" : "polyline";
            auto arr = json::array();
            for (const auto& p : s.points) arr.push_back(vec_to_json(p));
            j["points"] = std::move(arr);
            break;
        }
        case Shape::Kind::Ellipse:
            j["kind"] = "ellipse";
            j["center"] = vec_to_json(s.center);
            j["radii"] = vec_to_json(s.radii);
            break;
        case Shape::Kind::Path: {
            j["kind"] = "path";
            auto arr = json::array();
            for (const auto& c : s.commands) {
                switch (c.op) {
                    case PathCmd::Op::Move:
                        arr.push_back(json::array({"M", c.p.x, c.p.y}));
                        break;
                    case PathCmd::Op::Line:
                        arr.push_back(json::array({"L", c.p.x, c.p.y}));
                        break;
                    case PathCmd::Op::Cubic:
                        arr.push_back(json::array(
                            {"C", c.c1.x, c.c1.y, c.c2.x, c.c2.y, c.p.x, c.p.y}));
                        break;
                    case PathCmd::Op::Close:
                        arr.push_back(json::array({"Z"}));
                        break;
                }
            }
            j["commands"] = std::move(arr);
            break;
        }
    }
    return j;
}

Shape shape_from_json(const json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw SchemaError(where, "shape needs a string 'kind'");
    std::string kind = j["kind"].get<std::string>();
    Style style = j.contains("style") ? style_from_json(j["style"], where + ".style")
                                      : Style{};
    Shape s;
    if (kind == "polyline" || kind == "polygon") {
        if (!j.contains("points") || !j["points"].is_array())
            throw SchemaError(where, "expected 'points' array");
        std::vector<Vec2> pts;
        for (std::size_t i = 0; i < j["points"].size(); ++i)
            pts.push_back(vec_from_json(j["points"][i],
                                        where + ".points[" + std::to_string(i) + "]"));
        s = kind == "polygon" ? Shape::polygon(std::move(pts), style)
                              : Shape::polyline(std::move(pts), style);
    } else if (kind == "ellipse") {
        if (!j.contains("center") || !j.contains("radii"))
            throw SchemaError(where, "ellipse needs 'center' and 'radii'");
        s = Shape::ellipse(vec_from_json(j["center"], where + ".center"),
                           vec_from_json(j["radii"], where + ".radii"), style);
    } else if (kind == "path") {
        if (!j.contains("commands") || !j["commands"].is_array())
            throw SchemaError(where, "path needs 'commands'");
        std::vector<PathCmd> cmds;
        for (std::size_t i = 0; i < j["commands"].size(); ++i) {
            const auto& c = j["commands"][i];
            std::string loc = where + ".commands[" + std::to_string(i) + "]";
            if (!c.is_array() || c.empty() || !c[0].is_string())
                throw SchemaError(loc, "expected [op, ...]");
            std::string op = c[0].get<std::string>();
            PathCmd cmd;
            if (op == "M" || op == "L") {
                if (c.size() != 3) throw SchemaError(loc, "expected [op, x, y]");
                cmd.op = op == "M" ? PathCmd::Op::Move : PathCmd::Op::Line;
                cmd.p = {c[1].get<double>(), c[2].get<double>()};
            } else if (op == "C") {
                if (c.size() != 7)
                    throw SchemaError(loc, "expected [C, x1, y1, x2, y2, x, y]");
                cmd.op = PathCmd::Op::Cubic;
                cmd.c1 = {c[1].get<double>(), c[2].get<double>()};
                cmd.c2 = {c[3].get<double>(), c[4].get<double>()};
                cmd.p = {c[5].get<double>(), c[6].get<double>()};
            } else if (op == "Z") {
                cmd.op = PathCmd::Op::Close;
            } else {
                throw SchemaError(loc, "unknown path op '" + op + "'");
            }
            cmds.push_back(cmd);
        }
        s = Shape::path(std::move(cmds), style);
    } else {
        throw SchemaError(where, "unknown shape kind '" + kind + "'");
    }
    if (j.contains("closed")) {
        if (!j["closed"].is_boolean()) throw SchemaError(where, "'closed' is bool");
        s.closed = j["closed"].get<bool>();
    }
    s.validate(where);
    return s;
}

json object_to_json(const GraphicObject& obj) {
    json j;
    j["name"] = obj.name;
    j["offset"] = vec_to_json(obj.offset);
    j["shape"] = obj.shape ? shape_to_json(*obj.shape) : json(nullptr);
    auto arr = json::array();
    for (const auto& child : obj.children) arr.push_back(object_to_json(child));
    j["children"] = std::move(arr);
    return j;
}

GraphicObject object_from_json(const json& j, const std::string& where) {
    if (!j.is_object()) throw SchemaError(where, "expected object");
    if (!j.contains("name") || !j["name"].is_string())
        throw SchemaError(where, "object needs a string 'name'");
    GraphicObject obj;
    obj.name = j["name"].get<std::string>();
    if (j.contains("offset"))
        obj.offset = vec_from_json(j["offset"], where + ".offset");
    if (j.contains("shape") && !j["shape"].is_null())
        obj.shape = shape_from_json(j["shape"], where + ".shape");
    if (j.contains("children")) {
        if (!j["children"].is_array())
            throw SchemaError(where + ".children", "expected array");
        for (std::size_t i = 0; i < j["children"].size(); ++i)
            obj.children.push_back(object_from_json(
                j["children"][i], where + ".children[" + std::to_string(i) + "]"));
    }
    return obj;
}

}  // namespace

Scene load_scene(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError("<document>", e.what());
    }
    if (!doc.is_object()) throw SchemaError("<document>", "expected object");

    Scene scene;
    if (doc.contains("concept")) {
        if (!doc["concept"].is_string())
            throw SchemaError("concept", "expected string");
        scene.concept_name = doc["concept"].get<std::string>();
    }
    if (doc.contains("canvas"))
        scene.canvas = vec_from_json(doc["canvas"], "canvas");
    if (!doc.contains("root")) throw SchemaError("root", "missing");
    scene.root = object_from_json(doc["root"], "root");
    if (doc.contains("relations")) {
        if (!doc["relations"].is_array())
            throw SchemaError("relations", "expected array");
        for (std::size_t i = 0; i < doc["relations"].size(); ++i) {
            const auto& r = doc["relations"][i];
            std::string loc = "relations[" + std::to_string(i) + "]";
            if (!r.is_object() || !r.contains("a") || !r.contains("type") ||
                !r.contains("b"))
                throw SchemaError(loc, "expected {a, type, b}");
            auto type = relation_from_string(r["type"].get<std::string>());
            if (!type)
                throw SchemaError(loc + ".type", "unknown relation type '" +
                                                     r["type"].get<std::string>() +
                                                     "'");
            SceneRelation rel{r["a"].get<std::string>(), *type,
                              r["b"].get<std::string>()};
            if (!scene.find(rel.a)) throw DanglingRelationError(i, rel.a);
            if (!scene.find(rel.b)) throw DanglingRelationError(i, rel.b);
            scene.relations.push_back(std::move(rel));
        }
    }
    scene.validate();
    return scene;
}

std::string save_scene(const Scene& scene) {
    json doc;
    doc["concept"] = scene.concept_name;
    doc["canvas"] = vec_to_json(scene.canvas);
    doc["root"] = object_to_json(scene.root);
    auto arr = json::array();
    for (const auto& rel : scene.relations)
        arr.push_back(json{{"a", rel.a}, {"type", to_string(rel.type)}, {"b", rel.b}});
    doc["relations"] = std::move(arr);
    return doc.dump(2) + "\n";
}

void scale_object(GraphicObject& obj, double sx, double sy) {
    obj.offset = {obj.offset.x * sx, obj.offset.y * sy};
    if (obj.shape) {
        Shape& s = *obj.shape;
        for (auto& p : s.points) p = {p.x * sx, p.y * sy};
        s.center = {s.center.x * sx, s.center.y * sy};
        s.radii = {s.radii.x * sx, s.radii.y * sy};
        for (auto& c : s.commands) {
            c.c1 = {c.c1.x * sx, c.c1.y * sy};
            c.c2 = {c.c2.x * sx, c.c2.y * sy};
            c.p = {c.p.x * sx, c.p.y * sy};
        }
        s.style.stroke_width *= (sx + sy) / 2.0;
    }
    for (auto& child : obj.children) scale_object(child, sx, sy);
}

void scale_scene(Scene& scene, double sx, double sy) {
    scene.canvas = {scene.canvas.x * sx, scene.canvas.y * sy};
    scale_object(scene.root, sx, sy);
}

std::string parent_path(std::string_view path) {
    auto slash = path.rfind('/');
    if (slash == std::string_view::npos) return "";
    return std::string(path.substr(0, slash));
}

std::string leaf_name(std::string_view path) {
    auto slash = path.rfind('/');
    if (slash == std::string_view::npos) return std::string(path);
    return std::string(path.substr(slash + 1));
}

}  // namespace chimera
