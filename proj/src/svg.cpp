#include "chimera/svg.hpp"

#include <cctype>
#include <cstdio>
#include <map>
#include <sstream>
#include <vector>

#include "chimera/errors.hpp"

namespace chimera {
namespace {

// --- minimal XML scanner (enough for the restricted subset) -------------

struct XmlElement {
    std::string tag;
    std::map<std::string, std::string> attrs;
    std::vector<XmlElement> children;

    const std::string* attr(const std::string& name) const {
        auto it = attrs.find(name);
        return it == attrs.end() ? nullptr : &it->second;
    }
};

std::string decode_entities(std::string_view s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '&') {
            out += s[i];
            continue;
        }
        auto semi = s.find(';', i);
        auto entity = semi == std::string_view::npos
                          ? std::string_view{}
                          : s.substr(i + 1, semi - i - 1);
        if (entity == "amp") out += '&';
        else if (entity == "lt") out += '<';
        else if (entity == "gt") out += '>';
        else if (entity == "quot") out += '"';
        else if (entity == "apos") out += '\'';
        else {
            out += s[i];
            continue;
        }
        i = semi;
    }
    return out;
}

class XmlScanner {
public:
    explicit XmlScanner(std::string_view text) : text_(text) {}

    XmlElement parse_document() {
        while (true) {
            skip_misc();
            if (pos_ >= text_.size())
                throw SchemaError("<svg>", "no root element found");
            if (text_[pos_] == '<') break;
            ++pos_;  // stray text outside elements
        }
        return parse_element();
    }

private:
    void skip_misc() {
        while (pos_ < text_.size()) {
            if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
                continue;
            }
            if (text_.compare(pos_, 4, "<!--") == 0) {
                auto end = text_.find("-->", pos_);
                pos_ = end == std::string_view::npos ? text_.size() : end + 3;
                continue;
            }
            if (text_.compare(pos_, 2, "<?") == 0 ||
                text_.compare(pos_, 2, "<!") == 0) {
                auto end = text_.find('>', pos_);
                pos_ = end == std::string_view::npos ? text_.size() : end + 1;
                continue;
            }
            break;
        }
    }

    XmlElement parse_element() {
        if (text_[pos_] != '<') throw SchemaError("<svg>", "expected element");
        ++pos_;
        XmlElement el;
        while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
               text_[pos_] != '>' && text_[pos_] != '/')
            el.tag += text_[pos_++];

        bool self_closing = false;
        while (pos_ < text_.size()) {
            while (pos_ < text_.size() &&
                   std::isspace(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            if (pos_ >= text_.size()) break;
            if (text_[pos_] == '/') {
                self_closing = true;
                ++pos_;
                continue;
            }
            if (text_[pos_] == '>') {
                ++pos_;
                break;
            }
            std::string name;
            while (pos_ < text_.size() && text_[pos_] != '=' &&
                   !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
                   text_[pos_] != '>' && text_[pos_] != '/')
                name += text_[pos_++];
            while (pos_ < text_.size() &&
                   (std::isspace(static_cast<unsigned char>(text_[pos_])) ||
                    text_[pos_] == '='))
                ++pos_;
            if (pos_ >= text_.size() || (text_[pos_] != '"' && text_[pos_] != '\''))
                throw SchemaError("<" + el.tag + ">", "attribute '" + name +
                                                          "' needs a quoted value");
            char quote = text_[pos_++];
            std::string value;
            while (pos_ < text_.size() && text_[pos_] != quote)
                value += text_[pos_++];
            if (pos_ >= text_.size())
                throw SchemaError("<" + el.tag + ">", "unterminated attribute");
            ++pos_;  // closing quote
            el.attrs[name] = decode_entities(value);
        }

        if (self_closing) return el;

        // children until matching close tag
        while (true) {
            while (pos_ < text_.size() && text_[pos_] != '<') ++pos_;
            if (pos_ >= text_.size())
                throw SchemaError("<" + el.tag + ">", "missing close tag");
            if (text_.compare(pos_, 2, "</") == 0) {
                auto end = text_.find('>', pos_);
                if (end == std::string_view::npos)
                    throw SchemaError("<" + el.tag + ">", "malformed close tag");
                pos_ = end + 1;
                return el;
            }
            if (text_.compare(pos_, 4, "<!--") == 0 ||
                text_.compare(pos_, 2, "<?") == 0 ||
                text_.compare(pos_, 2, "<!") == 0) {
                skip_misc();
                continue;
            }
            el.children.push_back(parse_element());
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

// --- attribute helpers ---------------------------------------------------

std::vector<double> parse_numbers(std::string_view s) {
    std::vector<double> out;
    std::string cleaned(s);
    for (auto& c : cleaned)
        if (c == ',') c = ' ';
    std::istringstream is(cleaned);
    double v;
    while (is >> v) out.push_back(v);
    return out;
}

double num_attr(const XmlElement& el, const std::string& name, double fallback) {
    const std::string* v = el.attr(name);
    if (!v) return fallback;
    auto nums = parse_numbers(*v);
    if (nums.empty())
        throw SchemaError("<" + el.tag + ">", "bad number in '" + name + "'");
    return nums[0];
}

std::optional<Color> parse_color(const std::string& tag, std::string value) {
    while (!value.empty() && std::isspace(static_cast<unsigned char>(value.back())))
        value.pop_back();
    std::size_t start = 0;
    while (start < value.size() &&
           std::isspace(static_cast<unsigned char>(value[start])))
        ++start;
    value = value.substr(start);
    if (value == "none") return std::nullopt;
    if (!value.empty() && value[0] == '#') {
        auto hex = [&](std::size_t i, std::size_t len) {
            return static_cast<std::uint8_t>(
                std::stoi(value.substr(i, len), nullptr, 16) * (len == 1 ? 17 : 1));
        };
        if (value.size() == 7) return Color{hex(1, 2), hex(3, 2), hex(5, 2)};
        if (value.size() == 4) return Color{hex(1, 1), hex(2, 1), hex(3, 1)};
        throw SchemaError("<" + tag + ">", "bad hex color '" + value + "'");
    }
    static const std::pair<std::string_view, Color> named[] = {
        {"black", {0, 0, 0}},       {"white", {255, 255, 255}},
        {"red", {255, 0, 0}},       {"green", {0, 128, 0}},
        {"blue", {0, 0, 255}},      {"yellow", {255, 255, 0}},
        {"gray", {128, 128, 128}},  {"grey", {128, 128, 128}},
        {"pink", {255, 192, 203}},  {"orange", {255, 165, 0}},
        {"purple", {128, 0, 128}},  {"brown", {165, 42, 42}},
    };
    for (const auto& [n, c] : named)
        if (n == value) return c;
    throw SchemaError("<" + tag + ">", "unknown color '" + value + "'");
}

Style parse_style(const XmlElement& el) {
    // SVG defaults: black fill, no stroke, width 1.
    Style style;
    style.fill = Color{0, 0, 0};
    style.stroke = std::nullopt;
    style.stroke_width = 1.0;

    auto apply = [&](const std::string& key, const std::string& value) {
        if (key == "fill") style.fill = parse_color(el.tag, value);
        else if (key == "stroke") style.stroke = parse_color(el.tag, value);
        else if (key == "stroke-width") {
            auto nums = parse_numbers(value);
            if (nums.empty())
                throw SchemaError("<" + el.tag + ">", "bad stroke-width");
            style.stroke_width = nums[0];
        }
    };

    if (const std::string* css = el.attr("style")) {
        std::istringstream is(*css);
        std::string item;
        while (std::getline(is, item, ';')) {
            auto colon = item.find(':');
            if (colon == std::string::npos) continue;
            auto trim = [](std::string s) {
                while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
                    s.erase(s.begin());
                while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
                    s.pop_back();
                return s;
            };
            apply(trim(item.substr(0, colon)), trim(item.substr(colon + 1)));
        }
    }
    for (const char* key : {"fill", "stroke", "stroke-width"})
        if (const std::string* v = el.attr(key)) apply(key, *v);
    return style;
}

Vec2 parse_translate(const XmlElement& el) {
    const std::string* t = el.attr("transform");
    if (!t) return {};
    auto open = t->find('(');
    auto close = t->find(')');
    std::string fn = t->substr(0, open == std::string::npos ? t->size() : open);
    while (!fn.empty() && std::isspace(static_cast<unsigned char>(fn.back())))
        fn.pop_back();
    if (fn != "translate" || open == std::string::npos ||
        close == std::string::npos || t->find_first_not_of(" \t", close + 1) !=
                                          std::string::npos)
        throw UnsupportedElementError("transform '" + *t + "'");
    auto nums = parse_numbers(std::string_view(*t).substr(open + 1, close - open - 1));
    if (nums.empty() || nums.size() > 2)
        throw UnsupportedElementError("transform '" + *t + "'");
    return {nums[0], nums.size() > 1 ? nums[1] : 0.0};
}

bool is_shape_tag(const std::string& tag) {
    return tag == "line" || tag == "polyline" || tag == "polygon" ||
           tag == "rect" || tag == "circle" || tag == "ellipse" || tag == "path";
}

Shape parse_path_shape(const XmlElement& el, Style style) {
    const std::string* d = el.attr("d");
    if (!d) throw SchemaError("<path>", "missing 'd'");
    std::vector<PathCmd> cmds;
    Vec2 pen{}, subpath_start{};
    char mode = 0;
    std::size_t i = 0;
    auto read_number = [&](double& out) {
        while (i < d->size() && (std::isspace(static_cast<unsigned char>((*d)[i])) ||
                                 (*d)[i] == ','))
            ++i;
        std::size_t consumed = 0;
        try {
            out = std::stod(d->substr(i), &consumed);
        } catch (...) {
            return false;
        }
        i += consumed;
        return true;
    };
    auto read_point = [&](Vec2& out, bool relative) {
        if (!read_number(out.x) || !read_number(out.y)) return false;
        if (relative) out += pen;
        return true;
    };

    while (i < d->size()) {
        char c = (*d)[i];
        if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
            ++i;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            mode = c;
            ++i;
            if (mode == 'Z' || mode == 'z') {
                cmds.push_back({PathCmd::Op::Close});
                pen = subpath_start;
                continue;
            }
            if (mode != 'M' && mode != 'm' && mode != 'L' && mode != 'l' &&
                mode != 'C' && mode != 'c')
                throw UnsupportedElementError(std::string("path command '") + mode +
                                              "'");
            continue;
        }
        bool relative = std::islower(static_cast<unsigned char>(mode));
        char op = static_cast<char>(std::toupper(static_cast<unsigned char>(mode)));
        if (op == 'M' || op == 'L') {
            Vec2 p;
            if (!read_point(p, relative)) throw SchemaError("<path>", "bad 'd'");
            PathCmd cmd;
            cmd.op = op == 'M' ? PathCmd::Op::Move : PathCmd::Op::Line;
            cmd.p = p;
            cmds.push_back(cmd);
            if (op == 'M') {
                subpath_start = p;
                mode = relative ? 'l' : 'L';  // implicit lineto after moveto
            }
            pen = p;
        } else if (op == 'C') {
            PathCmd cmd;
            cmd.op = PathCmd::Op::Cubic;
            if (!read_point(cmd.c1, relative) || !read_point(cmd.c2, relative) ||
                !read_point(cmd.p, relative))
                throw SchemaError("<path>", "bad 'd'");
            cmds.push_back(cmd);
            pen = cmd.p;
        } else {
            throw SchemaError("<path>", "bad 'd'");
        }
    }
    return Shape::path(std::move(cmds), style);
}

Shape parse_shape(const XmlElement& el) {
    Style style = parse_style(el);
    if (el.tag == "line") {
        return Shape::polyline({{num_attr(el, "x1", 0), num_attr(el, "y1", 0)},
                                {num_attr(el, "x2", 0), num_attr(el, "y2", 0)}},
                               style);
    }
    if (el.tag == "polyline" || el.tag == "polygon") {
        const std::string* pts = el.attr("points");
        if (!pts) throw SchemaError("<" + el.tag + ">", "missing 'points'");
        auto nums = parse_numbers(*pts);
        if (nums.size() < 4 || nums.size() % 2 != 0)
            throw SchemaError("<" + el.tag + ">", "bad 'points'");
        std::vector<Vec2> v;
        for (std::size_t i = 0; i + 1 < nums.size(); i += 2)
            v.push_back({nums[i], nums[i + 1]});
        return el.tag == "polygon" ? Shape::polygon(std::move(v), style)
                                   : Shape::polyline(std::move(v), style);
    }
    if (el.tag == "rect") {
        double x = num_attr(el, "x", 0), y = num_attr(el, "y", 0);
        double w = num_attr(el, "width", 0), h = num_attr(el, "height", 0);
        return Shape::polygon({{x, y}, {x + w, y}, {x + w, y + h}, {x, y + h}},
                              style);
    }
    if (el.tag == "circle") {
        double r = num_attr(el, "r", 0);
        return Shape::ellipse({num_attr(el, "cx", 0), num_attr(el, "cy", 0)},
                              {r, r}, style);
    }
    if (el.tag == "ellipse") {
        return Shape::ellipse({num_attr(el, "cx", 0), num_attr(el, "cy", 0)},
                              {num_attr(el, "rx", 0), num_attr(el, "ry", 0)},
                              style);
    }
    return parse_path_shape(el, style);
}

GraphicObject build_object(const XmlElement& group);

void absorb_children(const XmlElement& parent, GraphicObject& obj) {
    for (const auto& child : parent.children) {
        if (child.tag == "g") {
            obj.children.push_back(build_object(child));
            continue;
        }
        if (!is_shape_tag(child.tag)) throw UnsupportedElementError(child.tag);
        if (child.attr("transform"))
            throw UnsupportedElementError("transform on <" + child.tag + ">");
        Shape shape = parse_shape(child);
        if (const std::string* id = child.attr("id")) {
            GraphicObject named;
            named.name = *id;
            named.shape = std::move(shape);
            obj.children.push_back(std::move(named));
        } else if (!obj.shape) {
            obj.shape = std::move(shape);
        } else {
            throw MissingIdError(child.tag);
        }
    }
}

GraphicObject build_object(const XmlElement& group) {
    const std::string* id = group.attr("id");
    if (!id) throw MissingIdError("g");
    GraphicObject obj;
    obj.name = *id;
    obj.offset = parse_translate(group);
    absorb_children(group, obj);
    return obj;
}

const char* kSvgNs = "http://www.w3.org/2000/svg";

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string style_attrs(const Style& s) {
    std::string out = " fill=\"";
    auto hex = [](const Color& c) {
        char buf[8];
        std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c.r, c.g, c.b);
        return std::string(buf);
    };
    out += s.fill ? hex(*s.fill) : "none";
    out += "\" stroke=\"";
    out += s.stroke ? hex(*s.stroke) : "none";
    out += "\" stroke-width=\"" + fmt(s.stroke_width) + "\"";
    return out;
}

void write_shape(std::ostringstream& os, const Shape& s, const std::string& pad) {
    switch (s.kind) {
        case Shape::Kind::Polyline:
        case Shape::Kind::Polygon: {
            os << pad << (s.kind == Shape::Kind::Polygon ? "<polygon points=\""
                                                         : "<polyline points=\"");
            for (std::size_t i = 0; i < s.points.size(); ++i) {
                if (i) os << ' ';
                os << fmt(s.points[i].x) << ',' << fmt(s.points[i].y);
            }
            os << '"' << style_attrs(s.style) << "/>\n";
            break;
        }
        case Shape::Kind::Ellipse:
            os << pad << "<ellipse cx=\"" << fmt(s.center.x) << "\" cy=\""
               << fmt(s.center.y) << "\" rx=\"" << fmt(s.radii.x) << "\" ry=\""
               << fmt(s.radii.y) << '"' << style_attrs(s.style) << "/>\n";
            break;
        case Shape::Kind::Path: {
            os << pad << "<path d=\"";
            bool first = true;
            for (const auto& c : s.commands) {
                if (!first) os << ' ';
                first = false;
                switch (c.op) {
                    case PathCmd::Op::Move:
                        os << "M " << fmt(c.p.x) << ' ' << fmt(c.p.y);
                        break;
                    case PathCmd::Op::Line:
                        os << "L " << fmt(c.p.x) << ' ' << fmt(c.p.y);
                        break;
                    case PathCmd::Op::Cubic:
                        os << "C " << fmt(c.c1.x) << ' ' << fmt(c.c1.y) << ' '
                           << fmt(c.c2.x) << ' ' << fmt(c.c2.y) << ' ' << fmt(c.p.x)
                           << ' ' << fmt(c.p.y);
                        break;
                    case PathCmd::Op::Close:
                        os << "Z";
                        break;
                }
            }
            os << '"' << style_attrs(s.style) << "/>\n";
            break;
        }
    }
}

void write_object(std::ostringstream& os, const GraphicObject& obj, int depth) {
    std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
    os << pad << "<g id=\"" << obj.name << "\" transform=\"translate("
       << fmt(obj.offset.x) << ',' << fmt(obj.offset.y) << ")\">\n";
    if (obj.shape) write_shape(os, *obj.shape, pad + "  ");
    for (const auto& child : obj.children) write_object(os, child, depth + 1);
    os << pad << "</g>\n";
}

}  // namespace

Scene import_svg(std::string_view svg_text) {
    XmlScanner scanner(svg_text);
    XmlElement doc = scanner.parse_document();
    if (doc.tag != "svg") throw UnsupportedElementError(doc.tag);

    Scene scene;
    if (const std::string* vb = doc.attr("viewBox")) {
        auto nums = parse_numbers(*vb);
        if (nums.size() != 4) throw SchemaError("<svg>", "bad viewBox");
        scene.canvas = {nums[2], nums[3]};
    } else {
        scene.canvas = {num_attr(doc, "width", 1000.0),
                        num_attr(doc, "height", 1000.0)};
    }

    GraphicObject holder;  // collects top-level objects
    holder.name = doc.attr("id") ? *doc.attr("id") : "scene";
    absorb_children(doc, holder);
    if (holder.shape)
        throw MissingIdError("top-level shape");
    if (holder.children.size() == 1) {
        scene.root = std::move(holder.children.front());
    } else {
        scene.root = std::move(holder);
    }
    scene.concept_name = scene.root.name;
    scene.validate();
    return scene;
}

std::string export_svg(const Scene& scene) {
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"" << kSvgNs << "\" width=\"" << fmt(scene.canvas.x)
       << "\" height=\"" << fmt(scene.canvas.y) << "\" viewBox=\"0 0 "
       << fmt(scene.canvas.x) << ' ' << fmt(scene.canvas.y) << "\">\n";
    write_object(os, scene.root, 1);
    os << "</svg>\n";
    return os.str();
}

}  // namespace chimera
