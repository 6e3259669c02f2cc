#include "chimera/blend.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <random>
#include <set>

#include "chimera/errors.hpp"

namespace chimera {
namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isdigit(static_cast<unsigned char>(c));
    });
}

std::vector<std::string> split_underscores(std::string_view raw) {
    std::vector<std::string> toks;
    std::size_t start = 0;
    while (start <= raw.size()) {
        auto us = raw.find('_', start);
        if (us == std::string_view::npos) {
            toks.emplace_back(raw.substr(start));
            break;
        }
        toks.emplace_back(raw.substr(start, us - start));
        start = us + 1;
    }
    return toks;
}

std::string join(const std::vector<std::string>& toks, std::size_t from,
                 std::size_t to) {
    std::string out;
    for (std::size_t i = from; i < to; ++i) {
        if (i > from) out += '_';
        out += toks[i];
    }
    return out;
}

/// Local bounding box of a detached subtree, relative to its own origin.
std::optional<Box> subtree_local_bbox(const GraphicObject& obj) {
    Scene probe;
    probe.root = obj;
    probe.root.offset = {};
    try {
        return probe.bounding_box(probe.root.name);
    } catch (const EmptyGeometryError&) {
        return std::nullopt;
    }
}

bool name_used_outside(const GraphicObject& obj, std::string_view name,
                       const std::string& prefix, std::string_view excluded) {
    std::string path = prefix.empty() ? obj.name : prefix + "/" + obj.name;
    if (path == excluded) return false;
    if (obj.name == name) return true;
    for (const auto& child : obj.children)
        if (name_used_outside(child, name, path, excluded)) return true;
    return false;
}

bool analogy_maps_name(const Analogy& analogy, std::string_view name) {
    for (const auto& [l, r] : analogy.mappings)
        if (l == name || r == name) return true;
    return false;
}

}  // namespace

PartName PartName::parse(std::string_view raw) {
    PartName pn;
    pn.raw = std::string(raw);
    auto toks = split_underscores(raw);
    if (toks.size() == 1) {
        pn.base = toks[0];
    } else if (toks.size() == 2) {
        if (all_digits(toks[1])) {
            pn.base = toks[0];
            pn.suffix = toks[1];
        } else {
            pn.prefix = toks[0];
            pn.base = toks[1];
        }
    } else {
        if (all_digits(toks.back())) {
            pn.prefix = toks.front();
            pn.suffix = toks.back();
            pn.base = join(toks, 1, toks.size() - 1);
        } else {
            pn.prefix = toks.front();
            pn.base = join(toks, 1, toks.size());
        }
    }
    return pn;
}

std::string PartName::with_base(std::string_view new_base) const {
    std::string out;
    if (!prefix.empty()) out += prefix + "_";
    out += std::string(new_base);
    if (!suffix.empty()) out += "_" + suffix;
    return out;
}

bool PartName::matches(std::string_view mapping_name) const {
    if (base == mapping_name) return true;
    std::string tail = "_" + std::string(mapping_name);
    return base.size() > tail.size() &&
           base.compare(base.size() - tail.size(), tail.size(), tail) == 0;
}

BaseRasters BaseRasters::make(const Scene& scene_a, const Scene& scene_b,
                              const BlendParams& params) {
    return {rasterize(scene_a, params.raster_width, params.raster_height),
            rasterize(scene_b, params.raster_width, params.raster_height)};
}

std::vector<std::string> find_parts(const Scene& scene,
                                    std::string_view mapping_name) {
    std::vector<std::string> out;
    for (const auto& path : scene.all_paths())
        if (PartName::parse(leaf_name(path)).matches(mapping_name))
            out.push_back(path);
    return out;
}

std::optional<std::string> match_donor_part(const Scene& donor,
                                            const PartName& found,
                                            std::string_view mapping_target) {
    std::string plural = std::string(mapping_target) + "s";
    for (const std::string& wanted :
         {found.with_base(mapping_target), std::string(mapping_target)}) {
        if (wanted == plural) continue;
        for (const auto& path : donor.all_paths())
            if (leaf_name(path) == wanted) return path;
    }
    return std::nullopt;
}

void replace_part(Blend& blend, std::string_view base_path, const Scene& donor,
                  std::string_view donor_path, bool scale_to_fit) {
    Scene& scene = blend.scene;
    const GraphicObject* pa = scene.find(base_path);
    if (!pa) throw UnknownPathError(std::string(base_path));
    const GraphicObject* pb = donor.find(donor_path);
    if (!pb) throw UnknownPathError(std::string(donor_path));
    std::string parent = parent_path(base_path);
    if (parent.empty()) throw Error("cannot replace the root object");

    Vec2 target_center;
    std::optional<Box> pa_box;
    try {
        pa_box = scene.bounding_box(base_path);
        target_center = pa_box->center();
    } catch (const EmptyGeometryError&) {
        target_center = scene.absolute_position(base_path);
    }

    GraphicObject copy = *pb;
    if (scale_to_fit && pa_box) {
        auto pb_box = subtree_local_bbox(copy);
        if (pb_box && pb_box->width() > 0.0 && pb_box->height() > 0.0) {
            double s = std::min(pa_box->width() / pb_box->width(),
                                pa_box->height() / pb_box->height());
            if (s > 0.0) scale_object(copy, s, s);
        }
    }
    Vec2 pb_center_local{};
    if (auto pb_box = subtree_local_bbox(copy)) pb_center_local = pb_box->center();

    Vec2 parent_abs = scene.absolute_position(parent);
    copy.offset = target_center - parent_abs - pb_center_local;

    std::string new_path = parent + "/" + copy.name;
    GraphicObject* parent_obj = scene.find_mut(parent);
    for (auto& child : parent_obj->children) {
        if (child.name == pa->name) {
            child = std::move(copy);
            break;
        }
    }
    for (auto& rel : scene.relations) {
        if (rel.a == base_path) rel.a = new_path;
        if (rel.b == base_path) rel.b = new_path;
    }
}

std::vector<std::string> compose_attachments(Blend& blend, const Scene& donor,
                                             std::string_view donor_path,
                                             std::string_view anchor_path,
                                             const Analogy& analogy) {
    Scene& scene = blend.scene;
    if (!scene.find(anchor_path)) throw UnknownPathError(std::string(anchor_path));
    Vec2 pb_abs = donor.absolute_position(donor_path);
    Vec2 anchor_abs = scene.absolute_position(anchor_path);

    // Copies land beside the anchor, as they sit beside their partner in the
    // donor; a child copy would fold into the anchor's own extent and relations
    // against the anchor could never hold.
    std::string attach_parent = parent_path(anchor_path);
    if (attach_parent.empty()) attach_parent = std::string(anchor_path);
    Vec2 parent_abs = scene.absolute_position(attach_parent);

    std::vector<std::string> copied;
    std::map<std::string, std::string> placed;  // donor path -> blend path
    std::set<std::string> skipped;
    for (const auto& rel : donor.relations) {
        std::string q;
        if (rel.a == donor_path && rel.b != donor_path) q = rel.b;
        else if (rel.b == donor_path && rel.a != donor_path) q = rel.a;
        else continue;

        auto it = placed.find(q);
        if (it == placed.end()) {
            if (skipped.count(q)) continue;
            std::string qname = leaf_name(q);
            const GraphicObject* qobj = donor.find(q);
            if (!qobj || analogy_maps_name(analogy, PartName::parse(qname).base) ||
                scene.has_part_named(qname)) {
                skipped.insert(q);
                continue;
            }
            GraphicObject copy = *qobj;
            copy.offset = anchor_abs + (donor.absolute_position(q) - pb_abs) -
                          parent_abs;
            GraphicObject* parent = scene.find_mut(attach_parent);
            parent->children.push_back(std::move(copy));
            std::string new_path = attach_parent + "/" + qname;
            it = placed.emplace(q, new_path).first;
            copied.push_back(q);
        }

        SceneRelation nr = rel;
        auto repoint = [&](std::string& endpoint) {
            if (endpoint == donor_path) endpoint = std::string(anchor_path);
            else endpoint = it->second;
        };
        repoint(nr.a);
        repoint(nr.b);
        scene.relations.push_back(std::move(nr));
    }
    return copied;
}

void repair_consistency(Blend& blend) {
    Scene& scene = blend.scene;
    std::erase_if(scene.relations, [&](const SceneRelation& rel) {
        return !scene.find(rel.a) || !scene.find(rel.b) || rel.a == rel.b;
    });

    Box wide;
    wide.extend(Vec2{-scene.canvas.x / 2.0, -scene.canvas.y / 2.0});
    wide.extend(Vec2{1.5 * scene.canvas.x, 1.5 * scene.canvas.y});
    Box canvas;
    canvas.extend(Vec2{0.0, 0.0});
    canvas.extend(Vec2{scene.canvas.x, scene.canvas.y});

    for (const auto& path : scene.all_paths()) {
        Box box;
        try {
            box = scene.bounding_box(path);
        } catch (const EmptyGeometryError&) {
            box.extend(scene.absolute_position(path));
        }
        if (box.intersects(wide)) continue;
        Vec2 shift{};
        if (box.hi.x < canvas.lo.x) shift.x = canvas.lo.x - box.hi.x;
        else if (box.lo.x > canvas.hi.x) shift.x = canvas.hi.x - box.lo.x;
        if (box.hi.y < canvas.lo.y) shift.y = canvas.lo.y - box.hi.y;
        else if (box.lo.y > canvas.hi.y) shift.y = canvas.hi.y - box.lo.y;
        scene.find_mut(path)->offset += shift;
    }
}

bool is_too_similar(const Scene& blend_scene, const Bitmap& base_a,
                    const Bitmap& base_b, const BlendParams& params) {
    Bitmap bmp = rasterize(blend_scene, params.raster_width, params.raster_height);
    double d = std::min(rmse(bmp, base_a), rmse(bmp, base_b));
    return d < params.similarity_threshold;
}

namespace {

std::optional<Blend> construct_attempt(const Analogy& analogy,
                                       BaseChoice base_choice,
                                       const Scene& scene_a, const Scene& scene_b,
                                       std::uint64_t seed,
                                       const BlendParams& params,
                                       const BaseRasters* cached,
                                       bool force_first, bool* had_candidate) {
    const Scene& base = base_choice == BaseChoice::A ? scene_a : scene_b;
    const Scene& donor = base_choice == BaseChoice::A ? scene_b : scene_a;

    Blend blend{base,
                {analogy, base_choice, base.concept_name, donor.concept_name, {}, {}}};
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    bool first_pending = force_first;
    *had_candidate = false;

    for (const auto& [left, right] : analogy.mappings) {
        const std::string& base_name = base_choice == BaseChoice::A ? left : right;
        const std::string& donor_name = base_choice == BaseChoice::A ? right : left;
        for (const auto& path : find_parts(blend.scene, base_name)) {
            if (path == blend.scene.root.name) continue;  // root has no parent slot
            if (!blend.scene.find(path)) continue;  // consumed by an earlier swap
            PartName pn = PartName::parse(leaf_name(path));
            // Trailing-segment finds (base "front_leg" for "leg") stay visible
            // to callers but are not swap candidates: replacements must pair
            // bases that literally appear in the analogy.
            if (pn.base != base_name) continue;
            auto donor_part = match_donor_part(donor, pn, donor_name);
            if (!donor_part) continue;
            *had_candidate = true;

            bool coin = unit(rng) < params.replace_probability;
            if (first_pending) {
                coin = true;
                first_pending = false;
            }

            std::string anchor = path;
            if (coin) {
                std::string donor_leaf = leaf_name(*donor_part);
                if (!name_used_outside(blend.scene.root, donor_leaf, "", path)) {
                    replace_part(blend, path, donor, *donor_part,
                                 params.scale_to_fit);
                    anchor = parent_path(path) + "/" + donor_leaf;
                    blend.provenance.replacements.emplace_back(path, *donor_part);
                }
            }
            auto copied =
                compose_attachments(blend, donor, *donor_part, anchor, analogy);
            blend.provenance.compositions.insert(blend.provenance.compositions.end(),
                                                 copied.begin(), copied.end());
        }
    }

    repair_consistency(blend);
    blend.scene.validate();

    BaseRasters local;
    const BaseRasters* rasters = cached;
    if (!rasters) {
        local = BaseRasters::make(scene_a, scene_b, params);
        rasters = &local;
    }
    if (is_too_similar(blend.scene, rasters->a, rasters->b, params))
        return std::nullopt;
    return blend;
}

}  // namespace

std::optional<Blend> construct_blend(const Analogy& analogy, BaseChoice base_choice,
                                     const Scene& scene_a, const Scene& scene_b,
                                     std::uint64_t seed, const BlendParams& params,
                                     const BaseRasters* cached) {
    bool had_candidate = false;
    auto blend = construct_attempt(analogy, base_choice, scene_a, scene_b, seed,
                                   params, cached, false, &had_candidate);
    bool replaced = blend && !blend->provenance.replacements.empty();
    if (!replaced && had_candidate) {
        // No coin came up heads; redo the run with the first swap forced.
        blend = construct_attempt(analogy, base_choice, scene_a, scene_b, seed,
                                  params, cached, true, &had_candidate);
    }
    return blend;
}

bool respects_analogy(const Blend& blend) {
    for (const auto& [pa, pb] : blend.provenance.replacements) {
        std::string base_side = PartName::parse(leaf_name(pa)).base;
        std::string donor_side = PartName::parse(leaf_name(pb)).base;
        const auto& mappings = blend.provenance.analogy.mappings;
        bool ok = false;
        for (const auto& [l, r] : mappings) {
            const std::string& want_l =
                blend.provenance.base_choice == BaseChoice::A ? base_side : donor_side;
            const std::string& want_r =
                blend.provenance.base_choice == BaseChoice::A ? donor_side : base_side;
            if (l == want_l && r == want_r) {
                ok = true;
                break;
            }
        }
        if (!ok) return false;
    }
    return true;
}

}  // namespace chimera
