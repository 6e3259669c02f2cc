#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chimera/mapper.hpp"
#include "chimera/raster.hpp"
#include "chimera/scene.hpp"

namespace chimera {

/// Underscore decomposition of an object name, e.g. right_leg_1 has prefix
/// "right", base "leg", suffix "1". Recomposing prefix_base_suffix always
/// gives back the raw name.
struct PartName {
    std::string raw;
    std::string prefix;
    std::string base;
    std::string suffix;

    static PartName parse(std::string_view raw);

    /// prefix_newbase_suffix with this name's affixes.
    std::string with_base(std::string_view new_base) const;

    /// Whether an object carrying this name stands for `mapping_name`:
    /// the base matches outright or ends in `_<mapping_name>`.
    bool matches(std::string_view mapping_name) const;
};

enum class BaseChoice { A, B };

inline const char* to_string(BaseChoice c) { return c == BaseChoice::A ? "A" : "B"; }

struct BlendProvenance {
    Analogy analogy;
    BaseChoice base_choice = BaseChoice::A;
    std::string base_concept;
    std::string donor_concept;
    std::vector<std::pair<std::string, std::string>> replacements;  // base path -> donor path
    std::vector<std::string> compositions;  // donor paths copied in
};

struct Blend {
    Scene scene;
    BlendProvenance provenance;
};

struct BlendParams {
    double similarity_threshold = 0.02;
    int raster_width = 256;
    int raster_height = 256;
    double replace_probability = 0.5;
    bool scale_to_fit = false;
};

/// Pre-rendered input scenes, reused across many construct_blend calls.
struct BaseRasters {
    Bitmap a;
    Bitmap b;

    static BaseRasters make(const Scene& scene_a, const Scene& scene_b,
                            const BlendParams& params);
};

/// Paths of all objects whose name stands for `mapping_name`, pre-order.
std::vector<std::string> find_parts(const Scene& scene,
                                    std::string_view mapping_name);

/// Donor lookup: first the found part's full name with the base swapped
/// (e.g. right_arm_1), then the bare target name. Exact matches only, so
/// plural forms never bind.
std::optional<std::string> match_donor_part(const Scene& donor,
                                            const PartName& found,
                                            std::string_view mapping_target);

/// Swaps the subtree at `base_path` for a copy of the donor subtree, keeping
/// the replaced part's bounding-box center and re-pointing scene relations
/// that named the replaced object.
void replace_part(Blend& blend, std::string_view base_path, const Scene& donor,
                  std::string_view donor_path, bool scale_to_fit = false);

/// Copies donor parts related to `donor_path` into the blend under
/// `anchor_path`, keeping their donor-relative offsets, unless the blend
/// already has a part of that name or the analogy maps it. Returns the donor
/// paths that were copied; their relations come along re-pointed.
std::vector<std::string> compose_attachments(Blend& blend, const Scene& donor,
                                             std::string_view donor_path,
                                             std::string_view anchor_path,
                                             const Analogy& analogy);

/// Drops relations whose endpoints no longer resolve and pulls objects that
/// strayed outside twice the canvas back to it. Idempotent.
void repair_consistency(Blend& blend);

bool is_too_similar(const Scene& blend_scene, const Bitmap& base_a,
                    const Bitmap& base_b, const BlendParams& params);

/// Runs the whole construction for one analogy: part search, seeded
/// replacement, composition, consistency repair, then the similarity gate
/// against both input scenes. Returns nothing when the gate rejects.
std::optional<Blend> construct_blend(const Analogy& analogy, BaseChoice base_choice,
                                     const Scene& scene_a, const Scene& scene_b,
                                     std::uint64_t seed,
                                     const BlendParams& params = {},
                                     const BaseRasters* cached = nullptr);

/// Every recorded replacement corresponds to a mapping of the analogy.
bool respects_analogy(const Blend& blend);

}  // namespace chimera
