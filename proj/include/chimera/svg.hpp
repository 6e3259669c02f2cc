#pragma once

#include <string>
#include <string_view>

#include "chimera/scene.hpp"

namespace chimera {

/// Reads the restricted SVG subset: nested `<g id=...>` groups become
/// GraphicObjects; line/polyline/polygon/rect/circle/ellipse/path elements
/// become shapes; group transforms are limited to translate. Relations are
/// not part of SVG and stay empty.
Scene import_svg(std::string_view svg_text);

/// One nested `<g>` per object, id = name. Output bytes are deterministic
/// for identical scenes.
std::string export_svg(const Scene& scene);

}  // namespace chimera
