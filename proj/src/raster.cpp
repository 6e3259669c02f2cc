#include "chimera/raster.hpp"

#include <algorithm>
#include <cmath>

#include "chimera/errors.hpp"

namespace chimera {
namespace {

constexpr int kSupersample = 2;

struct Canvas {
    int w, h;
    std::vector<std::uint8_t> px;

    void set(int x, int y, std::uint8_t v) {
        if (x >= 0 && x < w && y >= 0 && y < h)
            px[static_cast<std::size_t>(y) * w + x] = v;
    }
};

void fill_outlines(Canvas& canvas, const std::vector<std::vector<Vec2>>& loops,
                   std::uint8_t value) {
    double ymin = 1e300, ymax = -1e300;
    for (const auto& loop : loops)
        for (const auto& p : loop) {
            ymin = std::min(ymin, p.y);
            ymax = std::max(ymax, p.y);
        }
    int y0 = std::max(0, static_cast<int>(std::floor(ymin)));
    int y1 = std::min(canvas.h - 1, static_cast<int>(std::ceil(ymax)));
    for (int y = y0; y <= y1; ++y) {
        double yc = y + 0.5;
        std::vector<double> xs;
        for (const auto& loop : loops) {
            for (std::size_t i = 0, j = loop.size() - 1; i < loop.size(); j = i++) {
                const Vec2& a = loop[j];
                const Vec2& b = loop[i];
                if ((a.y > yc) != (b.y > yc))
                    xs.push_back(a.x + (yc - a.y) / (b.y - a.y) * (b.x - a.x));
            }
        }
        std::sort(xs.begin(), xs.end());
        for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
            int x0 = static_cast<int>(std::ceil(xs[k] - 0.5));
            int x1 = static_cast<int>(std::floor(xs[k + 1] - 0.5));
            for (int x = std::max(0, x0); x <= std::min(canvas.w - 1, x1); ++x)
                canvas.set(x, y, value);
        }
    }
}

void stroke_segment(Canvas& canvas, Vec2 a, Vec2 b, double half_width,
                    std::uint8_t value) {
    int x0 = static_cast<int>(std::floor(std::min(a.x, b.x) - half_width - 1));
    int x1 = static_cast<int>(std::ceil(std::max(a.x, b.x) + half_width + 1));
    int y0 = static_cast<int>(std::floor(std::min(a.y, b.y) - half_width - 1));
    int y1 = static_cast<int>(std::ceil(std::max(a.y, b.y) + half_width + 1));
    Vec2 ab = b - a;
    double len2 = dot(ab, ab);
    for (int y = std::max(0, y0); y <= std::min(canvas.h - 1, y1); ++y) {
        for (int x = std::max(0, x0); x <= std::min(canvas.w - 1, x1); ++x) {
            Vec2 p{x + 0.5, y + 0.5};
            double t = len2 > 0.0 ? std::clamp(dot(p - a, ab) / len2, 0.0, 1.0) : 0.0;
            Vec2 proj = a + ab * t;
            if (norm(p - proj) <= half_width) canvas.set(x, y, value);
        }
    }
}

void draw_object(Canvas& canvas, const GraphicObject& obj, Vec2 base, double sx,
                 double sy) {
    Vec2 origin = base + obj.offset;
    if (obj.shape) {
        const Shape& shape = *obj.shape;
        auto to_px = [&](Vec2 p) -> Vec2 {
            return {(origin.x + p.x) * sx, (origin.y + p.y) * sy};
        };
        auto chains = shape.outlines();

        if (shape.style.fill && shape.closed) {
            std::vector<std::vector<Vec2>> loops;
            for (const auto& c : chains) {
                if (c.pts.size() < 3) continue;
                std::vector<Vec2> loop;
                for (const auto& p : c.pts) loop.push_back(to_px(p));
                loops.push_back(std::move(loop));
            }
            if (!loops.empty())
                fill_outlines(canvas, loops, shape.style.fill->luminance());
        }
        if (shape.style.stroke && shape.style.stroke_width > 0.0) {
            double hw = shape.style.stroke_width * (sx + sy) / 2.0 / 2.0;
            std::uint8_t v = shape.style.stroke->luminance();
            for (const auto& c : chains) {
                std::size_t nseg = c.pts.size() - 1 + (c.closed ? 1 : 0);
                for (std::size_t i = 0; i < nseg; ++i) {
                    Vec2 a = to_px(c.pts[i]);
                    Vec2 b = to_px(c.pts[(i + 1) % c.pts.size()]);
                    stroke_segment(canvas, a, b, hw, v);
                }
            }
        }
    }
    for (const auto& child : obj.children) draw_object(canvas, child, origin, sx, sy);
}

}  // namespace

Bitmap downsample2x(const Bitmap& src) {
    Bitmap out;
    out.width = src.width / 2;
    out.height = src.height / 2;
    out.pixels.resize(static_cast<std::size_t>(out.width) * out.height);
    for (int y = 0; y < out.height; ++y) {
        for (int x = 0; x < out.width; ++x) {
            int sum = src.at(2 * x, 2 * y) + src.at(2 * x + 1, 2 * y) +
                      src.at(2 * x, 2 * y + 1) + src.at(2 * x + 1, 2 * y + 1);
            out.pixels[static_cast<std::size_t>(y) * out.width + x] =
                static_cast<std::uint8_t>((sum + 2) / 4);
        }
    }
    return out;
}

Bitmap rasterize(const Scene& scene, int width, int height) {
    Canvas canvas;
    canvas.w = width * kSupersample;
    canvas.h = height * kSupersample;
    canvas.px.assign(static_cast<std::size_t>(canvas.w) * canvas.h, 255);

    double sx = canvas.w / scene.canvas.x;
    double sy = canvas.h / scene.canvas.y;
    draw_object(canvas, scene.root, {}, sx, sy);

    Bitmap super;
    super.width = canvas.w;
    super.height = canvas.h;
    super.pixels = std::move(canvas.px);
    return downsample2x(super);
}

double rmse(const Bitmap& a, const Bitmap& b) {
    if (a.width != b.width || a.height != b.height || a.pixels.size() != b.pixels.size())
        throw DimensionMismatchError();
    if (a.pixels.empty()) return 0.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < a.pixels.size(); ++i) {
        double d = static_cast<double>(a.pixels[i]) - static_cast<double>(b.pixels[i]);
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(a.pixels.size())) / 255.0;
}

}  // namespace chimera
