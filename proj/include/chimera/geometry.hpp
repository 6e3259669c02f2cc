#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

namespace chimera {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2& operator+=(Vec2 o) {
        x += o.x;
        y += o.y;
        return *this;
    }
    bool operator==(const Vec2&) const = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::sqrt(dot(a, a)); }

struct Color {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;
    bool operator==(const Color&) const = default;

    /// Rec. 709 luma, rounded to the nearest 8-bit level.
    std::uint8_t luminance() const {
        return static_cast<std::uint8_t>(
            std::lround(0.2126 * r + 0.7152 * g + 0.0722 * b));
    }
};

/// Axis-aligned bounding box over closed intervals. Starts empty.
struct Box {
    Vec2 lo{std::numeric_limits<double>::max(), std::numeric_limits<double>::max()};
    Vec2 hi{std::numeric_limits<double>::lowest(),
            std::numeric_limits<double>::lowest()};

    bool empty() const { return lo.x > hi.x || lo.y > hi.y; }

    void extend(Vec2 p) {
        lo.x = std::min(lo.x, p.x);
        lo.y = std::min(lo.y, p.y);
        hi.x = std::max(hi.x, p.x);
        hi.y = std::max(hi.y, p.y);
    }
    void extend(const Box& o) {
        if (o.empty()) return;
        extend(o.lo);
        extend(o.hi);
    }

    Vec2 center() const { return {(lo.x + hi.x) / 2.0, (lo.y + hi.y) / 2.0}; }
    double width() const { return hi.x - lo.x; }
    double height() const { return hi.y - lo.y; }

    bool intersects(const Box& o) const {
        return !empty() && !o.empty() && lo.x <= o.hi.x && o.lo.x <= hi.x &&
               lo.y <= o.hi.y && o.lo.y <= hi.y;
    }
    bool contains(Vec2 p) const {
        return !empty() && p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y;
    }

    Box translated(Vec2 d) const {
        Box b;
        if (!empty()) {
            b.extend(lo + d);
            b.extend(hi + d);
        }
        return b;
    }
};

}  // namespace chimera
