#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "shackled/fxp.hpp"
#include "shackled/scene.hpp"
#include "shackled/vertexpipe.hpp"

namespace shackled {

struct Pixel {
    std::int64_t x = 0;
    std::int64_t y = 0;

    constexpr auto operator<=>(const Pixel&) const = default;
};

/// Screen position of a projected vertex, rounded half away from zero.
Pixel pixel_of(const ProjectedVertex& v);

struct ScreenTriangle {
    ProjectedVertex v0;
    ProjectedVertex v1;
    ProjectedVertex v2;
    // World-space corners, carried so fragments can be lit in world space.
    Vec3Fx w0;
    Vec3Fx w1;
    Vec3Fx w2;
    Vec3Fx face_normal;
    std::uint32_t face_index = 0;
    // Zero-area in world space; face_normal was forced to (0,0,-1).
    bool degenerate_normal = false;
};

struct Fragment {
    std::int64_t px = 0;
    std::int64_t py = 0;
    Fx depth;
    ColorRGB color;
    Vec3Fx normal;
    Vec3Fx world;
    std::uint32_t face_index = 0;

    bool operator==(const Fragment&) const = default;
};

/// One triangle per face whose three vertices projected validly, in face order.
std::vector<ScreenTriangle> assemble(const std::vector<ProjectedVertex>& projected, const Mesh& mesh,
                                     const std::vector<Vec3Fx>& world);

/// True when the face normal points against the viewing direction.
bool is_front_facing(const ScreenTriangle& tri, const Camera& cam);
std::vector<ScreenTriangle> backface_cull(const std::vector<ScreenTriangle>& tris, const Camera& cam);

/// Integer Bresenham, both endpoints included. Endpoints are put in a
/// canonical order first so (a, b) and (b, a) trace the same pixels.
std::vector<Pixel> bresenham_line(Pixel a, Pixel b);
/// Number of pixels bresenham_line(a, b) produces.
std::uint64_t line_pixel_count(Pixel a, Pixel b);

/// Pixels on the three edges of the triangle, including the shared corners
/// once per edge.
std::uint64_t edge_pixel_count(const ScreenTriangle& tri);

struct RowSpan {
    std::int64_t y = 0;
    std::int64_t x_min = 0;
    std::int64_t x_max = 0;

    std::uint64_t length() const { return static_cast<std::uint64_t>(x_max - x_min + 1); }
};

/// What the rasterizer will emit for one triangle: either inclusive row
/// spans (filled triangles) or a distinct pixel list (wireframes and
/// zero-area triangles). Pixels and spans are in row-major order.
struct RasterPlan {
    bool filled = false;
    std::vector<RowSpan> spans;
    std::vector<Pixel> pixels;

    std::uint64_t fragment_count() const;
};

bool is_screen_degenerate(const ScreenTriangle& tri);
RasterPlan plan_raster(const ScreenTriangle& tri, bool wireframe_only);

/// Evaluates fragment attributes anywhere on or near one triangle.
/// Colour, depth and world position are barycentric blends of the corners.
/// Negative weights are clamped to zero and the rest rescaled, so edge
/// pixels just outside the exact triangle never extrapolate.
class FragmentInterpolator {
public:
    explicit FragmentInterpolator(const ScreenTriangle& tri);
    Fragment at(std::int64_t x, std::int64_t y) const;

private:
    // Weights of corners 1 and 2; corner 0 takes the remainder.
    struct Weights {
        Fx w1;
        Fx w2;
    };
    Weights weights(std::int64_t x, std::int64_t y) const;

    ScreenTriangle tri_;
    Pixel p0_;
    Pixel p1_;
    Pixel p2_;
    std::int64_t area2_ = 0;
    // Zero-area fallback: interpolate along the longest corner pair.
    int seg_a_ = 0;
    int seg_b_ = 0;
};

/// Wireframe via Bresenham, then every pixel between the leftmost and
/// rightmost edge pixel of each row. Zero-area triangles yield their edge
/// pixels only.
std::vector<Fragment> scanline_fill(const ScreenTriangle& tri);
std::vector<Fragment> wireframe_fragments(const ScreenTriangle& tri);

std::vector<Fragment> clip_to_canvas(const std::vector<Fragment>& frags, std::uint32_t canvas_size);

}  // namespace shackled
