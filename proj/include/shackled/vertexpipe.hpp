#pragma once

#include <cstdint>
#include <vector>

#include "shackled/fxp.hpp"
#include "shackled/scene.hpp"

namespace shackled {

// Vertices further than this many pixels from the canvas origin are flagged
// invalid; it bounds the rasterizer's row and edge work for degenerate
// perspective cases close to the camera plane.
inline constexpr std::int64_t kMaxScreenExtent = std::int64_t{1} << 20;

struct ProjectedVertex {
    Fx sx;     // pixels, +x to the right
    Fx sy;     // pixels, +y down the image
    Fx depth;  // view-space z
    ColorRGB color;
    bool valid = false;

    bool operator==(const ProjectedVertex&) const = default;
};

/// Component-wise scale, then translation: model space to world space.
Vec3Fx apply_model_view(const Vec3Fx& p, const Transform& t);

/// Projects a world-space point onto a canvas_size x canvas_size screen.
ProjectedVertex project(const Vec3Fx& p, const Camera& cam, std::uint32_t canvas_size);

/// World-space positions of every mesh vertex, in mesh order.
std::vector<Vec3Fx> world_positions(const Mesh& mesh, const Transform& t);

/// Model-view then projection for every vertex; colours pass through.
std::vector<ProjectedVertex> run_vertex_shader(const Mesh& mesh, const RenderSettings& settings);

}  // namespace shackled
