#include "shackled/vertexpipe.hpp"

namespace shackled {

Vec3Fx apply_model_view(const Vec3Fx& p, const Transform& t) {
    return {
        fx_mul(p.x, t.scale.x) + t.translation.x,
        fx_mul(p.y, t.scale.y) + t.translation.y,
        fx_mul(p.z, t.scale.z) + t.translation.z,
    };
}

ProjectedVertex project(const Vec3Fx& p, const Camera& cam, std::uint32_t canvas_size) {
    ProjectedVertex out;
    out.depth = p.z - cam.position_z;

    if (cam.model == CameraModel::Perspective && out.depth <= Fx::from_raw(1)) {
        return out;
    }
    // A vertex whose screen position leaves the representable range gets the
    // same treatment as the singular case: flagged, never thrown.
    try {
        Fx ndc_x = p.x;
        Fx ndc_y = p.y;
        if (cam.model == CameraModel::Perspective) {
            ndc_x = fx_div(fx_mul(cam.focal_length, p.x), out.depth);
            ndc_y = fx_div(fx_mul(cam.focal_length, p.y), out.depth);
        }
        const Fx half = Fx::from_raw(static_cast<std::int64_t>(canvas_size) * (Fx::kScale / 2));
        out.sx = fx_mul(ndc_x + kFxOne, half);
        out.sy = fx_mul(kFxOne - ndc_y, half);
    } catch (const OverflowError&) {
        out.sx = kFxZero;
        out.sy = kFxZero;
        return out;
    }

    const Fx limit = Fx::from_int(kMaxScreenExtent);
    out.valid = fx_abs(out.sx) <= limit && fx_abs(out.sy) <= limit;
    return out;
}

std::vector<Vec3Fx> world_positions(const Mesh& mesh, const Transform& t) {
    std::vector<Vec3Fx> out;
    out.reserve(mesh.positions.size());
    for (const Vec3Fx& p : mesh.positions) {
        out.push_back(apply_model_view(p, t));
    }
    return out;
}

std::vector<ProjectedVertex> run_vertex_shader(const Mesh& mesh, const RenderSettings& settings) {
    std::vector<ProjectedVertex> out;
    out.reserve(mesh.positions.size());
    for (std::size_t i = 0; i < mesh.positions.size(); ++i) {
        ProjectedVertex v = project(apply_model_view(mesh.positions[i], settings.transform), settings.camera,
                                    settings.canvas_size);
        v.color = i < mesh.colors.size() ? mesh.colors[i] : kDefaultVertexColor;
        out.push_back(v);
    }
    return out;
}

}  // namespace shackled
