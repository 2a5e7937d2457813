#include "shackled/scene.hpp"

namespace shackled {

std::string_view to_string(CameraModel model) {
    return model == CameraModel::Perspective ? "perspective" : "orthographic";
}

std::string_view to_string(BackgroundMode mode) {
    return mode == BackgroundMode::Unicolor ? "unicolor" : "vertical_gradient";
}

std::vector<Violation> validate(const SceneDocument& doc) {
    std::vector<Violation> out;
    const Mesh& mesh = doc.mesh;
    const RenderSettings& s = doc.settings;

    if (mesh.colors.size() != mesh.positions.size()) {
        out.push_back({"mesh.colors", "colour list length mismatch (" + std::to_string(mesh.colors.size()) +
                                          " colours for " + std::to_string(mesh.positions.size()) + " positions)"});
    }
    for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
        for (std::uint32_t idx : mesh.faces[f]) {
            if (idx >= mesh.positions.size()) {
                out.push_back({"mesh.faces[" + std::to_string(f) + "]", "face index out of range"});
                break;
            }
        }
    }

    if (s.canvas_size < 1) {
        out.push_back({"settings.canvas_size", "canvas size must be at least 1"});
    } else if (s.canvas_size > kMaxCanvasSize) {
        out.push_back({"settings.canvas_size", "canvas size exceeds " + std::to_string(kMaxCanvasSize)});
    }

    const Vec3Fx& sc = s.transform.scale;
    if (sc.x == kFxZero || sc.y == kFxZero || sc.z == kFxZero) {
        out.push_back({"settings.transform.scale", "zero scale component"});
    }

    if (s.camera.model == CameraModel::Perspective && s.camera.focal_length <= kFxZero) {
        out.push_back({"settings.camera.focal_length", "focal length must be positive"});
    }

    const auto coefficient = [&](Fx v, const char* name) {
        if (v < kFxZero || v > kFxOne) {
            out.push_back({std::string("settings.lighting.") + name, "coefficient outside [0, 1]"});
        }
    };
    coefficient(s.lighting.ambient, "ambient");
    coefficient(s.lighting.diffuse, "diffuse");
    coefficient(s.lighting.specular, "specular");
    if (s.lighting.shininess < 1) {
        out.push_back({"settings.lighting.shininess", "shininess must be at least 1"});
    }
    return out;
}

}  // namespace shackled
