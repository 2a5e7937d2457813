#include <limits>

#include "json.hpp"
#include "shackled/scene.hpp"

namespace shackled {

namespace {

using nlohmann::json;

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

std::string leaf(const std::string& path) {
    const auto dot = path.find_last_of('.');
    std::string key = dot == std::string::npos ? path : path.substr(dot + 1);
    if (const auto bracket = key.find('['); bracket != std::string::npos) {
        key.resize(bracket);
    }
    return key;
}

[[noreturn]] void bad(const std::string& path, const std::string& what) { throw SchemaError(leaf(path), path, what); }

const json& member(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object()) {
        bad(path, "expected an object");
    }
    const auto it = obj.find(key);
    if (it == obj.end()) {
        bad(join(path, key), "missing field");
    }
    return *it;
}

std::int64_t integer(const json& v, const std::string& path, std::int64_t lo, std::int64_t hi) {
    if (!v.is_number_integer()) {
        bad(path, "expected an integer");
    }
    if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(hi)) {
        bad(path, "integer out of range");
    }
    const auto n = v.get<std::int64_t>();
    if (n < lo || n > hi) {
        bad(path, "integer out of range");
    }
    return n;
}

Fx fx(const json& v, const std::string& path) {
    return Fx::from_raw(integer(v, path, std::numeric_limits<std::int64_t>::min(), std::numeric_limits<std::int64_t>::max()));
}

const json& triple(const json& v, const std::string& path) {
    if (!v.is_array() || v.size() != 3) {
        bad(path, "expected an array of 3 elements");
    }
    return v;
}

Vec3Fx vec(const json& v, const std::string& path) {
    const json& a = triple(v, path);
    return {fx(a[0], path + "[0]"), fx(a[1], path + "[1]"), fx(a[2], path + "[2]")};
}

ColorRGB color(const json& v, const std::string& path) {
    const json& a = triple(v, path);
    return {static_cast<std::uint8_t>(integer(a[0], path + "[0]", 0, 255)),
            static_cast<std::uint8_t>(integer(a[1], path + "[1]", 0, 255)),
            static_cast<std::uint8_t>(integer(a[2], path + "[2]", 0, 255))};
}

const json& array(const json& v, const std::string& path) {
    if (!v.is_array()) {
        bad(path, "expected an array");
    }
    return v;
}

bool boolean(const json& v, const std::string& path) {
    if (!v.is_boolean()) {
        bad(path, "expected a boolean");
    }
    return v.get<bool>();
}

std::string text(const json& v, const std::string& path) {
    if (!v.is_string()) {
        bad(path, "expected a string");
    }
    return v.get<std::string>();
}

json to_json(const Vec3Fx& v) { return json::array({v.x.raw(), v.y.raw(), v.z.raw()}); }
json to_json(const ColorRGB& c) { return json::array({c.r, c.g, c.b}); }

}  // namespace

std::string scene_to_json(const SceneDocument& doc) {
    json positions = json::array();
    for (const Vec3Fx& p : doc.mesh.positions) {
        positions.push_back(to_json(p));
    }
    json colors = json::array();
    for (const ColorRGB& c : doc.mesh.colors) {
        colors.push_back(to_json(c));
    }
    json faces = json::array();
    for (const Face& f : doc.mesh.faces) {
        faces.push_back(json::array({f[0], f[1], f[2]}));
    }
    const RenderSettings& s = doc.settings;
    json out = {
        {"mesh", {{"positions", positions}, {"colors", colors}, {"faces", faces}}},
        {"settings",
         {{"canvas_size", s.canvas_size},
          {"camera",
           {{"model", to_string(s.camera.model)},
            {"focal_length", s.camera.focal_length.raw()},
            {"position_z", s.camera.position_z.raw()}}},
          {"transform", {{"translation", to_json(s.transform.translation)}, {"scale", to_json(s.transform.scale)}}},
          {"lighting",
           {{"light_position", to_json(s.lighting.light_position)},
            {"ambient", s.lighting.ambient.raw()},
            {"diffuse", s.lighting.diffuse.raw()},
            {"specular", s.lighting.specular.raw()},
            {"shininess", s.lighting.shininess},
            {"light_color", to_json(s.lighting.light_color)}}},
          {"background",
           {{"mode", to_string(s.background.mode)},
            {"color_top", to_json(s.background.color_top)},
            {"color_bottom", to_json(s.background.color_bottom)}}},
          {"backface_culling", s.backface_culling},
          {"wireframe_only", s.wireframe_only}}},
    };
    return out.dump(2) + "\n";
}

SceneDocument scene_from_json(std::string_view input) {
    json root;
    try {
        root = json::parse(input);
    } catch (const json::parse_error& e) {
        throw SchemaError("", "document", std::string("malformed JSON: ") + e.what());
    }

    SceneDocument doc;
    const json& mesh = member(root, "mesh", "");
    {
        const json& positions = array(member(mesh, "positions", "mesh"), "mesh.positions");
        for (std::size_t i = 0; i < positions.size(); ++i) {
            doc.mesh.positions.push_back(vec(positions[i], "mesh.positions[" + std::to_string(i) + "]"));
        }
        const json& colors = array(member(mesh, "colors", "mesh"), "mesh.colors");
        for (std::size_t i = 0; i < colors.size(); ++i) {
            doc.mesh.colors.push_back(color(colors[i], "mesh.colors[" + std::to_string(i) + "]"));
        }
        const json& faces = array(member(mesh, "faces", "mesh"), "mesh.faces");
        for (std::size_t i = 0; i < faces.size(); ++i) {
            const std::string p = "mesh.faces[" + std::to_string(i) + "]";
            const json& f = triple(faces[i], p);
            Face face{};
            for (std::size_t k = 0; k < 3; ++k) {
                face[k] = static_cast<std::uint32_t>(integer(f[k], p, 0, std::numeric_limits<std::uint32_t>::max()));
            }
            doc.mesh.faces.push_back(face);
        }
    }

    const json& settings = member(root, "settings", "");
    RenderSettings& s = doc.settings;
    s.canvas_size = static_cast<std::uint32_t>(
        integer(member(settings, "canvas_size", "settings"), "settings.canvas_size", 0, std::numeric_limits<std::uint32_t>::max()));

    const json& camera = member(settings, "camera", "settings");
    const std::string model = text(member(camera, "model", "settings.camera"), "settings.camera.model");
    if (model == "perspective") {
        s.camera.model = CameraModel::Perspective;
    } else if (model == "orthographic") {
        s.camera.model = CameraModel::Orthographic;
    } else {
        bad("settings.camera.model", "expected \"perspective\" or \"orthographic\"");
    }
    s.camera.focal_length = fx(member(camera, "focal_length", "settings.camera"), "settings.camera.focal_length");
    s.camera.position_z = fx(member(camera, "position_z", "settings.camera"), "settings.camera.position_z");

    const json& transform = member(settings, "transform", "settings");
    s.transform.translation = vec(member(transform, "translation", "settings.transform"), "settings.transform.translation");
    s.transform.scale = vec(member(transform, "scale", "settings.transform"), "settings.transform.scale");

    const json& lighting = member(settings, "lighting", "settings");
    const std::string lp = "settings.lighting";
    s.lighting.light_position = vec(member(lighting, "light_position", lp), lp + ".light_position");
    s.lighting.ambient = fx(member(lighting, "ambient", lp), lp + ".ambient");
    s.lighting.diffuse = fx(member(lighting, "diffuse", lp), lp + ".diffuse");
    s.lighting.specular = fx(member(lighting, "specular", lp), lp + ".specular");
    s.lighting.shininess = static_cast<std::uint32_t>(
        integer(member(lighting, "shininess", lp), lp + ".shininess", 0, std::numeric_limits<std::uint32_t>::max()));
    s.lighting.light_color = color(member(lighting, "light_color", lp), lp + ".light_color");

    const json& background = member(settings, "background", "settings");
    const std::string bp = "settings.background";
    const std::string mode = text(member(background, "mode", bp), bp + ".mode");
    if (mode == "unicolor") {
        s.background.mode = BackgroundMode::Unicolor;
    } else if (mode == "vertical_gradient") {
        s.background.mode = BackgroundMode::VerticalGradient;
    } else {
        bad(bp + ".mode", "expected \"unicolor\" or \"vertical_gradient\"");
    }
    s.background.color_top = color(member(background, "color_top", bp), bp + ".color_top");
    s.background.color_bottom = color(member(background, "color_bottom", bp), bp + ".color_bottom");

    s.backface_culling = boolean(member(settings, "backface_culling", "settings"), "settings.backface_culling");
    s.wireframe_only = boolean(member(settings, "wireframe_only", "settings"), "settings.wireframe_only");
    return doc;
}

}  // namespace shackled
