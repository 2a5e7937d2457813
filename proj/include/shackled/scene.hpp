#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "shackled/fxp.hpp"

namespace shackled {

struct ColorRGB {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    constexpr bool operator==(const ColorRGB&) const = default;
};
static_assert(sizeof(ColorRGB) == 3, "ColorRGB must pack to three bytes");

using Face = std::array<std::uint32_t, 3>;

inline constexpr ColorRGB kDefaultVertexColor{200, 200, 200};

struct Mesh {
    std::vector<Vec3Fx> positions;
    std::vector<ColorRGB> colors;
    std::vector<Face> faces;

    bool operator==(const Mesh&) const = default;
};

struct Transform {
    Vec3Fx translation{kFxZero, kFxZero, kFxZero};
    Vec3Fx scale{kFxOne, kFxOne, kFxOne};

    bool operator==(const Transform&) const = default;
};

enum class CameraModel { Perspective, Orthographic };

// The camera sits on the z-axis at position_z and looks toward +z.
struct Camera {
    CameraModel model = CameraModel::Perspective;
    Fx focal_length = kFxOne;
    Fx position_z = Fx::from_raw(-5 * Fx::kScale);

    bool operator==(const Camera&) const = default;
    Vec3Fx position() const { return {kFxZero, kFxZero, position_z}; }
};

struct Lighting {
    Vec3Fx light_position{Fx::from_raw(4 * Fx::kScale), Fx::from_raw(-4 * Fx::kScale), Fx::from_raw(-6 * Fx::kScale)};
    Fx ambient = Fx::from_raw(400'000'000);
    Fx diffuse = Fx::from_raw(600'000'000);
    Fx specular = Fx::from_raw(500'000'000);
    std::uint32_t shininess = 32;
    ColorRGB light_color{255, 255, 255};

    bool operator==(const Lighting&) const = default;
};

enum class BackgroundMode { Unicolor, VerticalGradient };

struct Background {
    BackgroundMode mode = BackgroundMode::VerticalGradient;
    ColorRGB color_top{12, 16, 48};
    ColorRGB color_bottom{40, 90, 200};

    bool operator==(const Background&) const = default;
};

struct RenderSettings {
    std::uint32_t canvas_size = 128;
    Camera camera;
    Transform transform;
    Lighting lighting;
    Background background;
    bool backface_culling = true;
    bool wireframe_only = false;

    bool operator==(const RenderSettings&) const = default;
};

struct SceneDocument {
    Mesh mesh;
    RenderSettings settings;

    bool operator==(const SceneDocument&) const = default;
};

// Largest accepted canvas side. Keeps a single request from asking for an
// unbounded image buffer.
inline constexpr std::uint32_t kMaxCanvasSize = 4096;

struct Violation {
    std::string field;
    std::string message;

    bool operator==(const Violation&) const = default;
};

/// Every invariant violation in the document; empty means valid.
std::vector<Violation> validate(const SceneDocument& doc);

// ---- OBJ -------------------------------------------------------------------

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

class NonTriangularFace : public ParseError {
public:
    NonTriangularFace(std::size_t line, std::size_t count)
        : ParseError(line, "face has " + std::to_string(count) + " vertices, only triangles are supported") {}
};

/// Reads `v x y z [r g b]` and `f i j k` lines; everything else is skipped.
Mesh parse_obj(std::string_view text);
/// Writes positions with their colours and 1-based faces.
std::string write_obj(const Mesh& mesh);

// ---- JSON ------------------------------------------------------------------

class SchemaError : public std::runtime_error {
public:
    SchemaError(std::string field, const std::string& path, const std::string& what)
        : std::runtime_error(path + ": " + what), field_(std::move(field)), path_(path) {}
    /// The offending key, e.g. "faces".
    const std::string& field() const { return field_; }
    /// Dotted location, e.g. "mesh.faces".
    const std::string& path() const { return path_; }

private:
    std::string field_;
    std::string path_;
};

std::string scene_to_json(const SceneDocument& doc);
SceneDocument scene_from_json(std::string_view text);

std::string_view to_string(CameraModel model);
std::string_view to_string(BackgroundMode mode);

}  // namespace shackled
