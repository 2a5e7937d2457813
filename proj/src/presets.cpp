#include "shackled/presets.hpp"

namespace shackled::presets {

namespace {

Vec3Fx point(std::int64_t x, std::int64_t y, std::int64_t z) {
    return {Fx::from_int(x), Fx::from_int(y), Fx::from_int(z)};
}

}  // namespace

SceneDocument first_render() {
    SceneDocument doc;
    doc.mesh.positions = {point(-1, 0, 0), point(-1, 2, 0), point(0, 2, 0),
                          point(1, 0, 5),  point(1, -2, 5), point(0, -2, 5)};
    const ColorRGB red{255, 0, 0};
    const ColorRGB green{0, 255, 0};
    const ColorRGB blue{0, 0, 255};
    doc.mesh.colors = {red, green, blue, red, green, blue};
    doc.mesh.faces = {{0, 1, 2}, {3, 4, 5}};
    return doc;
}

Mesh cube(Fx half_size) {
    Mesh m;
    // Vertex i has x = bit 0, y = bit 1, z = bit 2 (set bit = positive side).
    for (std::uint32_t i = 0; i < 8; ++i) {
        const Fx x = (i & 1) != 0 ? half_size : -half_size;
        const Fx y = (i & 2) != 0 ? half_size : -half_size;
        const Fx z = (i & 4) != 0 ? half_size : -half_size;
        m.positions.push_back({x, y, z});
        m.colors.push_back({static_cast<std::uint8_t>(80 + 160 * (i & 1)), static_cast<std::uint8_t>(80 + 80 * ((i >> 1) & 1)),
                            static_cast<std::uint8_t>(80 + 160 * ((i >> 2) & 1))});
    }
    // Each quad is listed counter-clockwise seen from outside the cube.
    const std::uint32_t quads[6][4] = {
        {0, 2, 3, 1},  // -z
        {4, 5, 7, 6},  // +z
        {0, 1, 5, 4},  // -y
        {2, 6, 7, 3},  // +y
        {0, 4, 6, 2},  // -x
        {1, 3, 7, 5},  // +x
    };
    for (const auto& q : quads) {
        m.faces.push_back({q[0], q[1], q[2]});
        m.faces.push_back({q[0], q[2], q[3]});
    }
    return m;
}

SceneDocument cube_scene() {
    SceneDocument doc;
    doc.mesh = cube(Fx::from_raw(Fx::kScale / 2));
    doc.settings.camera.focal_length = Fx::from_raw(4'500'000'000);
    doc.settings.camera.position_z = Fx::from_int(-5);
    return doc;
}

}  // namespace shackled::presets
