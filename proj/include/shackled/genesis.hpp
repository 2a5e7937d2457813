#pragma once

// Seeded generator for scenes of triangular prisms.
//
// Draw order from the stream is fixed: prism count; then for each prism its
// centre (x, y, z), size, depth and palette index; then the background
// (top colour, bottom colour); then the lighting (light x, y, ambient,
// diffuse, specular, shininess). Changing the order changes every output.

#include <array>
#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "shackled/scene.hpp"

namespace shackled::genesis {

struct Seed {
    std::array<std::uint8_t, 32> bytes{};

    bool operator==(const Seed&) const = default;
};

/// Up to 64 hex digits, optional 0x prefix, read as a big-endian number.
Seed parse_seed_hex(std::string_view hex);
std::string to_hex(const Seed& seed);
/// seed + index as 256-bit big-endian integers, wrapping.
Seed seed_at_index(const Seed& seed, std::uint64_t index);
/// XOR of the seed's four 64-bit big-endian words.
std::uint64_t initial_state(const Seed& seed);

/// One splitmix64 step: returns (output, next state).
std::pair<std::uint64_t, std::uint64_t> prng_next(std::uint64_t state);

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t state) : state_(state) {}
    std::uint64_t next();
    /// Uniform in [lo, hi] by modulo reduction.
    std::int64_t between(std::int64_t lo, std::int64_t hi);

private:
    std::uint64_t state_;
};

struct GenesisParams {
    std::uint32_t prism_count_min = 3;
    std::uint32_t prism_count_max = 12;
    Fx position_min = Fx::from_raw(-2'500'000'000);
    Fx position_max = Fx::from_raw(2'500'000'000);
    // Front-face z of each prism.
    Fx z_min = kFxZero;
    Fx z_max = kFxOne;
    Fx size_min = Fx::from_raw(500'000'000);
    Fx size_max = Fx::from_raw(600'000'000);
    Fx depth_min = Fx::from_raw(300'000'000);
    Fx depth_max = Fx::from_raw(1'000'000'000);
    std::vector<ColorRGB> palette = {
        {230, 57, 70}, {241, 250, 238}, {168, 218, 220}, {69, 123, 157}, {244, 162, 97}, {42, 157, 143},
    };
    std::uint32_t canvas_size = 128;
};

/// Empty list when the parameters are usable.
std::vector<Violation> validate(const GenesisParams& params);

/// Six vertices (front triangle at center.z, back triangle at center.z +
/// depth) and seven outward-wound faces: the front, then two per side wall.
/// The back is left open.
Mesh make_prism(const Vec3Fx& center, Fx size, Fx depth, ColorRGB color);

/// Camera shared by every generated instance.
Camera genesis_camera();

SceneDocument generate_instance(const Seed& seed, const GenesisParams& params = {});

}  // namespace shackled::genesis
