#include "shackled/genesis.hpp"

#include <stdexcept>

namespace shackled::genesis {

namespace {

constexpr Fx kSin60 = Fx::from_raw(866'025'404);

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

Fx draw_fx(SplitMix64& rng, Fx lo, Fx hi) { return Fx::from_raw(rng.between(lo.raw(), hi.raw())); }

std::uint8_t draw_byte(SplitMix64& rng) { return static_cast<std::uint8_t>(rng.between(0, 255)); }

ColorRGB draw_color(SplitMix64& rng) {
    const std::uint8_t r = draw_byte(rng);
    const std::uint8_t g = draw_byte(rng);
    const std::uint8_t b = draw_byte(rng);
    return {r, g, b};
}

}  // namespace

Seed parse_seed_hex(std::string_view hex) {
    if (hex.size() >= 2 && hex[0] == '0' && (hex[1] == 'x' || hex[1] == 'X')) {
        hex.remove_prefix(2);
    }
    if (hex.empty() || hex.size() > 64) {
        throw std::invalid_argument("seed must be 1 to 64 hex digits");
    }
    Seed seed;
    // Fill nibbles from the least significant end.
    for (std::size_t i = 0; i < hex.size(); ++i) {
        const int v = hex_value(hex[hex.size() - 1 - i]);
        if (v < 0) {
            throw std::invalid_argument("seed contains a non-hex character");
        }
        std::uint8_t& byte = seed.bytes[31 - i / 2];
        byte = static_cast<std::uint8_t>(byte | (i % 2 == 0 ? v : v << 4));
    }
    return seed;
}

std::string to_hex(const Seed& seed) {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    for (const std::uint8_t b : seed.bytes) {
        out.push_back(kDigits[b >> 4]);
        out.push_back(kDigits[b & 0xF]);
    }
    return out;
}

Seed seed_at_index(const Seed& seed, std::uint64_t index) {
    Seed out = seed;
    unsigned carry = 0;
    for (int i = 31; i >= 0; --i) {
        const unsigned add = i >= 24 ? static_cast<unsigned>((index >> (8 * (31 - i))) & 0xFF) : 0;
        const unsigned sum = out.bytes[i] + add + carry;
        out.bytes[i] = static_cast<std::uint8_t>(sum & 0xFF);
        carry = sum >> 8;
    }
    return out;
}

std::uint64_t initial_state(const Seed& seed) {
    std::uint64_t state = 0;
    for (std::size_t w = 0; w < 4; ++w) {
        std::uint64_t word = 0;
        for (std::size_t i = 0; i < 8; ++i) {
            word = (word << 8) | seed.bytes[w * 8 + i];
        }
        state ^= word;
    }
    return state;
}

std::pair<std::uint64_t, std::uint64_t> prng_next(std::uint64_t state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return {z ^ (z >> 31), state};
}

std::uint64_t SplitMix64::next() {
    const auto [value, state] = prng_next(state_);
    state_ = state;
    return value;
}

std::int64_t SplitMix64::between(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) {
        throw std::invalid_argument("empty range");
    }
    const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
    const std::uint64_t v = next();
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + (span == 0 ? v : v % span));
}

std::vector<Violation> validate(const GenesisParams& p) {
    std::vector<Violation> out;
    if (p.prism_count_min < 1 || p.prism_count_min > p.prism_count_max) {
        out.push_back({"prism_count_range", "empty or non-positive range"});
    }
    if (p.position_min > p.position_max) {
        out.push_back({"position_range", "empty range"});
    }
    if (p.z_min > p.z_max) {
        out.push_back({"z_range", "empty range"});
    }
    if (p.size_min <= kFxZero || p.size_min > p.size_max) {
        out.push_back({"size_range", "empty or non-positive range"});
    }
    if (p.depth_min <= kFxZero || p.depth_min > p.depth_max) {
        out.push_back({"depth_range", "empty or non-positive range"});
    }
    if (p.palette.empty()) {
        out.push_back({"palette", "palette is empty"});
    }
    if (p.canvas_size < 1 || p.canvas_size > kMaxCanvasSize) {
        out.push_back({"canvas_size", "canvas size out of range"});
    }
    return out;
}

Mesh make_prism(const Vec3Fx& center, Fx size, Fx depth, ColorRGB color) {
    if (size <= kFxZero || depth <= kFxZero) {
        throw std::invalid_argument("prism size and depth must be positive");
    }
    const Fx half = fx_div(size, Fx::from_int(2));
    const Fx across = fx_mul(size, kSin60);
    Mesh m;
    const Vec3Fx front[3] = {
        {center.x, center.y + size, center.z},
        {center.x - across, center.y - half, center.z},
        {center.x + across, center.y - half, center.z},
    };
    for (const Vec3Fx& v : front) {
        m.positions.push_back(v);
    }
    for (const Vec3Fx& v : front) {
        m.positions.push_back({v.x, v.y, v.z + depth});
    }
    m.colors.assign(6, color);

    m.faces.push_back({0, 2, 1});
    for (std::uint32_t i = 0; i < 3; ++i) {
        const std::uint32_t j = (i + 1) % 3;
        Face a{i, j, j + 3};
        Face b{i, j + 3, i + 3};
        // Flip the wall if its normal points back toward the prism axis.
        const Vec3Fx n = vec_cross(vec_sub(m.positions[a[1]], m.positions[a[0]]),
                                   vec_sub(m.positions[a[2]], m.positions[a[0]]));
        const Vec3Fx mid = vec_sub(vec_add(front[i], front[j]), vec_scale(center, Fx::from_int(2)));
        if (vec_dot(n, mid) < kFxZero) {
            std::swap(a[1], a[2]);
            std::swap(b[1], b[2]);
        }
        m.faces.push_back(a);
        m.faces.push_back(b);
    }
    return m;
}

Camera genesis_camera() {
    Camera cam;
    cam.model = CameraModel::Perspective;
    cam.focal_length = Fx::from_int(2);
    cam.position_z = Fx::from_int(-8);
    return cam;
}

SceneDocument generate_instance(const Seed& seed, const GenesisParams& params) {
    if (const auto problems = validate(params); !problems.empty()) {
        throw std::invalid_argument("invalid genesis parameters: " + problems.front().field + " " +
                                    problems.front().message);
    }
    SplitMix64 rng(initial_state(seed));
    SceneDocument doc;
    doc.settings.canvas_size = params.canvas_size;
    doc.settings.camera = genesis_camera();

    const auto count = static_cast<std::uint32_t>(rng.between(params.prism_count_min, params.prism_count_max));
    for (std::uint32_t p = 0; p < count; ++p) {
        const Fx x = draw_fx(rng, params.position_min, params.position_max);
        const Fx y = draw_fx(rng, params.position_min, params.position_max);
        const Fx z = draw_fx(rng, params.z_min, params.z_max);
        const Fx size = draw_fx(rng, params.size_min, params.size_max);
        const Fx depth = draw_fx(rng, params.depth_min, params.depth_max);
        const auto pick = static_cast<std::size_t>(rng.between(0, static_cast<std::int64_t>(params.palette.size()) - 1));
        const Mesh prism = make_prism({x, y, z}, size, depth, params.palette[pick]);

        const auto offset = static_cast<std::uint32_t>(doc.mesh.positions.size());
        doc.mesh.positions.insert(doc.mesh.positions.end(), prism.positions.begin(), prism.positions.end());
        doc.mesh.colors.insert(doc.mesh.colors.end(), prism.colors.begin(), prism.colors.end());
        for (const Face& f : prism.faces) {
            doc.mesh.faces.push_back({f[0] + offset, f[1] + offset, f[2] + offset});
        }
    }

    doc.settings.background.mode = BackgroundMode::VerticalGradient;
    doc.settings.background.color_top = draw_color(rng);
    doc.settings.background.color_bottom = draw_color(rng);

    Lighting& light = doc.settings.lighting;
    light.light_position = {Fx::from_raw(rng.between(-6 * Fx::kScale, 6 * Fx::kScale)),
                            Fx::from_raw(rng.between(-6 * Fx::kScale, 6 * Fx::kScale)), Fx::from_int(-6)};
    light.ambient = Fx::from_raw(rng.between(200'000'000, 500'000'000));
    light.diffuse = Fx::from_raw(rng.between(400'000'000, 800'000'000));
    light.specular = Fx::from_raw(rng.between(200'000'000, 800'000'000));
    light.shininess = static_cast<std::uint32_t>(rng.between(8, 64));
    return doc;
}

}  // namespace shackled::genesis
