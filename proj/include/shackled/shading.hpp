#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "shackled/raster.hpp"
#include "shackled/scene.hpp"

namespace shackled {

class SizeMismatch : public std::runtime_error {
public:
    SizeMismatch(std::uint32_t a, std::uint32_t b)
        : std::runtime_error("image size mismatch: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

/// Square RGB image, row-major, row 0 at the top.
struct ImageBuffer {
    std::uint32_t size = 0;
    std::vector<ColorRGB> pixels;

    ImageBuffer() = default;
    explicit ImageBuffer(std::uint32_t n) : size(n), pixels(static_cast<std::size_t>(n) * n) {}

    ColorRGB& at(std::uint32_t x, std::uint32_t y) { return pixels[static_cast<std::size_t>(y) * size + x]; }
    const ColorRGB& at(std::uint32_t x, std::uint32_t y) const { return pixels[static_cast<std::size_t>(y) * size + x]; }

    bool operator==(const ImageBuffer&) const = default;
};

/// Ambient + diffuse + half-vector specular for one fragment, lit at
/// world_pos. Channels saturate to [0, 255]. A light or camera sitting
/// exactly on the fragment drops the terms that need its direction.
ColorRGB blinn_phong(const Fragment& frag, const Vec3Fx& world_pos, const Lighting& lighting, const Camera& cam);

struct DepthEntry {
    Fx depth;
    std::uint32_t face_index = 0;

    bool operator==(const DepthEntry&) const = default;
};

/// Nearest fragment per pixel. Smaller depth wins; equal depths go to the
/// lower face index, so the result does not depend on arrival order.
class DepthBuffer {
public:
    explicit DepthBuffer(std::uint32_t size);

    std::uint32_t size() const { return size_; }
    /// Keeps frag if it beats the current occupant. frag must be on-canvas.
    bool offer(const Fragment& frag);

    std::optional<DepthEntry> entry(std::uint32_t x, std::uint32_t y) const;
    const Fragment* survivor(std::uint32_t x, std::uint32_t y) const;
    std::uint64_t covered_count() const { return covered_; }

private:
    std::size_t index(std::int64_t x, std::int64_t y) const { return static_cast<std::size_t>(y) * size_ + static_cast<std::size_t>(x); }

    std::uint32_t size_;
    std::vector<Fragment> best_;
    std::vector<std::uint8_t> occupied_;
    std::uint64_t covered_ = 0;
};

DepthBuffer depth_test(const std::vector<Fragment>& frags, std::uint32_t canvas_size);

ImageBuffer make_background(const Background& bg, std::uint32_t canvas_size);

/// Shaded colours of the depth-test survivors; covered[i] marks pixels that
/// have one.
struct ShadedLayer {
    std::uint32_t size = 0;
    std::vector<ColorRGB> colors;
    std::vector<std::uint8_t> covered;

    explicit ShadedLayer(std::uint32_t n)
        : size(n), colors(static_cast<std::size_t>(n) * n), covered(static_cast<std::size_t>(n) * n, 0) {}

    void set(std::uint32_t x, std::uint32_t y, ColorRGB c) {
        const std::size_t i = static_cast<std::size_t>(y) * size + x;
        colors[i] = c;
        covered[i] = 1;
    }
};

/// Lights every survivor in the depth buffer.
ShadedLayer shade_survivors(const DepthBuffer& depth, const Lighting& lighting, const Camera& cam);

ImageBuffer composite(const ImageBuffer& background, const ShadedLayer& layer);

/// Uncompressed 24-bit bottom-up Windows bitmap.
std::vector<std::uint8_t> encode_bmp(const ImageBuffer& img);

}  // namespace shackled
