#pragma once

// Byte-level image kernels used by background generation, compositing and
// bitmap encoding. Each kernel has a scalar reference implementation and,
// on x86-64, an AVX2 variant; the dispatcher picks one at runtime. All
// variants produce identical bytes.

#include <cstdint>
#include <span>
#include <string_view>

namespace shackled::kernels {

enum class Backend { Scalar, Avx2 };

std::string_view to_string(Backend b);

/// Whether the running CPU (and this build) can execute the backend.
bool supported(Backend b);
/// Backend chosen at startup: the widest supported one, unless the
/// SHACKLED_KERNELS environment variable names another ("scalar", "avx2").
Backend active();
/// Overrides the active backend; returns false if it is unsupported.
bool select(Backend b);

/// dst is a packed RGB row; every pixel is set to (r, g, b).
void fill_rgb(std::span<std::uint8_t> dst, std::uint8_t r, std::uint8_t g, std::uint8_t b);
/// dst pixel i becomes src pixel i wherever mask[i] is non-zero.
/// dst and src are packed RGB, mask has one byte per pixel.
void blend_rgb(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src, std::span<const std::uint8_t> mask);
/// Packed RGB to packed BGR. dst and src must not overlap.
void rgb_to_bgr(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src);

namespace scalar {
void fill_rgb(std::span<std::uint8_t> dst, std::uint8_t r, std::uint8_t g, std::uint8_t b);
void blend_rgb(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src, std::span<const std::uint8_t> mask);
void rgb_to_bgr(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src);
}  // namespace scalar

#if defined(SHACKLED_HAVE_AVX2)
namespace avx2 {
void fill_rgb(std::span<std::uint8_t> dst, std::uint8_t r, std::uint8_t g, std::uint8_t b);
void blend_rgb(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src, std::span<const std::uint8_t> mask);
void rgb_to_bgr(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src);
}  // namespace avx2
#endif

}  // namespace shackled::kernels
