#include "shackled/kernels.hpp"

namespace shackled::kernels::scalar {

void fill_rgb(std::span<std::uint8_t> dst, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    for (std::size_t i = 0; i + 2 < dst.size(); i += 3) {
        dst[i] = r;
        dst[i + 1] = g;
        dst[i + 2] = b;
    }
}

void blend_rgb(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src, std::span<const std::uint8_t> mask) {
    for (std::size_t p = 0; p < mask.size(); ++p) {
        if (mask[p] != 0) {
            dst[3 * p] = src[3 * p];
            dst[3 * p + 1] = src[3 * p + 1];
            dst[3 * p + 2] = src[3 * p + 2];
        }
    }
}

void rgb_to_bgr(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src) {
    for (std::size_t i = 0; i + 2 < src.size(); i += 3) {
        dst[i] = src[i + 2];
        dst[i + 1] = src[i + 1];
        dst[i + 2] = src[i];
    }
}

}  // namespace shackled::kernels::scalar
