// Compiled with -mavx2; only reached after a runtime CPU check.

#include <immintrin.h>

#include <array>

#include "shackled/kernels.hpp"

namespace shackled::kernels::avx2 {

namespace {

// Shuffle controls that expand 32 per-pixel mask bytes into 96 per-channel
// bytes. _mm256_shuffle_epi8 works within 128-bit lanes, so each output
// register names its source lane explicitly (see blend_rgb).
struct MaskExpand {
    alignas(32) std::array<std::uint8_t, 32> c0{};
    alignas(32) std::array<std::uint8_t, 32> c1{};
    alignas(32) std::array<std::uint8_t, 32> c2{};
};

constexpr MaskExpand make_mask_expand() {
    MaskExpand m;
    for (int j = 0; j < 32; ++j) {
        m.c0[j] = static_cast<std::uint8_t>(j / 3);  // both lanes read the low half
        const int k = 32 + j;
        m.c1[j] = static_cast<std::uint8_t>(j < 16 ? k / 3 : k / 3 - 16);
        m.c2[j] = static_cast<std::uint8_t>((64 + j) / 3 - 16);  // both lanes read the high half
    }
    return m;
}

constexpr MaskExpand kExpand = make_mask_expand();

// Swap R and B in five packed pixels per lane; byte 15 is carried along.
alignas(32) constexpr std::array<std::uint8_t, 32> kSwapRB = {
    2, 1, 0, 5, 4, 3, 8, 7, 6, 11, 10, 9, 14, 13, 12, 15,
    2, 1, 0, 5, 4, 3, 8, 7, 6, 11, 10, 9, 14, 13, 12, 15,
};

__m256i load(const std::uint8_t* p) { return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p)); }
void store(std::uint8_t* p, __m256i v) { _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v); }

}  // namespace

void fill_rgb(std::span<std::uint8_t> dst, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    alignas(32) std::uint8_t pattern[96];
    for (int i = 0; i < 96; i += 3) {
        pattern[i] = r;
        pattern[i + 1] = g;
        pattern[i + 2] = b;
    }
    const __m256i v0 = load(pattern);
    const __m256i v1 = load(pattern + 32);
    const __m256i v2 = load(pattern + 64);
    std::size_t i = 0;
    for (; i + 96 <= dst.size(); i += 96) {
        store(dst.data() + i, v0);
        store(dst.data() + i + 32, v1);
        store(dst.data() + i + 64, v2);
    }
    scalar::fill_rgb(dst.subspan(i), r, g, b);
}

void blend_rgb(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src, std::span<const std::uint8_t> mask) {
    const __m256i zero = _mm256_setzero_si256();
    const __m256i c0 = load(kExpand.c0.data());
    const __m256i c1 = load(kExpand.c1.data());
    const __m256i c2 = load(kExpand.c2.data());
    std::size_t p = 0;
    for (; p + 32 <= mask.size(); p += 32) {
        // 0xFF where the pixel keeps its current value.
        const __m256i keep = _mm256_cmpeq_epi8(load(mask.data() + p), zero);
        const __m256i lo = _mm256_broadcastsi128_si256(_mm256_castsi256_si128(keep));
        const __m256i hi = _mm256_broadcastsi128_si256(_mm256_extracti128_si256(keep, 1));
        const __m256i k0 = _mm256_shuffle_epi8(lo, c0);
        const __m256i k1 = _mm256_shuffle_epi8(keep, c1);
        const __m256i k2 = _mm256_shuffle_epi8(hi, c2);

        std::uint8_t* d = dst.data() + 3 * p;
        const std::uint8_t* s = src.data() + 3 * p;
        store(d, _mm256_blendv_epi8(load(s), load(d), k0));
        store(d + 32, _mm256_blendv_epi8(load(s + 32), load(d + 32), k1));
        store(d + 64, _mm256_blendv_epi8(load(s + 64), load(d + 64), k2));
    }
    scalar::blend_rgb(dst.subspan(3 * p), src.subspan(3 * p), mask.subspan(p));
}

void rgb_to_bgr(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src) {
    const __m256i control = load(kSwapRB.data());
    std::size_t i = 0;
    // Each step reads 31 bytes and converts 30 (ten pixels). The two lane
    // stores overlap by one byte; the later store wins, and the stray byte
    // past the converted range is rewritten by the next step or the tail.
    for (; i + 32 <= src.size(); i += 30) {
        const __m128i a = _mm_loadu_si128(reinterpret_cast<const __m128i*>(src.data() + i));
        const __m128i b = _mm_loadu_si128(reinterpret_cast<const __m128i*>(src.data() + i + 15));
        const __m256i v = _mm256_shuffle_epi8(_mm256_inserti128_si256(_mm256_castsi128_si256(a), b, 1), control);
        _mm_storeu_si128(reinterpret_cast<__m128i*>(dst.data() + i), _mm256_castsi256_si128(v));
        _mm_storeu_si128(reinterpret_cast<__m128i*>(dst.data() + i + 15), _mm256_extracti128_si256(v, 1));
    }
    scalar::rgb_to_bgr(dst.subspan(i), src.subspan(i));
}

}  // namespace shackled::kernels::avx2
