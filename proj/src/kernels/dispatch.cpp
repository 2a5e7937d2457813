#include <atomic>
#include <cstdlib>
#include <string>

#include "shackled/kernels.hpp"

namespace shackled::kernels {

namespace {

Backend widest() { return supported(Backend::Avx2) ? Backend::Avx2 : Backend::Scalar; }

Backend initial() {
    if (const char* env = std::getenv("SHACKLED_KERNELS")) {
        const std::string want(env);
        if (want == "scalar") {
            return Backend::Scalar;
        }
        if (want == "avx2" && supported(Backend::Avx2)) {
            return Backend::Avx2;
        }
    }
    return widest();
}

std::atomic<Backend>& current() {
    static std::atomic<Backend> b{initial()};
    return b;
}

}  // namespace

std::string_view to_string(Backend b) { return b == Backend::Avx2 ? "avx2" : "scalar"; }

bool supported(Backend b) {
    if (b == Backend::Scalar) {
        return true;
    }
#if defined(SHACKLED_HAVE_AVX2)
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

Backend active() { return current().load(std::memory_order_relaxed); }

bool select(Backend b) {
    if (!supported(b)) {
        return false;
    }
    current().store(b, std::memory_order_relaxed);
    return true;
}

void fill_rgb(std::span<std::uint8_t> dst, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
#if defined(SHACKLED_HAVE_AVX2)
    if (active() == Backend::Avx2) {
        return avx2::fill_rgb(dst, r, g, b);
    }
#endif
    scalar::fill_rgb(dst, r, g, b);
}

void blend_rgb(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src, std::span<const std::uint8_t> mask) {
#if defined(SHACKLED_HAVE_AVX2)
    if (active() == Backend::Avx2) {
        return avx2::blend_rgb(dst, src, mask);
    }
#endif
    scalar::blend_rgb(dst, src, mask);
}

void rgb_to_bgr(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src) {
#if defined(SHACKLED_HAVE_AVX2)
    if (active() == Backend::Avx2) {
        return avx2::rgb_to_bgr(dst, src);
    }
#endif
    scalar::rgb_to_bgr(dst, src);
}

}  // namespace shackled::kernels
