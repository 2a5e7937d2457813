#include <doctest.h>

#include <random>
#include <vector>

#include "shackled/kernels.hpp"
#include "shackled/pipeline.hpp"
#include "shackled/presets.hpp"

using namespace shackled;
namespace k = shackled::kernels;

namespace {

std::vector<std::uint8_t> random_bytes(std::mt19937_64& rng, std::size_t n) {
    std::vector<std::uint8_t> out(n);
    for (std::uint8_t& b : out) {
        b = static_cast<std::uint8_t>(rng());
    }
    return out;
}

// Restores the startup backend when a test case ends.
struct BackendGuard {
    k::Backend saved = k::active();
    ~BackendGuard() { k::select(saved); }
};

}  // namespace

TEST_CASE("backend names and selection") {
    BackendGuard guard;
    CHECK(k::to_string(k::Backend::Scalar) == "scalar");
    CHECK(k::to_string(k::Backend::Avx2) == "avx2");
    CHECK(k::supported(k::Backend::Scalar));
    CHECK(k::select(k::Backend::Scalar));
    CHECK(k::active() == k::Backend::Scalar);
    CHECK(k::select(k::Backend::Avx2) == k::supported(k::Backend::Avx2));
}

#if defined(SHACKLED_HAVE_AVX2)
TEST_CASE("avx2 kernels match the scalar reference byte for byte") {
    if (!k::supported(k::Backend::Avx2)) {
        MESSAGE("CPU lacks AVX2; equivalence not exercised");
        return;
    }
    std::mt19937_64 rng(17);
    // Lengths straddle the vector widths and their tails.
    for (std::size_t pixels : {0u, 1u, 2u, 5u, 10u, 11u, 31u, 32u, 33u, 64u, 100u, 257u, 4096u}) {
        const std::size_t n = pixels * 3;
        std::vector<std::uint8_t> a(n), b(n);
        const auto c = random_bytes(rng, 3);
        k::scalar::fill_rgb(a, c[0], c[1], c[2]);
        k::avx2::fill_rgb(b, c[0], c[1], c[2]);
        CHECK(a == b);

        const auto src = random_bytes(rng, n);
        auto mask = random_bytes(rng, pixels);
        for (std::uint8_t& m : mask) {
            m = (m & 3) == 0 ? 0 : m;
        }
        a = random_bytes(rng, n);
        b = a;
        k::scalar::blend_rgb(a, src, mask);
        k::avx2::blend_rgb(b, src, mask);
        CHECK(a == b);

        std::vector<std::uint8_t> sa(n), sb(n);
        k::scalar::rgb_to_bgr(sa, src);
        k::avx2::rgb_to_bgr(sb, src);
        CHECK(sa == sb);
    }
}

TEST_CASE("renders are identical under both backends") {
    BackendGuard guard;
    for (const SceneDocument& doc : {presets::first_render(), presets::cube_scene()}) {
        REQUIRE(k::select(k::Backend::Scalar));
        const auto scalar = render_bmp(doc);
        if (k::select(k::Backend::Avx2)) {
            CHECK(render_bmp(doc) == scalar);
        }
    }
}
#endif

TEST_CASE("scalar kernels") {
    std::vector<std::uint8_t> px(6);
    k::scalar::fill_rgb(px, 1, 2, 3);
    CHECK(px == std::vector<std::uint8_t>{1, 2, 3, 1, 2, 3});
    const std::vector<std::uint8_t> src{9, 9, 9, 8, 8, 8};
    const std::vector<std::uint8_t> mask{0, 1};
    k::scalar::blend_rgb(px, src, mask);
    CHECK(px == std::vector<std::uint8_t>{1, 2, 3, 8, 8, 8});
    std::vector<std::uint8_t> out(6);
    k::scalar::rgb_to_bgr(out, px);
    CHECK(out == std::vector<std::uint8_t>{3, 2, 1, 8, 8, 8});
}
