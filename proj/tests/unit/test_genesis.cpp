#include <doctest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "shackled/genesis.hpp"
#include "shackled/raster.hpp"

using namespace shackled;
using namespace shackled::genesis;

TEST_CASE("splitmix64 reference vector") {
    const auto [v, next] = prng_next(0);
    CHECK(v == 0xE220A8397B1DCDAFull);
    CHECK(next == 0x9E3779B97F4A7C15ull);
    SplitMix64 a(42), b(42);
    for (int i = 0; i < 10; ++i) {
        CHECK(a.next() == b.next());
    }
}

TEST_CASE("distinct seeds give distinct first outputs") {
    std::mt19937_64 rng(99);
    int collisions = 0;
    for (int i = 0; i < 1000; ++i) {
        Seed s1, s2;
        for (std::size_t k = 0; k < 32; ++k) {
            s1.bytes[k] = static_cast<std::uint8_t>(rng());
            s2.bytes[k] = static_cast<std::uint8_t>(rng());
        }
        if (s1 == s2) {
            continue;
        }
        collisions += prng_next(initial_state(s1)).first == prng_next(initial_state(s2)).first ? 1 : 0;
    }
    CHECK(collisions == 0);
}

TEST_CASE("between stays in range") {
    SplitMix64 rng(5);
    for (int i = 0; i < 10000; ++i) {
        const std::int64_t v = rng.between(-3, 7);
        CHECK(v >= -3);
        CHECK(v <= 7);
    }
    CHECK(rng.between(4, 4) == 4);
}

TEST_CASE("seed parsing and indexing") {
    const Seed one = parse_seed_hex("0x1");
    CHECK(one.bytes[31] == 1);
    CHECK(to_hex(one) == std::string(63, '0') + "1");
    CHECK(parse_seed_hex("ABCDEF").bytes[29] == 0xAB);
    CHECK(parse_seed_hex("abc").bytes[30] == 0x0A);
    CHECK(parse_seed_hex("abc").bytes[31] == 0xBC);
    CHECK_THROWS_AS(parse_seed_hex(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_seed_hex("0x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_seed_hex("12g4"), std::invalid_argument);
    CHECK_THROWS_AS(parse_seed_hex(std::string(65, '1')), std::invalid_argument);

    const Seed full = parse_seed_hex(std::string(64, 'f'));
    CHECK(seed_at_index(full, 1) == Seed{});
    CHECK(seed_at_index(parse_seed_hex("ff"), 1) == parse_seed_hex("100"));
    CHECK(seed_at_index(one, 0) == one);
    CHECK(initial_state(parse_seed_hex("0102030405060708")) == 0x0102030405060708ull);
    Seed words;
    words.bytes[0] = 0x50;
    words.bytes[31] = 0x05;
    CHECK(initial_state(words) == (0x5000000000000000ull ^ 0x5ull));
    // Equal low bytes in words 0 and 3 cancel.
    words.bytes[0] = 0;
    words.bytes[7] = 0x05;
    CHECK(initial_state(words) == 0);
}

TEST_CASE("make_prism has 6 vertices, 7 outward faces, and a visible front") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 200; ++i) {
        const Vec3Fx c{oracle::uniform_fx(rng, -3, 3), oracle::uniform_fx(rng, -3, 3), oracle::uniform_fx(rng, 0, 2)};
        const Fx size = oracle::uniform_fx(rng, 0.1, 1.5);
        const Fx depth = oracle::uniform_fx(rng, 0.1, 2);
        const Mesh m = make_prism(c, size, depth, {9, 8, 7});
        REQUIRE(m.positions.size() == 6);
        REQUIRE(m.faces.size() == 7);
        CHECK(m.colors == std::vector<ColorRGB>(6, ColorRGB{9, 8, 7}));

        // Centroid of the (open) solid; every face normal points away from it.
        oracle::Vec centroid{0, 0, 0};
        for (const Vec3Fx& p : m.positions) {
            const oracle::Vec v = oracle::to_vec(p);
            centroid = {centroid.x + v.x / 6, centroid.y + v.y / 6, centroid.z + v.z / 6};
        }
        for (const Face& f : m.faces) {
            const oracle::Vec a = oracle::to_vec(m.positions[f[0]]);
            const oracle::Vec e1 = oracle::sub(oracle::to_vec(m.positions[f[1]]), a);
            const oracle::Vec e2 = oracle::sub(oracle::to_vec(m.positions[f[2]]), a);
            const oracle::Vec n{e1.y * e2.z - e1.z * e2.y, e1.z * e2.x - e1.x * e2.z, e1.x * e2.y - e1.y * e2.x};
            CHECK(oracle::dot(n, oracle::sub(a, centroid)) > 0);
        }

        SceneDocument doc;
        doc.mesh = m;
        doc.settings.camera = genesis_camera();
        std::vector<Vec3Fx> world(m.positions);
        const auto tris = assemble(run_vertex_shader(m, doc.settings), m, world);
        REQUIRE(!tris.empty());
        CHECK(tris[0].face_index == 0);
        const auto kept = backface_cull(tris, doc.settings.camera);
        REQUIRE(!kept.empty());
        CHECK(kept[0].face_index == 0);
    }
}

TEST_CASE("generate_instance is deterministic and valid") {
    const Seed seed = parse_seed_hex("1234");
    const SceneDocument a = generate_instance(seed);
    const SceneDocument b = generate_instance(seed);
    CHECK(scene_to_json(a) == scene_to_json(b));

    for (std::uint64_t i = 0; i < 64; ++i) {
        const SceneDocument d = generate_instance(seed_at_index(seed, i));
        CHECK(validate(d).empty());
        CHECK(d.mesh.faces.size() % 7 == 0);
        const std::size_t prisms = d.mesh.faces.size() / 7;
        CHECK(prisms >= 3);
        CHECK(prisms <= 12);
        CHECK(d.mesh.positions.size() == 6 * prisms);
        CHECK(d.settings.camera == genesis_camera());
        CHECK(d.settings.canvas_size == 128);
    }
}

TEST_CASE("1024 sequential indices give 1024 distinct documents") {
    const Seed seed = parse_seed_hex("c0ffee");
    std::set<std::string> docs;
    for (std::uint64_t i = 0; i < 1024; ++i) {
        docs.insert(scene_to_json(generate_instance(seed_at_index(seed, i))));
    }
    CHECK(docs.size() == 1024);
}

TEST_CASE("params validation") {
    CHECK(validate(GenesisParams{}).empty());
    GenesisParams p;
    p.prism_count_min = 0;
    CHECK_FALSE(validate(p).empty());
    p = {};
    p.prism_count_min = 5;
    p.prism_count_max = 4;
    CHECK_FALSE(validate(p).empty());
    p = {};
    p.palette.clear();
    CHECK_FALSE(validate(p).empty());
    p = {};
    p.size_min = kFxZero;
    CHECK_FALSE(validate(p).empty());
    p = {};
    p.depth_max = Fx::from_raw(-1);
    CHECK_FALSE(validate(p).empty());
    p = {};
    p.position_min = Fx::from_int(3);
    CHECK_FALSE(validate(p).empty());
}
