#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "shackled/presets.hpp"
#include "shackled/scene.hpp"

using namespace shackled;

namespace {

bool has_violation(const std::vector<Violation>& vs, const std::string& message) {
    for (const Violation& v : vs) {
        if (v.message.find(message) != std::string::npos) {
            return true;
        }
    }
    return false;
}

}  // namespace

TEST_CASE("parse_obj minimal mesh") {
    const Mesh m = parse_obj("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 3");
    CHECK(m.positions.size() == 3);
    CHECK(m.faces.size() == 1);
    CHECK(m.faces[0] == Face{0, 1, 2});
    CHECK(m.positions[1] == Vec3Fx{kFxOne, kFxZero, kFxZero});
    CHECK(m.colors == std::vector<ColorRGB>(3, kDefaultVertexColor));
}

TEST_CASE("parse_obj vertex colours, comments and ignored lines") {
    const Mesh m = parse_obj("# header\nv 0 0 0 1 0 0\nv 1 0 0 0 0.5 1 # trailing\nvn 0 0 1\nvt 0 0\no name\nv 0 1 0\n"
                             "f 1/1/1 2//1 -1\n");
    REQUIRE(m.positions.size() == 3);
    CHECK(m.colors[0] == ColorRGB{255, 0, 0});
    // round(0.5 * 255) = 127.5 -> 128, half away from zero
    CHECK(m.colors[1] == ColorRGB{0, 128, 255});
    CHECK(m.colors[2] == kDefaultVertexColor);
    CHECK(m.faces[0] == Face{0, 1, 2});
}

TEST_CASE("parse_obj errors") {
    CHECK_THROWS_AS(parse_obj("v 0 0 0\nv 1 0 0\nv 0 1 0\nv 1 1 0\nf 1 2 3 4"), NonTriangularFace);
    CHECK_THROWS_AS(parse_obj("v 0 0 0\nf 1 2"), NonTriangularFace);
    try {
        parse_obj("v 0 0 0\nv 1 x 0\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(parse_obj("v 0 0\n"), ParseError);
    CHECK_THROWS_AS(parse_obj("v 0 0 0 2 0 0\n"), ParseError);
    CHECK_THROWS_AS(parse_obj("v 0 0 0\nf 0 1 1\n"), ParseError);
}

TEST_CASE("OBJ write then parse is the identity") {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 50; ++i) {
        const SceneDocument d = oracle::random_scene(rng, 16, 6);
        CHECK(parse_obj(write_obj(d.mesh)) == d.mesh);
    }
    const Mesh cube = presets::cube(Fx::from_raw(123'456'789));
    CHECK(parse_obj(write_obj(cube)) == cube);
}

TEST_CASE("validate examples") {
    SceneDocument cube;
    cube.mesh = presets::cube(kFxOne);
    CHECK(validate(cube).empty());

    SceneDocument bad_index = cube;
    bad_index.mesh.faces[3][1] = static_cast<std::uint32_t>(bad_index.mesh.positions.size());
    const auto v1 = validate(bad_index);
    REQUIRE(v1.size() == 1);
    CHECK(v1[0].message == "face index out of range");
    CHECK(v1[0].field == "mesh.faces[3]");

    SceneDocument zero_scale = cube;
    zero_scale.settings.transform.scale = {kFxZero, kFxOne, kFxOne};
    CHECK(has_violation(validate(zero_scale), "zero scale component"));

    SceneDocument many = cube;
    many.mesh.colors.pop_back();
    many.settings.canvas_size = 0;
    many.settings.camera.focal_length = kFxZero;
    many.settings.lighting.ambient = Fx::from_raw(1'000'000'001);
    many.settings.lighting.shininess = 0;
    const auto all = validate(many);
    CHECK(all.size() == 5);
    CHECK(has_violation(all, "colour list length mismatch"));

    SceneDocument huge = cube;
    huge.settings.canvas_size = kMaxCanvasSize + 1;
    CHECK(validate(huge).size() == 1);

    // Orthographic cameras ignore the focal length.
    SceneDocument ortho = cube;
    ortho.settings.camera.model = CameraModel::Orthographic;
    ortho.settings.camera.focal_length = kFxZero;
    CHECK(validate(ortho).empty());
}

TEST_CASE("JSON round trip of the first render") {
    const SceneDocument doc = presets::first_render();
    const std::string text = scene_to_json(doc);
    CHECK(scene_from_json(text) == doc);
    // Positions are raw integers.
    CHECK(text.find("-1000000000") != std::string::npos);
    CHECK(text.find("\"vertical_gradient\"") != std::string::npos);
}

TEST_CASE("JSON round trip over generated scenes") {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 100; ++i) {
        SceneDocument d = oracle::random_scene(rng, 1 + static_cast<std::uint32_t>(rng() % 64), 8);
        d.settings.lighting.light_position.x = Fx::from_raw(static_cast<std::int64_t>(rng()));
        d.settings.transform.translation.z = Fx::from_raw(-static_cast<std::int64_t>(rng() >> 1));
        d.settings.lighting.shininess = 1 + static_cast<std::uint32_t>(rng() % 100);
        CHECK(scene_from_json(scene_to_json(d)) == d);
    }
}

TEST_CASE("schema errors name the field") {
    const std::string good = scene_to_json(presets::first_render());
    const auto without = [&](const std::string& key) {
        auto j = good;
        const auto at = j.find("\"" + key + "\"");
        REQUIRE(at != std::string::npos);
        j.replace(at, key.size() + 2, "\"x_" + key + "\"");
        return j;
    };
    try {
        scene_from_json(without("faces"));
        FAIL("expected SchemaError");
    } catch (const SchemaError& e) {
        CHECK(e.field() == "faces");
        CHECK(e.path() == "mesh.faces");
    }
    try {
        scene_from_json(without("shininess"));
        FAIL("expected SchemaError");
    } catch (const SchemaError& e) {
        CHECK(e.field() == "shininess");
    }
    CHECK_THROWS_AS(scene_from_json("{not json"), SchemaError);
    CHECK_THROWS_AS(scene_from_json("[]"), SchemaError);

    auto bad_color = good;
    const auto pos = bad_color.find("255");
    bad_color.replace(pos, 3, "256");
    try {
        scene_from_json(bad_color);
        FAIL("expected SchemaError");
    } catch (const SchemaError& e) {
        CHECK(e.field() == "colors");
    }

    auto bad_model = good;
    bad_model.replace(bad_model.find("\"perspective\""), 13, "\"fisheye\"");
    CHECK_THROWS_AS(scene_from_json(bad_model), SchemaError);
}

TEST_CASE("enum names") {
    CHECK(to_string(CameraModel::Perspective) == "perspective");
    CHECK(to_string(CameraModel::Orthographic) == "orthographic");
    CHECK(to_string(BackgroundMode::Unicolor) == "unicolor");
    CHECK(to_string(BackgroundMode::VerticalGradient) == "vertical_gradient");
}
