#include <cmath>
#include <sstream>

#include "shackled/gasmeter.hpp"
#include "shackled/pipeline.hpp"
#include "shackled/vertexpipe.hpp"

namespace shackled {

namespace {

constexpr std::uint32_t kGridSide = 4;

struct Template {
    std::array<Vec3Fx, 3> world;
    std::array<ColorRGB, 3> colors;
};

// View-space z of a world point; 1 for orthographic cameras so the
// screen-to-world scale below reduces to the NDC step.
Fx view_scale(const Camera& cam, Fx world_z) {
    if (cam.model == CameraModel::Orthographic) {
        return kFxOne;
    }
    return fx_div(world_z - cam.position_z, cam.focal_length);
}

Template default_template(const SceneDocument& doc) {
    // NDC half-extent of the triangle inside its grid cell.
    const Fx ndc = Fx::from_raw(150'000'000);
    const Fx s = fx_mul(ndc, view_scale(doc.settings.camera, kFxZero));
    const Fx third = fx_div(s, Fx::from_int(3));
    const Vec3Fx a{-s, -third, kFxZero};
    const Vec3Fx b{kFxZero, third + third, kFxZero};
    const Vec3Fx c{s, -third, kFxZero};
    return {{a, b, c}, {kDefaultVertexColor, kDefaultVertexColor, kDefaultVertexColor}};
}

Template pick_template(const SceneDocument& doc) {
    if (doc.mesh.faces.empty()) {
        return default_template(doc);
    }
    const Face& f = doc.mesh.faces.front();
    Template t;
    for (std::size_t i = 0; i < 3; ++i) {
        const std::uint32_t v = f[i];
        t.world[i] = apply_model_view(doc.mesh.positions.at(v), doc.settings.transform);
        t.colors[i] = v < doc.mesh.colors.size() ? doc.mesh.colors[v] : kDefaultVertexColor;
    }
    return t;
}

}  // namespace

SceneDocument triangle_grid_scene(const SceneDocument& base_doc, std::uint32_t k) {
    const RenderSettings& s = base_doc.settings;
    const std::uint32_t n = s.canvas_size;
    Template tpl = pick_template(base_doc);

    Fx cx_px = kFxZero;
    Fx cy_px = kFxZero;
    for (const Vec3Fx& w : tpl.world) {
        const ProjectedVertex p = project(w, s.camera, n);
        if (!p.valid) {
            tpl = default_template(base_doc);
            break;
        }
    }
    for (const Vec3Fx& w : tpl.world) {
        const ProjectedVertex p = project(w, s.camera, n);
        cx_px += p.sx;
        cy_px += p.sy;
    }
    cx_px = fx_div(cx_px, Fx::from_int(3));
    cy_px = fx_div(cy_px, Fx::from_int(3));
    const Fx centroid_z = fx_div(tpl.world[0].z + tpl.world[1].z + tpl.world[2].z, Fx::from_int(3));
    // World units per pixel at the template's depth.
    const Fx per_px = fx_mul(fx_div(Fx::from_int(2), Fx::from_int(n)), view_scale(s.camera, centroid_z));

    SceneDocument doc;
    doc.settings = s;
    doc.settings.transform = Transform{};
    const std::uint32_t count = std::min(k, kGridSide * kGridSide);
    for (std::uint32_t i = 0; i < count; ++i) {
        const std::int64_t col = i % kGridSide;
        const std::int64_t row = i / kGridSide;
        // Whole-pixel offsets keep the copies congruent after rounding.
        const std::int64_t target_x = (2 * col + 1) * n / (2 * kGridSide);
        const std::int64_t target_y = (2 * row + 1) * n / (2 * kGridSide);
        const std::int64_t dx = target_x - fx_round(cx_px);
        const std::int64_t dy = target_y - fx_round(cy_px);
        const Vec3Fx offset{fx_mul(Fx::from_int(dx), per_px), -fx_mul(Fx::from_int(dy), per_px), kFxZero};
        const auto base = static_cast<std::uint32_t>(doc.mesh.positions.size());
        for (std::size_t v = 0; v < 3; ++v) {
            doc.mesh.positions.push_back(vec_add(tpl.world[v], offset));
            doc.mesh.colors.push_back(tpl.colors[v]);
        }
        doc.mesh.faces.push_back({base, base + 1, base + 2});
    }
    return doc;
}

std::vector<BenchRow> bench_sweep(SweepKind kind, const SceneDocument& base_doc, const CostTable& costs) {
    std::vector<BenchRow> rows;
    const auto total = [&](const SceneDocument& d) { return metered_render(d, costs).receipt.total; };
    switch (kind) {
        case SweepKind::Canvas:
            for (const CameraModel model : {CameraModel::Perspective, CameraModel::Orthographic}) {
                for (const std::uint32_t size : kCanvasSweepSizes) {
                    SceneDocument d = base_doc;
                    d.settings.canvas_size = size;
                    d.settings.camera.model = model;
                    rows.push_back({std::to_string(size), std::string(to_string(model)), total(d)});
                }
            }
            break;
        case SweepKind::Triangles:
            for (std::uint32_t k = 1; k <= kTriangleSweepMax; ++k) {
                rows.push_back({std::to_string(k), std::string(to_string(base_doc.settings.camera.model)),
                                total(triangle_grid_scene(base_doc, k))});
            }
            break;
        case SweepKind::Culling:
            for (const bool cull : {true, false}) {
                SceneDocument d = base_doc;
                d.settings.backface_culling = cull;
                rows.push_back({cull ? "culling_on" : "culling_off", std::string(to_string(d.settings.camera.model)),
                                total(d)});
            }
            break;
    }
    return rows;
}

std::string to_csv(const std::vector<BenchRow>& rows) {
    std::ostringstream out;
    out << "parameter,camera,gas\n";
    for (const BenchRow& r : rows) {
        out << r.parameter << ',' << r.camera << ',' << r.gas << '\n';
    }
    return out.str();
}

LinearFit fit_linear(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2) {
        throw std::invalid_argument("fit_linear needs two or more paired samples");
    }
    const auto n = static_cast<double>(xs.size());
    double mx = 0;
    double my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0;
    double sxy = 0;
    double syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0) {
        throw std::invalid_argument("fit_linear needs distinct x values");
    }
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r2 = syy == 0 ? 1.0 : (sxy * sxy) / (sxx * syy);
    return fit;
}

LinearFit fit_loglog(const std::vector<double>& xs, const std::vector<double>& ys) {
    std::vector<double> lx;
    std::vector<double> ly;
    for (std::size_t i = 0; i < xs.size() && i < ys.size(); ++i) {
        if (xs[i] <= 0 || ys[i] <= 0) {
            throw std::invalid_argument("fit_loglog needs positive samples");
        }
        lx.push_back(std::log(xs[i]));
        ly.push_back(std::log(ys[i]));
    }
    return fit_linear(lx, ly);
}

}  // namespace shackled
