#include "shackled/pipeline.hpp"

#include <algorithm>

#include "shackled/raster.hpp"
#include "shackled/vertexpipe.hpp"

namespace shackled {

ImageBuffer render_pipeline(const SceneDocument& doc, Meter* meter) {
    const auto charge = [meter](Stage stage, std::uint64_t count) {
        if (meter != nullptr) {
            meter->charge(stage, count);
        }
    };
    const RenderSettings& settings = doc.settings;
    const std::uint32_t n = settings.canvas_size;
    const auto last = static_cast<std::int64_t>(n) - 1;

    charge(Stage::Base, 1);

    charge(Stage::Vertex, doc.mesh.positions.size());
    const std::vector<Vec3Fx> world = world_positions(doc.mesh, settings.transform);
    std::vector<ProjectedVertex> projected;
    projected.reserve(world.size());
    for (std::size_t i = 0; i < world.size(); ++i) {
        ProjectedVertex v = project(world[i], settings.camera, n);
        v.color = doc.mesh.colors[i];
        projected.push_back(v);
    }

    charge(Stage::Triangle, doc.mesh.faces.size());
    std::vector<ScreenTriangle> triangles = assemble(projected, doc.mesh, world);
    if (settings.backface_culling) {
        triangles = backface_cull(triangles, settings.camera);
    }

    DepthBuffer depth(n);
    for (const ScreenTriangle& tri : triangles) {
        charge(Stage::EdgePixel, edge_pixel_count(tri));
        const RasterPlan plan = plan_raster(tri, settings.wireframe_only);
        const FragmentInterpolator interp(tri);
        if (plan.filled) {
            for (const RowSpan& span : plan.spans) {
                charge(Stage::FragmentRaster, span.length());
                if (span.y < 0 || span.y > last) {
                    continue;
                }
                const std::int64_t x0 = std::max<std::int64_t>(span.x_min, 0);
                const std::int64_t x1 = std::min<std::int64_t>(span.x_max, last);
                for (std::int64_t x = x0; x <= x1; ++x) {
                    depth.offer(interp.at(x, span.y));
                }
            }
        } else {
            charge(Stage::FragmentRaster, plan.pixels.size());
            for (const Pixel& p : plan.pixels) {
                if (p.x >= 0 && p.x <= last && p.y >= 0 && p.y <= last) {
                    depth.offer(interp.at(p.x, p.y));
                }
            }
        }
    }

    charge(Stage::FragmentShade, depth.covered_count());
    const ShadedLayer layer = shade_survivors(depth, settings.lighting, settings.camera);

    charge(Stage::PixelComposite, static_cast<std::uint64_t>(n) * n);
    return composite(make_background(settings.background, n), layer);
}

std::vector<std::uint8_t> render_bmp(const SceneDocument& doc) { return encode_bmp(render(doc)); }

}  // namespace shackled
