#include "shackled/raster.hpp"

#include <algorithm>
#include <limits>

namespace shackled {

namespace {

__extension__ using i128 = __int128;

template <typename Visit>
void trace_line(Pixel a, Pixel b, Visit&& visit) {
    const bool steep = std::abs(b.y - a.y) > std::abs(b.x - a.x);
    std::int64_t x0 = a.x, y0 = a.y, x1 = b.x, y1 = b.y;
    if (steep) {
        std::swap(x0, y0);
        std::swap(x1, y1);
    }
    if (x0 > x1 || (x0 == x1 && y0 > y1)) {
        std::swap(x0, x1);
        std::swap(y0, y1);
    }
    const std::int64_t dx = x1 - x0;
    const std::int64_t dy = std::abs(y1 - y0);
    const std::int64_t ystep = y0 < y1 ? 1 : -1;
    std::int64_t err = dx / 2;
    std::int64_t y = y0;
    for (std::int64_t x = x0; x <= x1; ++x) {
        if (steep) {
            visit(Pixel{y, x});
        } else {
            visit(Pixel{x, y});
        }
        err -= dy;
        if (err < 0) {
            y += ystep;
            err += dx;
        }
    }
}

bool row_major(const Pixel& a, const Pixel& b) { return a.y != b.y ? a.y < b.y : a.x < b.x; }

std::vector<Pixel> distinct_edge_pixels(const Pixel (&p)[3]) {
    std::vector<Pixel> out;
    for (int e = 0; e < 3; ++e) {
        trace_line(p[e], p[(e + 1) % 3], [&](Pixel px) { out.push_back(px); });
    }
    std::sort(out.begin(), out.end(), row_major);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::int64_t cross2(std::int64_t ax, std::int64_t ay, std::int64_t bx, std::int64_t by) { return ax * by - ay * bx; }

// Exact world-space face normal. The cross product is formed over raw
// integers so small triangles keep a usable direction, then brought back
// into 64-bit range before normalizing.
Vec3Fx face_normal(const Vec3Fx& w0, const Vec3Fx& w1, const Vec3Fx& w2) {
    const i128 e1[3] = {static_cast<i128>(w1.x.raw()) - w0.x.raw(), static_cast<i128>(w1.y.raw()) - w0.y.raw(),
                        static_cast<i128>(w1.z.raw()) - w0.z.raw()};
    const i128 e2[3] = {static_cast<i128>(w2.x.raw()) - w0.x.raw(), static_cast<i128>(w2.y.raw()) - w0.y.raw(),
                        static_cast<i128>(w2.z.raw()) - w0.z.raw()};
    // Edge components beyond 2^62 would overflow the products below.
    constexpr i128 kEdgeLimit = i128{1} << 62;
    for (i128 v : {e1[0], e1[1], e1[2], e2[0], e2[1], e2[2]}) {
        if (v > kEdgeLimit || v < -kEdgeLimit) {
            throw OverflowError("face normal");
        }
    }
    // Each component is a difference of two products bounded by 2^124.
    const auto mul = [](i128 a, i128 b) {
        i128 r = 0;
        if (__builtin_mul_overflow(a, b, &r)) {
            throw OverflowError("face normal");
        }
        return r;
    };
    i128 c[3] = {
        mul(e1[1], e2[2]) - mul(e1[2], e2[1]),
        mul(e1[2], e2[0]) - mul(e1[0], e2[2]),
        mul(e1[0], e2[1]) - mul(e1[1], e2[0]),
    };
    constexpr i128 kLimit = i128{1} << 61;
    const auto too_big = [&] {
        return std::any_of(std::begin(c), std::end(c), [&](i128 v) { return v > kLimit || v < -kLimit; });
    };
    while (too_big()) {
        for (i128& v : c) {
            v /= 2;
        }
    }
    return vec_normalize({Fx::from_raw(static_cast<std::int64_t>(c[0])), Fx::from_raw(static_cast<std::int64_t>(c[1])),
                          Fx::from_raw(static_cast<std::int64_t>(c[2]))});
}

}  // namespace

Pixel pixel_of(const ProjectedVertex& v) { return {fx_round(v.sx), fx_round(v.sy)}; }

std::vector<ScreenTriangle> assemble(const std::vector<ProjectedVertex>& projected, const Mesh& mesh,
                                     const std::vector<Vec3Fx>& world) {
    std::vector<ScreenTriangle> out;
    out.reserve(mesh.faces.size());
    for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
        const Face& face = mesh.faces[f];
        const ProjectedVertex& a = projected.at(face[0]);
        const ProjectedVertex& b = projected.at(face[1]);
        const ProjectedVertex& c = projected.at(face[2]);
        if (!a.valid || !b.valid || !c.valid) {
            continue;
        }
        ScreenTriangle tri;
        tri.v0 = a;
        tri.v1 = b;
        tri.v2 = c;
        tri.w0 = world.at(face[0]);
        tri.w1 = world.at(face[1]);
        tri.w2 = world.at(face[2]);
        tri.face_index = static_cast<std::uint32_t>(f);
        try {
            tri.face_normal = face_normal(tri.w0, tri.w1, tri.w2);
        } catch (const ZeroVector&) {
            tri.face_normal = {kFxZero, kFxZero, -kFxOne};
            tri.degenerate_normal = true;
        }
        out.push_back(tri);
    }
    return out;
}

bool is_front_facing(const ScreenTriangle& tri, const Camera& cam) {
    if (cam.model == CameraModel::Orthographic) {
        return tri.face_normal.z < kFxZero;
    }
    // Only the sign matters, so the centroid direction is left unnormalized
    // and unscaled: (w0 + w1 + w2) - 3 * camera.
    const Vec3Fx sum = vec_add(vec_add(tri.w0, tri.w1), tri.w2);
    const Vec3Fx cam3 = vec_scale(cam.position(), Fx::from_int(3));
    return vec_dot(tri.face_normal, vec_sub(sum, cam3)) < kFxZero;
}

std::vector<ScreenTriangle> backface_cull(const std::vector<ScreenTriangle>& tris, const Camera& cam) {
    std::vector<ScreenTriangle> out;
    out.reserve(tris.size());
    std::copy_if(tris.begin(), tris.end(), std::back_inserter(out),
                 [&](const ScreenTriangle& t) { return is_front_facing(t, cam); });
    return out;
}

std::vector<Pixel> bresenham_line(Pixel a, Pixel b) {
    std::vector<Pixel> out;
    out.reserve(line_pixel_count(a, b));
    trace_line(a, b, [&](Pixel p) { out.push_back(p); });
    return out;
}

std::uint64_t line_pixel_count(Pixel a, Pixel b) {
    return static_cast<std::uint64_t>(std::max(std::abs(b.x - a.x), std::abs(b.y - a.y))) + 1;
}

std::uint64_t edge_pixel_count(const ScreenTriangle& tri) {
    const Pixel p0 = pixel_of(tri.v0), p1 = pixel_of(tri.v1), p2 = pixel_of(tri.v2);
    return line_pixel_count(p0, p1) + line_pixel_count(p1, p2) + line_pixel_count(p2, p0);
}

std::uint64_t RasterPlan::fragment_count() const {
    if (!filled) {
        return pixels.size();
    }
    std::uint64_t n = 0;
    for (const RowSpan& s : spans) {
        n += s.length();
    }
    return n;
}

bool is_screen_degenerate(const ScreenTriangle& tri) {
    const Pixel p0 = pixel_of(tri.v0), p1 = pixel_of(tri.v1), p2 = pixel_of(tri.v2);
    return cross2(p1.x - p0.x, p1.y - p0.y, p2.x - p0.x, p2.y - p0.y) == 0;
}

RasterPlan plan_raster(const ScreenTriangle& tri, bool wireframe_only) {
    const Pixel p[3] = {pixel_of(tri.v0), pixel_of(tri.v1), pixel_of(tri.v2)};
    RasterPlan plan;
    if (wireframe_only || is_screen_degenerate(tri)) {
        plan.pixels = distinct_edge_pixels(p);
        return plan;
    }

    plan.filled = true;
    const std::int64_t y_min = std::min({p[0].y, p[1].y, p[2].y});
    const std::int64_t y_max = std::max({p[0].y, p[1].y, p[2].y});
    plan.spans.resize(static_cast<std::size_t>(y_max - y_min + 1));
    for (std::size_t i = 0; i < plan.spans.size(); ++i) {
        plan.spans[i] = {y_min + static_cast<std::int64_t>(i), std::numeric_limits<std::int64_t>::max(),
                         std::numeric_limits<std::int64_t>::min()};
    }
    for (int e = 0; e < 3; ++e) {
        trace_line(p[e], p[(e + 1) % 3], [&](Pixel px) {
            RowSpan& row = plan.spans[static_cast<std::size_t>(px.y - y_min)];
            row.x_min = std::min(row.x_min, px.x);
            row.x_max = std::max(row.x_max, px.x);
        });
    }
    return plan;
}

FragmentInterpolator::FragmentInterpolator(const ScreenTriangle& tri)
    : tri_(tri), p0_(pixel_of(tri.v0)), p1_(pixel_of(tri.v1)), p2_(pixel_of(tri.v2)) {
    area2_ = cross2(p1_.x - p0_.x, p1_.y - p0_.y, p2_.x - p0_.x, p2_.y - p0_.y);
    if (area2_ == 0) {
        const Pixel p[3] = {p0_, p1_, p2_};
        std::int64_t best = -1;
        for (auto [i, j] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
            const std::int64_t dx = p[j].x - p[i].x, dy = p[j].y - p[i].y;
            const std::int64_t len2 = dx * dx + dy * dy;
            if (len2 > best) {
                best = len2;
                seg_a_ = i;
                seg_b_ = j;
            }
        }
        if (best == 0) {
            // All corners on one pixel: the nearest corner stands for the face.
            const Fx d[3] = {tri.v0.depth, tri.v1.depth, tri.v2.depth};
            seg_a_ = static_cast<int>(std::min_element(std::begin(d), std::end(d)) - std::begin(d));
            seg_b_ = seg_a_;
        }
    }
}

FragmentInterpolator::Weights FragmentInterpolator::weights(std::int64_t x, std::int64_t y) const {
    if (area2_ != 0) {
        const std::int64_t ex1 = p1_.x - p0_.x, ey1 = p1_.y - p0_.y;
        const std::int64_t ex2 = p2_.x - p0_.x, ey2 = p2_.y - p0_.y;
        const std::int64_t rx = x - p0_.x, ry = y - p0_.y;
        std::int64_t n1 = cross2(rx, ry, ex2, ey2);
        std::int64_t n2 = cross2(ex1, ey1, rx, ry);
        std::int64_t d = area2_;
        if (d < 0) {
            n1 = -n1;
            n2 = -n2;
            d = -d;
        }
        n1 = std::max<std::int64_t>(n1, 0);
        n2 = std::max<std::int64_t>(n2, 0);
        if (n1 + n2 > d) {
            const Fx w1 = fx_ratio(n1, n1 + n2);
            return {w1, kFxOne - w1};
        }
        return {fx_ratio(n1, d), fx_ratio(n2, d)};
    }

    Fx w[3] = {kFxZero, kFxZero, kFxZero};
    if (seg_a_ == seg_b_) {
        w[seg_a_] = kFxOne;
    } else {
        const Pixel p[3] = {p0_, p1_, p2_};
        const Pixel a = p[seg_a_], b = p[seg_b_];
        const std::int64_t dx = b.x - a.x, dy = b.y - a.y;
        const std::int64_t len2 = dx * dx + dy * dy;
        const std::int64_t along = std::clamp<std::int64_t>((x - a.x) * dx + (y - a.y) * dy, 0, len2);
        const Fx t = fx_ratio(along, len2);
        w[seg_a_] = kFxOne - t;
        w[seg_b_] = t;
    }
    return {w[1], w[2]};
}

Fragment FragmentInterpolator::at(std::int64_t x, std::int64_t y) const {
    const auto [w1, w2] = weights(x, y);
    const auto blend = [&](Fx a0, Fx a1, Fx a2) { return a0 + fx_mul(w1, a1 - a0) + fx_mul(w2, a2 - a0); };
    const auto channel = [&](std::uint8_t c0, std::uint8_t c1, std::uint8_t c2) {
        const Fx v = blend(Fx::from_int(c0), Fx::from_int(c1), Fx::from_int(c2));
        return static_cast<std::uint8_t>(std::clamp<std::int64_t>(fx_round(v), 0, 255));
    };

    Fragment f;
    f.px = x;
    f.py = y;
    f.depth = blend(tri_.v0.depth, tri_.v1.depth, tri_.v2.depth);
    f.color = {channel(tri_.v0.color.r, tri_.v1.color.r, tri_.v2.color.r),
               channel(tri_.v0.color.g, tri_.v1.color.g, tri_.v2.color.g),
               channel(tri_.v0.color.b, tri_.v1.color.b, tri_.v2.color.b)};
    f.world = {blend(tri_.w0.x, tri_.w1.x, tri_.w2.x), blend(tri_.w0.y, tri_.w1.y, tri_.w2.y),
               blend(tri_.w0.z, tri_.w1.z, tri_.w2.z)};
    f.normal = tri_.face_normal;
    f.face_index = tri_.face_index;
    return f;
}

namespace {

std::vector<Fragment> materialize(const ScreenTriangle& tri, const RasterPlan& plan) {
    const FragmentInterpolator interp(tri);
    std::vector<Fragment> out;
    out.reserve(plan.fragment_count());
    if (plan.filled) {
        for (const RowSpan& s : plan.spans) {
            for (std::int64_t x = s.x_min; x <= s.x_max; ++x) {
                out.push_back(interp.at(x, s.y));
            }
        }
    } else {
        for (const Pixel& p : plan.pixels) {
            out.push_back(interp.at(p.x, p.y));
        }
    }
    return out;
}

}  // namespace

std::vector<Fragment> scanline_fill(const ScreenTriangle& tri) { return materialize(tri, plan_raster(tri, false)); }

std::vector<Fragment> wireframe_fragments(const ScreenTriangle& tri) { return materialize(tri, plan_raster(tri, true)); }

std::vector<Fragment> clip_to_canvas(const std::vector<Fragment>& frags, std::uint32_t canvas_size) {
    const auto n = static_cast<std::int64_t>(canvas_size);
    std::vector<Fragment> out;
    std::copy_if(frags.begin(), frags.end(), std::back_inserter(out),
                 [n](const Fragment& f) { return f.px >= 0 && f.px < n && f.py >= 0 && f.py < n; });
    return out;
}

}  // namespace shackled
