#include "shackled/shading.hpp"

#include <algorithm>

#include "shackled/kernels.hpp"

namespace shackled {

namespace {

std::optional<Vec3Fx> direction(const Vec3Fx& from, const Vec3Fx& to) {
    try {
        return vec_normalize(vec_sub(to, from));
    } catch (const ZeroVector&) {
        return std::nullopt;
    }
}

std::uint8_t saturate(Fx v) {
    return static_cast<std::uint8_t>(std::clamp<std::int64_t>(fx_round(fx_clamp(v, kFxZero, Fx::from_int(255))), 0, 255));
}

std::span<std::uint8_t> bytes(std::vector<ColorRGB>& px) {
    return {reinterpret_cast<std::uint8_t*>(px.data()), px.size() * 3};
}

std::span<const std::uint8_t> bytes(const std::vector<ColorRGB>& px) {
    return {reinterpret_cast<const std::uint8_t*>(px.data()), px.size() * 3};
}

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xFF));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) {
        out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xFF));
    }
}

}  // namespace

ColorRGB blinn_phong(const Fragment& frag, const Vec3Fx& world_pos, const Lighting& lighting, const Camera& cam) {
    const Vec3Fx& n = frag.normal;
    const auto to_light = direction(world_pos, lighting.light_position);
    const auto to_eye = direction(world_pos, cam.position());

    Fx diffuse = kFxZero;
    Fx specular = kFxZero;
    if (to_light) {
        diffuse = fx_mul(lighting.diffuse, std::max(vec_dot(n, *to_light), kFxZero));
        if (to_eye) {
            try {
                const Vec3Fx half = vec_normalize(vec_add(*to_light, *to_eye));
                const Fx facing = std::max(vec_dot(n, half), kFxZero);
                specular = fx_mul(lighting.specular, fx_pow(facing, lighting.shininess));
            } catch (const ZeroVector&) {
                // Light and eye exactly opposite: no half vector.
            }
        }
    }

    const auto channel = [&](std::uint8_t c, std::uint8_t light) {
        const Fx base = Fx::from_int(c);
        return saturate(fx_mul(lighting.ambient, base) + fx_mul(diffuse, base) + fx_mul(specular, Fx::from_int(light)));
    };
    return {channel(frag.color.r, lighting.light_color.r), channel(frag.color.g, lighting.light_color.g),
            channel(frag.color.b, lighting.light_color.b)};
}

DepthBuffer::DepthBuffer(std::uint32_t size)
    : size_(size), best_(static_cast<std::size_t>(size) * size), occupied_(static_cast<std::size_t>(size) * size, 0) {}

bool DepthBuffer::offer(const Fragment& frag) {
    const std::size_t i = index(frag.px, frag.py);
    if (occupied_[i] == 0) {
        occupied_[i] = 1;
        best_[i] = frag;
        ++covered_;
        return true;
    }
    const Fragment& cur = best_[i];
    if (frag.depth < cur.depth || (frag.depth == cur.depth && frag.face_index < cur.face_index)) {
        best_[i] = frag;
        return true;
    }
    return false;
}

std::optional<DepthEntry> DepthBuffer::entry(std::uint32_t x, std::uint32_t y) const {
    const std::size_t i = index(x, y);
    if (occupied_[i] == 0) {
        return std::nullopt;
    }
    return DepthEntry{best_[i].depth, best_[i].face_index};
}

const Fragment* DepthBuffer::survivor(std::uint32_t x, std::uint32_t y) const {
    const std::size_t i = index(x, y);
    return occupied_[i] != 0 ? &best_[i] : nullptr;
}

DepthBuffer depth_test(const std::vector<Fragment>& frags, std::uint32_t canvas_size) {
    DepthBuffer buffer(canvas_size);
    for (const Fragment& f : frags) {
        buffer.offer(f);
    }
    return buffer;
}

ImageBuffer make_background(const Background& bg, std::uint32_t canvas_size) {
    ImageBuffer img(canvas_size);
    auto all = bytes(img.pixels);
    const std::size_t stride = static_cast<std::size_t>(canvas_size) * 3;
    for (std::uint32_t row = 0; row < canvas_size; ++row) {
        ColorRGB c = bg.color_top;
        if (bg.mode == BackgroundMode::VerticalGradient && canvas_size > 1) {
            const auto lerp = [&](int top, int bottom) {
                return static_cast<std::uint8_t>(top + (bottom - top) * static_cast<int>(row) / static_cast<int>(canvas_size - 1));
            };
            c = {lerp(bg.color_top.r, bg.color_bottom.r), lerp(bg.color_top.g, bg.color_bottom.g),
                 lerp(bg.color_top.b, bg.color_bottom.b)};
        }
        kernels::fill_rgb(all.subspan(row * stride, stride), c.r, c.g, c.b);
    }
    return img;
}

ShadedLayer shade_survivors(const DepthBuffer& depth, const Lighting& lighting, const Camera& cam) {
    ShadedLayer layer(depth.size());
    for (std::uint32_t y = 0; y < depth.size(); ++y) {
        for (std::uint32_t x = 0; x < depth.size(); ++x) {
            if (const Fragment* f = depth.survivor(x, y)) {
                layer.set(x, y, blinn_phong(*f, f->world, lighting, cam));
            }
        }
    }
    return layer;
}

ImageBuffer composite(const ImageBuffer& background, const ShadedLayer& layer) {
    if (background.size != layer.size) {
        throw SizeMismatch(background.size, layer.size);
    }
    ImageBuffer out = background;
    kernels::blend_rgb(bytes(out.pixels), bytes(layer.colors), layer.covered);
    return out;
}

std::vector<std::uint8_t> encode_bmp(const ImageBuffer& img) {
    const std::uint32_t n = img.size;
    const std::uint32_t row_bytes = n * 3;
    const std::uint32_t stride = (row_bytes + 3) & ~3U;
    const std::uint32_t pixel_bytes = stride * n;

    std::vector<std::uint8_t> out;
    out.reserve(54 + pixel_bytes);
    out.push_back('B');
    out.push_back('M');
    put_u32(out, 54 + pixel_bytes);
    put_u32(out, 0);   // reserved
    put_u32(out, 54);  // pixel data offset
    put_u32(out, 40);  // info header size
    put_u32(out, n);   // width
    put_u32(out, n);   // height, positive: bottom-up
    put_u16(out, 1);   // planes
    put_u16(out, 24);  // bits per pixel
    put_u32(out, 0);   // BI_RGB
    put_u32(out, pixel_bytes);
    put_u32(out, 2835);  // 72 dpi
    put_u32(out, 2835);
    put_u32(out, 0);
    put_u32(out, 0);

    out.resize(54 + static_cast<std::size_t>(pixel_bytes), 0);
    const auto src = bytes(img.pixels);
    for (std::uint32_t r = 0; r < n; ++r) {
        const std::uint32_t image_row = n - 1 - r;
        kernels::rgb_to_bgr(std::span<std::uint8_t>(out).subspan(54 + static_cast<std::size_t>(r) * stride, row_bytes),
                            src.subspan(static_cast<std::size_t>(image_row) * row_bytes, row_bytes));
    }
    return out;
}

}  // namespace shackled
