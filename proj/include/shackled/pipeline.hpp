#pragma once

#include "shackled/gasmeter.hpp"
#include "shackled/scene.hpp"
#include "shackled/shading.hpp"

namespace shackled {

/// Runs every stage: vertex shader, assembly, optional culling, Bresenham +
/// scanline rasterization, canvas clip, depth test, Blinn-Phong on the
/// survivors, background and compositing. When `meter` is non-null each
/// stage is charged before it runs. The document must already validate.
ImageBuffer render_pipeline(const SceneDocument& doc, Meter* meter);

/// Unmetered render.
inline ImageBuffer render(const SceneDocument& doc) { return render_pipeline(doc, nullptr); }

/// render() followed by encode_bmp().
std::vector<std::uint8_t> render_bmp(const SceneDocument& doc);

}  // namespace shackled
