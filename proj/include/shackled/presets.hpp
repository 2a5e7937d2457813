#pragma once

// Ready-made scenes used by the CLI defaults, the benchmarks and the tests.

#include "shackled/scene.hpp"

namespace shackled::presets {

/// Two triangles, (-1,0,0) (-1,2,0) (0,2,0) and (1,0,5) (1,-2,5) (0,-2,5),
/// vertex-coloured red/green/blue, default camera and settings.
SceneDocument first_render();

/// Closed axis-aligned cube of the given half size centred on the origin.
/// 8 vertices, 12 outward-wound faces; the two -z faces come first so they
/// win depth ties along shared edges.
Mesh cube(Fx half_size);

/// The cube scene the canvas sweep is run on: half size 0.5, camera at
/// z = -5 with focal length 4.5, so the front face covers the middle half
/// of the canvas under either camera model.
SceneDocument cube_scene();

}  // namespace shackled::presets
