#pragma once

// Gas-equivalent cost accounting for renders.
//
// The pipeline charges a fixed unit cost at each accounting point before
// doing the work it pays for. A budgeted render aborts with OutOfGas the
// moment the running total would exceed the budget, so the abort point is a
// pure function of the document and the cost table.

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "shackled/scene.hpp"
#include "shackled/shading.hpp"

namespace shackled {

enum class Stage : std::size_t {
    Base,
    Vertex,
    Triangle,
    EdgePixel,
    FragmentRaster,
    FragmentShade,
    PixelComposite,
};
inline constexpr std::size_t kStageCount = 7;

std::string_view to_string(Stage s);

struct CostTable {
    std::uint64_t base = 21000;
    std::uint64_t per_vertex = 600;
    std::uint64_t per_triangle = 900;
    std::uint64_t per_edge_pixel = 50;
    std::uint64_t per_fragment_raster = 2000;
    std::uint64_t per_fragment_shade = 4000;
    std::uint64_t per_pixel_composite = 3000;

    std::uint64_t unit(Stage s) const;
    bool operator==(const CostTable&) const = default;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Flat `key = value` lines; `#` starts a comment. Keys are the CostTable
/// field names. Unknown keys and malformed values are errors; keys not
/// mentioned keep their defaults.
CostTable parse_cost_table(std::string_view text);
CostTable load_cost_table(const std::string& path);

struct GasReceipt {
    std::uint64_t total = 0;
    std::array<std::uint64_t, kStageCount> counts{};
    CostTable costs;
    std::optional<std::uint64_t> budget_used;

    std::uint64_t count(Stage s) const { return counts[static_cast<std::size_t>(s)]; }
    std::uint64_t subtotal(Stage s) const { return count(s) * costs.unit(s); }
    bool operator==(const GasReceipt&) const = default;
};

struct Budget {
    std::uint64_t limit = 1;
};

class OutOfGas : public std::runtime_error {
public:
    OutOfGas(GasReceipt paid, std::uint64_t limit, Stage stage);
    /// Charges that completed before the budget ran out.
    const GasReceipt& receipt() const { return receipt_; }
    std::uint64_t limit() const { return limit_; }
    Stage stage() const { return stage_; }

private:
    GasReceipt receipt_;
    std::uint64_t limit_;
    Stage stage_;
};

/// Running counter threaded through the pipeline.
class Meter {
public:
    explicit Meter(const CostTable& costs, std::optional<Budget> budget = std::nullopt);

    /// Pays for `count` units of `stage`; throws OutOfGas if that would pass
    /// the budget, leaving the receipt unchanged.
    void charge(Stage stage, std::uint64_t count = 1);
    const GasReceipt& receipt() const { return receipt_; }

private:
    GasReceipt receipt_;
    std::optional<Budget> budget_;
};

struct MeteredRender {
    ImageBuffer image;
    GasReceipt receipt;
};

/// Full pipeline under the meter. With no budget it never aborts.
MeteredRender metered_render(const SceneDocument& doc, const CostTable& costs, std::optional<Budget> budget = std::nullopt);

/// Smallest budget under which metered_render succeeds: doubling from the
/// base cost to bracket it, then bisection on (last failing, first passing].
std::uint64_t estimate_gas(const SceneDocument& doc, const CostTable& costs);

// ---- sweeps -----------------------------------------------------------------

enum class SweepKind { Canvas, Triangles, Culling };

struct BenchRow {
    std::string parameter;
    std::string camera;
    std::uint64_t gas = 0;

    bool operator==(const BenchRow&) const = default;
};

inline constexpr std::array<std::uint32_t, 5> kCanvasSweepSizes = {8, 16, 32, 64, 128};
inline constexpr std::uint32_t kTriangleSweepMax = 16;

/// Canvas: sizes 8..128 under both camera models (10 rows).
/// Triangles: 1..16 disjoint copies of the document's first face laid out
/// on a 4x4 screen grid (16 rows).
/// Culling: the document with culling on, then off (2 rows).
std::vector<BenchRow> bench_sweep(SweepKind kind, const SceneDocument& base_doc, const CostTable& costs);

/// Scene holding k copies of base_doc's first face (or a default triangle
/// if it has none), one per cell of a 4x4 grid over the canvas.
SceneDocument triangle_grid_scene(const SceneDocument& base_doc, std::uint32_t k);

/// `parameter,camera,gas` header plus one line per row.
std::string to_csv(const std::vector<BenchRow>& rows);

struct LinearFit {
    double slope = 0;
    double intercept = 0;
    double r2 = 0;
};

/// Ordinary least squares y = slope * x + intercept.
LinearFit fit_linear(const std::vector<double>& xs, const std::vector<double>& ys);
/// Least squares on (log x, log y).
LinearFit fit_loglog(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace shackled
