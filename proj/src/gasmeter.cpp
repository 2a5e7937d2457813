#include "shackled/gasmeter.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "shackled/pipeline.hpp"

namespace shackled {

namespace {

struct CostField {
    std::string_view name;
    std::uint64_t CostTable::*member;
};

constexpr CostField kCostFields[] = {
    {"base", &CostTable::base},
    {"per_vertex", &CostTable::per_vertex},
    {"per_triangle", &CostTable::per_triangle},
    {"per_edge_pixel", &CostTable::per_edge_pixel},
    {"per_fragment_raster", &CostTable::per_fragment_raster},
    {"per_fragment_shade", &CostTable::per_fragment_shade},
    {"per_pixel_composite", &CostTable::per_pixel_composite},
};

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::string_view to_string(Stage s) {
    switch (s) {
        case Stage::Base: return "base";
        case Stage::Vertex: return "vertex";
        case Stage::Triangle: return "triangle";
        case Stage::EdgePixel: return "edge_pixel";
        case Stage::FragmentRaster: return "fragment_raster";
        case Stage::FragmentShade: return "fragment_shade";
        case Stage::PixelComposite: return "pixel_composite";
    }
    return "unknown";
}

std::uint64_t CostTable::unit(Stage s) const {
    switch (s) {
        case Stage::Base: return base;
        case Stage::Vertex: return per_vertex;
        case Stage::Triangle: return per_triangle;
        case Stage::EdgePixel: return per_edge_pixel;
        case Stage::FragmentRaster: return per_fragment_raster;
        case Stage::FragmentShade: return per_fragment_shade;
        case Stage::PixelComposite: return per_pixel_composite;
    }
    return 0;
}

CostTable parse_cost_table(std::string_view text) {
    CostTable table;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("cost table line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string_view key = trim(line.substr(0, eq));
        const std::string_view value = trim(line.substr(eq + 1));
        std::uint64_t parsed = 0;
        const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), parsed);
        if (ec != std::errc{} || ptr != value.data() + value.size()) {
            throw ConfigError("cost table line " + std::to_string(line_no) + ": '" + std::string(value) +
                              "' is not a non-negative integer");
        }
        bool known = false;
        for (const CostField& f : kCostFields) {
            if (f.name == key) {
                table.*(f.member) = parsed;
                known = true;
            }
        }
        if (!known) {
            throw ConfigError("cost table line " + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'");
        }
    }
    if (table.base == 0) {
        throw ConfigError("cost table: base must be positive");
    }
    return table;
}

CostTable load_cost_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read cost table " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_cost_table(ss.str());
}

OutOfGas::OutOfGas(GasReceipt paid, std::uint64_t limit, Stage stage)
    : std::runtime_error("out of gas: budget " + std::to_string(limit) + " exhausted at stage " +
                         std::string(to_string(stage)) + " after " + std::to_string(paid.total)),
      receipt_(std::move(paid)),
      limit_(limit),
      stage_(stage) {}

Meter::Meter(const CostTable& costs, std::optional<Budget> budget) : budget_(budget) {
    receipt_.costs = costs;
    if (budget_) {
        receipt_.budget_used = 0;
    }
}

void Meter::charge(Stage stage, std::uint64_t count) {
    std::uint64_t cost = 0;
    std::uint64_t next = 0;
    const bool overflow = __builtin_mul_overflow(count, receipt_.costs.unit(stage), &cost) ||
                          __builtin_add_overflow(receipt_.total, cost, &next);
    if (budget_ && (overflow || next > budget_->limit)) {
        throw OutOfGas(receipt_, budget_->limit, stage);
    }
    if (overflow) {
        throw std::overflow_error("gas counter overflow");
    }
    receipt_.total = next;
    receipt_.counts[static_cast<std::size_t>(stage)] += count;
    if (budget_) {
        receipt_.budget_used = next;
    }
}

MeteredRender metered_render(const SceneDocument& doc, const CostTable& costs, std::optional<Budget> budget) {
    Meter meter(costs, budget);
    ImageBuffer image = render_pipeline(doc, &meter);
    return {std::move(image), meter.receipt()};
}

std::uint64_t estimate_gas(const SceneDocument& doc, const CostTable& costs) {
    const auto fits = [&](std::uint64_t limit) {
        try {
            metered_render(doc, costs, Budget{limit});
            return true;
        } catch (const OutOfGas&) {
            return false;
        }
    };
    std::uint64_t failing = 0;  // 0 never fits: every render pays the base
    std::uint64_t passing = std::max<std::uint64_t>(costs.base, 1);
    while (!fits(passing)) {
        failing = passing;
        if (__builtin_mul_overflow(passing, 2, &passing)) {
            throw std::overflow_error("gas estimate exceeds 64 bits");
        }
    }
    while (passing - failing > 1) {
        const std::uint64_t mid = failing + (passing - failing) / 2;
        if (fits(mid)) {
            passing = mid;
        } else {
            failing = mid;
        }
    }
    return passing;
}

}  // namespace shackled
