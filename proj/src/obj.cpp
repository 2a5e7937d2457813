#include <charconv>
#include <sstream>

#include "shackled/scene.hpp"

namespace shackled {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) {
            ++i;
        }
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') {
            ++i;
        }
        if (i > start) {
            out.push_back(line.substr(start, i - start));
        }
    }
    return out;
}

Fx number(std::string_view token, std::size_t line) {
    try {
        return Fx::parse(token);
    } catch (const std::invalid_argument&) {
        throw ParseError(line, "malformed number '" + std::string(token) + "'");
    } catch (const OverflowError&) {
        throw ParseError(line, "number out of range '" + std::string(token) + "'");
    }
}

std::uint8_t channel(std::string_view token, std::size_t line) {
    const Fx v = number(token, line);
    if (v < kFxZero || v > kFxOne) {
        throw ParseError(line, "vertex colour component outside [0, 1]");
    }
    return static_cast<std::uint8_t>(fx_round(fx_mul(v, Fx::from_int(255))));
}

std::uint32_t face_index(std::string_view token, std::size_t vertex_count, std::size_t line) {
    // "i", "i/t", "i/t/n" and "i//n" all name the position index first.
    const std::string_view head = token.substr(0, token.find('/'));
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(head.data(), head.data() + head.size(), value);
    if (ec != std::errc{} || ptr != head.data() + head.size() || value == 0) {
        throw ParseError(line, "malformed face index '" + std::string(token) + "'");
    }
    const long long zero_based = value > 0 ? value - 1 : static_cast<long long>(vertex_count) + value;
    if (zero_based < 0 || zero_based > 0xFFFFFFFFLL) {
        throw ParseError(line, "face index '" + std::string(token) + "' out of range");
    }
    return static_cast<std::uint32_t>(zero_based);
}

}  // namespace

Mesh parse_obj(std::string_view text) {
    Mesh mesh;
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
        const auto tokens = split_ws(line);
        if (tokens.empty()) {
            continue;
        }
        if (tokens[0] == "v") {
            if (tokens.size() != 4 && tokens.size() != 7) {
                throw ParseError(line_no, "vertex needs 3 coordinates and optionally 3 colour components");
            }
            mesh.positions.push_back(
                {number(tokens[1], line_no), number(tokens[2], line_no), number(tokens[3], line_no)});
            if (tokens.size() == 7) {
                mesh.colors.push_back(
                    {channel(tokens[4], line_no), channel(tokens[5], line_no), channel(tokens[6], line_no)});
            } else {
                mesh.colors.push_back(kDefaultVertexColor);
            }
        } else if (tokens[0] == "f") {
            if (tokens.size() != 4) {
                throw NonTriangularFace(line_no, tokens.size() - 1);
            }
            const std::size_t n = mesh.positions.size();
            mesh.faces.push_back(
                {face_index(tokens[1], n, line_no), face_index(tokens[2], n, line_no), face_index(tokens[3], n, line_no)});
        }
    }
    return mesh;
}

std::string write_obj(const Mesh& mesh) {
    std::ostringstream out;
    const Fx c255 = Fx::from_int(255);
    for (std::size_t i = 0; i < mesh.positions.size(); ++i) {
        const Vec3Fx& p = mesh.positions[i];
        out << "v " << p.x.to_string() << ' ' << p.y.to_string() << ' ' << p.z.to_string();
        if (i < mesh.colors.size()) {
            const ColorRGB& c = mesh.colors[i];
            out << ' ' << fx_div(Fx::from_int(c.r), c255).to_string() << ' '
                << fx_div(Fx::from_int(c.g), c255).to_string() << ' ' << fx_div(Fx::from_int(c.b), c255).to_string();
        }
        out << '\n';
    }
    for (const Face& f : mesh.faces) {
        out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
    }
    return out.str();
}

}  // namespace shackled
