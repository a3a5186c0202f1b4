#include "recog/visualhash.hpp"

#include "json.hpp"

#include <string>

#include "recog/errors.hpp"

namespace recog {

namespace {

constexpr int kMargin = 8;
constexpr int kCell = 80;

// Shape outlines in a 0..80 cell box before rotation about the centre.
std::string shape_markup(int shape, const char* colour) {
    const std::string fill = std::string(" fill=\"") + colour + "\"";
    switch (shape) {
        case 0: return "<rect x=\"10\" y=\"10\" width=\"60\" height=\"60\" rx=\"8\"" + fill + "/>";
        case 1: return "<polygon points=\"40,8 72,72 8,72\"" + fill + "/>";
        case 2: return "<path d=\"M8,56 A32,32 0 0 1 72,56 Z\"" + fill + "/>";
        default: return "<rect x=\"8\" y=\"8\" width=\"28\" height=\"64\"" + fill + "/>";
    }
}

}  // namespace

const std::array<const char*, 8>& scene_palette() noexcept {
    // Okabe-Ito: separable under the common colour-vision deficiencies.
    static constexpr std::array<const char*, 8> palette = {"#000000", "#e69f00", "#56b4e9", "#009e73",
                                                           "#f0e442", "#0072b2", "#d55e00", "#cc79a7"};
    return palette;
}

Scene scene_of(const FieldElem& fingerprint, unsigned m) {
    if (m > kMaxSceneBits) throw Error(Errc::unsupported, "visual hash supports at most 27 fingerprint bits");
    require(fingerprint.width() == m, "fingerprint width differs from m");
    Scene s;
    s.m = m;
    s.fingerprint_hex = fingerprint.to_hex();
    for (unsigned cell = 0; cell < kSceneCells; ++cell) {
        unsigned v = 0;
        for (unsigned b = 0; b < 3; ++b) {
            const unsigned bit = 3 * cell + b;
            if (bit < m && fingerprint.bit(bit)) v |= 1U << b;
        }
        s.tiles[cell] = Tile{static_cast<std::uint8_t>(v & 3U), static_cast<std::uint8_t>(v),
                             static_cast<std::uint8_t>(v >> 1)};
    }
    return s;
}

std::string svg_of(const Scene& scene) {
    const auto& palette = scene_palette();
    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"256\" height=\"256\" viewBox=\"0 0 256 256\">\n";
    out += "<title>fingerprint " + scene.fingerprint_hex + "</title>\n";
    out += "<rect width=\"256\" height=\"256\" fill=\"#f4f4f4\"/>\n";
    for (unsigned cell = 0; cell < kSceneCells; ++cell) {
        const Tile& t = scene.tiles[cell];
        const int x = kMargin + static_cast<int>(cell % 3) * kCell;
        const int y = kMargin + static_cast<int>(cell / 3) * kCell;
        out += "<g class=\"tile\" transform=\"translate(" + std::to_string(x) + "," + std::to_string(y) + ") rotate(" +
               std::to_string(90 * (t.orientation & 3U)) + " 40 40)\">";
        out += shape_markup(t.shape & 3U, palette[t.palette & 7U]);
        out += "</g>\n";
    }
    out += "</svg>\n";
    return out;
}

std::string scene_json(const Scene& scene) {
    nlohmann::json tiles = nlohmann::json::array();
    for (const Tile& t : scene.tiles)
        tiles.push_back({{"orientation", t.orientation}, {"palette", t.palette}, {"shape", t.shape}});
    const nlohmann::json j = {{"fingerprint", scene.fingerprint_hex}, {"m", scene.m}, {"tiles", tiles}};
    return j.dump();
}

}  // namespace recog
