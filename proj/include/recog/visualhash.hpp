#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "recog/gf2field.hpp"

namespace recog {

/// Fingerprints wider than this cannot be rendered injectively.
inline constexpr unsigned kMaxSceneBits = 27;
inline constexpr unsigned kSceneCells = 9;
inline constexpr unsigned kSvgCanvas = 256;

struct Tile {
    std::uint8_t shape = 0;        // 0..3
    std::uint8_t palette = 0;      // 0..7
    std::uint8_t orientation = 0;  // 0..3, quarter turns
    friend bool operator==(const Tile&, const Tile&) = default;
};

/// 3x3 mosaic, row-major. Cell i is driven by fingerprint bits 3i..3i+2
/// read as v (bit 3i least significant): palette = v, shape = v & 3,
/// orientation = v >> 1. Cells past bit m stay at v = 0.
struct Scene {
    std::array<Tile, kSceneCells> tiles{};
    unsigned m = 0;
    std::string fingerprint_hex;
    friend bool operator==(const Scene&, const Scene&) = default;
};

/// Throws Errc::unsupported when m > 27.
Scene scene_of(const FieldElem& fingerprint, unsigned m);

std::string svg_of(const Scene& scene);

/// {"fingerprint":"<hex>","m":21,"tiles":[{"orientation":0,"palette":0,"shape":0},...]}
/// with sorted keys and no insignificant whitespace.
std::string scene_json(const Scene& scene);

/// The 8-colour palette, as "#rrggbb".
const std::array<const char*, 8>& scene_palette() noexcept;

}  // namespace recog
