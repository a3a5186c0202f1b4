#include <random>
#include <set>
#include <unordered_set>

#include "doctest.h"
#include "recog/errors.hpp"
#include "recog/visualhash.hpp"

using namespace recog;

TEST_CASE("tile mapping") {
    // bits 0..2 = 0b101 -> cell 0 v = 5; bits 3..5 = 0b011 -> cell 1 v = 3
    const auto s = scene_of(FieldElem::from_u64(0b011101, 21), 21);
    CHECK(s.tiles[0] == Tile{1, 5, 2});
    CHECK(s.tiles[1] == Tile{3, 3, 1});
    for (unsigned c = 2; c < kSceneCells; ++c) CHECK(s.tiles[c] == Tile{0, 0, 0});
    CHECK(s.m == 21);
    CHECK(s.fingerprint_hex == "00001d");
}

TEST_CASE("scene json is canonical") {
    const auto s = scene_of(FieldElem::from_u64(7, 3), 3);
    const std::string zero = "{\"orientation\":0,\"palette\":0,\"shape\":0}";
    std::string want = "{\"fingerprint\":\"7\",\"m\":3,\"tiles\":[{\"orientation\":3,\"palette\":7,\"shape\":3}";
    for (int i = 0; i < 8; ++i) want += "," + zero;
    want += "]}";
    CHECK(scene_json(s) == want);
}

TEST_CASE("scenes are injective at m = 16") {
    std::set<std::string> seen;
    for (std::uint64_t v = 0; v < (1U << 16); ++v) seen.insert(scene_json(scene_of(FieldElem::from_u64(v, 16), 16)));
    CHECK(seen.size() == (1U << 16));
}

TEST_CASE("distinct fingerprints give different pictures") {
    std::mt19937_64 g(103);
    for (int i = 0; i < 10000; ++i) {
        const std::uint64_t a = g() & 0x1fffff, b = g() & 0x1fffff;
        if (a == b) continue;
        REQUIRE(svg_of(scene_of(FieldElem::from_u64(a, 21), 21)) != svg_of(scene_of(FieldElem::from_u64(b, 21), 21)));
    }
}

TEST_CASE("svg structure") {
    const auto svg = svg_of(scene_of(FieldElem::from_u64(0x1abcde, 21), 21));
    CHECK(svg.rfind("<svg xmlns=\"http://www.w3.org/2000/svg\"", 0) == 0);
    std::size_t tiles = 0;
    for (auto p = svg.find("class=\"tile\""); p != std::string::npos; p = svg.find("class=\"tile\"", p + 1)) ++tiles;
    CHECK(tiles == 9);
    CHECK(svg.find("1abcde") != std::string::npos);
    CHECK(svg.substr(svg.size() - 7) == "</svg>\n");
    CHECK(svg == svg_of(scene_of(FieldElem::from_u64(0x1abcde, 21), 21)));
}

TEST_CASE("palette has eight distinct colours") {
    std::set<std::string> c(scene_palette().begin(), scene_palette().end());
    CHECK(c.size() == 8);
}

TEST_CASE("width limits") {
    CHECK_NOTHROW((void)scene_of(FieldElem(27), 27));
    try {
        (void)scene_of(FieldElem(28), 28);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::unsupported);
    }
    CHECK_THROWS_AS((void)scene_of(FieldElem(20), 21), Error);
}
