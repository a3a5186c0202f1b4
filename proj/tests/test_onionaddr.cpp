#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "recog/errors.hpp"
#include "recog/onionaddr.hpp"

using namespace recog;

namespace {

std::string hex(const std::array<std::uint8_t, 32>& d) {
    static const char* digits = "0123456789abcdef";
    std::string s;
    for (auto b : d) {
        s.push_back(digits[b >> 4]);
        s.push_back(digits[b & 15]);
    }
    return s;
}

OnionPubkey random_key(std::mt19937_64& g) {
    OnionPubkey k{};
    for (auto& b : k) b = static_cast<std::uint8_t>(g());
    return k;
}

Errc decode_error(const std::string& text) {
    try {
        (void)decode_onion(text);
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error for " << text);
    return Errc::contract_violation;
}

}  // namespace

TEST_CASE("the SHA3 oracle matches published digests") {
    CHECK(hex(oracle::sha3_256({})) == "a7ffc6f8bf1ed76651c14756a061d662f580ff4de43b49fa82d80a4b80f8434a");
    CHECK(hex(oracle::sha3_256(std::vector<std::uint8_t>(200, 'a'))) ==
          "cce34485baf2bf2aca99b94833892a4f52896d3d153f7b840cc4f9fe695f1387");
}

TEST_CASE("zero key golden address") {
    const OnionPubkey zero{};
    CHECK(encode_onion(zero) == "aaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaam2dqd.onion");
    CHECK(encode_onion(zero) == oracle::onion_of(zero));
}

TEST_CASE("encoding agrees with the independent oracle") {
    std::mt19937_64 g(41);
    for (int i = 0; i < 200; ++i) {
        const auto k = random_key(g);
        REQUIRE(encode_onion(k) == oracle::onion_of(k));
    }
}

TEST_CASE("decode inverts encode and yields the key as a 256-bit item") {
    std::mt19937_64 g(43);
    for (int i = 0; i < 1000; ++i) {
        const auto k = random_key(g);
        const auto text = encode_onion(k);
        const auto addr = decode_onion(text);
        REQUIRE(addr.pubkey == k);
        REQUIRE(addr.version == 3);
        const auto item = parse_onion(text);
        REQUIRE(item.width() == 256);
        REQUIRE(item.to_bytes() == std::vector<std::uint8_t>(k.begin(), k.end()));
    }
}

TEST_CASE("accepted spellings") {
    std::mt19937_64 g(47);
    const auto k = random_key(g);
    const auto canonical = encode_onion(k);
    const auto label = canonical.substr(0, 56);
    std::string upper = canonical;
    for (auto& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    for (const auto& s : {canonical, label, upper, "http://" + canonical + "/path?x=1#frag",
                          "https://www." + canonical + ":8080/", canonical + "."}) {
        CAPTURE(s);
        CHECK(decode_onion(s).pubkey == k);
    }
}

TEST_CASE("error classes") {
    std::mt19937_64 g(53);
    const auto k = random_key(g);
    const auto canonical = encode_onion(k);
    const auto label = canonical.substr(0, 56);

    CHECK(decode_error(label.substr(0, 55) + ".onion") == Errc::onion_length);
    CHECK(decode_error(label + "a.onion") == Errc::onion_length);
    CHECK(decode_error("") == Errc::onion_length);

    std::string bad_char = label;
    bad_char[10] = '1';
    CHECK(decode_error(bad_char) == Errc::onion_alphabet);
    bad_char[10] = '8';
    CHECK(decode_error(bad_char) == Errc::onion_alphabet);

    // Version byte 4 with a checksum that is valid for version 4.
    std::vector<std::uint8_t> pre(std::begin(".onion checksum"), std::end(".onion checksum") - 1);
    pre.insert(pre.end(), k.begin(), k.end());
    pre.push_back(4);
    const auto h = oracle::sha3_256(pre);
    std::vector<std::uint8_t> body(k.begin(), k.end());
    body.insert(body.end(), {h[0], h[1], 4});
    CHECK(decode_error(oracle::base32(body)) == Errc::onion_version);

    std::vector<std::uint8_t> wrong(k.begin(), k.end());
    const auto right = onion_checksum(k, 3);
    wrong.insert(wrong.end(), {static_cast<std::uint8_t>(right[0] ^ 1), right[1], 3});
    CHECK(decode_error(oracle::base32(wrong)) == Errc::onion_checksum);
}

TEST_CASE("a flipped label character is caught") {
    std::mt19937_64 g(59);
    static constexpr std::string_view alphabet = "abcdefghijklmnopqrstuvwxyz234567";
    int caught = 0, trials = 0;
    for (int i = 0; i < 500; ++i) {
        const auto text = encode_onion(random_key(g)).substr(0, 56);
        const std::size_t pos = g() % 51;  // inside the pubkey part
        std::string t = text;
        char c;
        do c = alphabet[g() % 32];
        while (c == t[pos]);
        t[pos] = c;
        ++trials;
        try {
            (void)decode_onion(t);
        } catch (const Error& e) {
            caught += e.code() == Errc::onion_checksum ? 1 : 0;
        }
    }
    CHECK(caught == trials);
}

TEST_CASE("base32 agrees with the oracle") {
    std::mt19937_64 g(61);
    for (std::size_t len = 0; len < 40; ++len) {
        std::vector<std::uint8_t> d(len);
        for (auto& b : d) b = static_cast<std::uint8_t>(g());
        CHECK(base32_encode(d) == oracle::base32(d));
    }
}
