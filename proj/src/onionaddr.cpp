#include "recog/onionaddr.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cctype>
#include <memory>
#include <vector>

#include "recog/errors.hpp"

namespace recog {

namespace {

constexpr std::string_view kAlphabet = "abcdefghijklmnopqrstuvwxyz234567";

int base32_value(char c) {
    if (c >= 'a' && c <= 'z') return c - 'a';
    if (c >= '2' && c <= '7') return c - '2' + 26;
    return -1;
}

std::array<std::uint8_t, 32> sha3_256(std::span<const std::uint8_t> data) {
    std::array<std::uint8_t, 32> out{};
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    unsigned len = 0;
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha3_256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
        EVP_DigestFinal_ex(ctx.get(), out.data(), &len) != 1 || len != out.size())
        throw std::runtime_error("SHA3-256 unavailable");
    return out;
}

// Reduces a URL or domain to its 56-character service label.
std::string extract_label(std::string_view text) {
    std::string s(text);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (const auto scheme = s.find("://"); scheme != std::string::npos) s.erase(0, scheme + 3);
    if (const auto end = s.find_first_of("/?#"); end != std::string::npos) s.erase(end);
    if (const auto port = s.find(':'); port != std::string::npos) s.erase(port);
    while (!s.empty() && s.back() == '.') s.pop_back();
    constexpr std::string_view suffix = ".onion";
    if (s.ends_with(suffix)) s.erase(s.size() - suffix.size());
    if (const auto dot = s.rfind('.'); dot != std::string::npos) s.erase(0, dot + 1);
    return s;
}

}  // namespace

std::string base32_encode(std::span<const std::uint8_t> data) {
    std::string out;
    std::uint32_t buffer = 0;
    int bits = 0;
    for (std::uint8_t byte : data) {
        buffer = (buffer << 8) | byte;
        bits += 8;
        while (bits >= 5) {
            bits -= 5;
            out.push_back(kAlphabet[(buffer >> bits) & 0x1F]);
        }
    }
    if (bits > 0) out.push_back(kAlphabet[(buffer << (5 - bits)) & 0x1F]);
    return out;
}

std::array<std::uint8_t, 2> onion_checksum(std::span<const std::uint8_t> pubkey, std::uint8_t version) {
    constexpr std::string_view prefix = ".onion checksum";
    std::vector<std::uint8_t> msg(prefix.begin(), prefix.end());
    msg.insert(msg.end(), pubkey.begin(), pubkey.end());
    msg.push_back(version);
    const auto digest = sha3_256(msg);
    return {digest[0], digest[1]};
}

OnionAddress decode_onion(std::string_view text) {
    const std::string label = extract_label(text);
    if (label.size() != kOnionLabelLength)
        throw Error(Errc::onion_length, "onion label must be 56 characters, got " + std::to_string(label.size()));
    std::array<std::uint8_t, 35> raw{};
    std::uint32_t buffer = 0;
    int bits = 0;
    std::size_t pos = 0;
    for (char c : label) {
        const int v = base32_value(c);
        if (v < 0) throw Error(Errc::onion_alphabet, std::string("invalid base32 character '") + c + "'");
        buffer = (buffer << 5) | static_cast<std::uint32_t>(v);
        bits += 5;
        if (bits >= 8) {
            bits -= 8;
            raw[pos++] = static_cast<std::uint8_t>(buffer >> bits);
        }
    }
    OnionAddress addr;
    std::copy_n(raw.begin(), 32, addr.pubkey.begin());
    addr.checksum = {raw[32], raw[33]};
    addr.version = raw[34];
    if (addr.version != kOnionVersion)
        throw Error(Errc::onion_version, "unsupported onion version " + std::to_string(addr.version));
    if (onion_checksum(addr.pubkey, addr.version) != addr.checksum)
        throw Error(Errc::onion_checksum, "onion address checksum mismatch");
    return addr;
}

FieldElem parse_onion(std::string_view text) {
    const auto addr = decode_onion(text);
    return FieldElem::from_bytes(addr.pubkey, 256);
}

std::string encode_onion(std::span<const std::uint8_t> pubkey) {
    require(pubkey.size() == 32, "onion public key must be 32 bytes");
    std::vector<std::uint8_t> raw(pubkey.begin(), pubkey.end());
    const auto sum = onion_checksum(pubkey, kOnionVersion);
    raw.push_back(sum[0]);
    raw.push_back(sum[1]);
    raw.push_back(kOnionVersion);
    return base32_encode(raw) + ".onion";
}

}  // namespace recog
