#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "recog/gf2field.hpp"

namespace recog {

inline constexpr std::size_t kOnionLabelLength = 56;
inline constexpr std::uint8_t kOnionVersion = 3;

using OnionPubkey = std::array<std::uint8_t, 32>;

/// Decoded onion v3 address.
struct OnionAddress {
    OnionPubkey pubkey{};
    std::array<std::uint8_t, 2> checksum{};
    std::uint8_t version = kOnionVersion;
};

/// Accepts a bare label, a domain (subdomains allowed), or a URL; case and
/// scheme are ignored. Throws onion_length / onion_alphabet / onion_version /
/// onion_checksum errors.
OnionAddress decode_onion(std::string_view text);

/// decode_onion(text).pubkey as a 256-bit item (byte 0 most significant).
FieldElem parse_onion(std::string_view text);

/// Canonical "<56 chars>.onion" for a 32-byte service key.
std::string encode_onion(std::span<const std::uint8_t> pubkey);

/// First two bytes of SHA3-256(".onion checksum" || pubkey || version).
std::array<std::uint8_t, 2> onion_checksum(std::span<const std::uint8_t> pubkey, std::uint8_t version);

std::string base32_encode(std::span<const std::uint8_t> data);

}  // namespace recog
