#include "recog/random.hpp"

#include <array>
#include <cstring>

#include "recog/errors.hpp"

namespace recog {

std::uint64_t RandomSource::next_u64() {
    std::array<std::uint8_t, 8> b{};
    fill(b);
    std::uint64_t v = 0;
    for (std::uint8_t byte : b) v = (v << 8) | byte;
    return v;
}

std::uint64_t RandomSource::uniform(std::uint64_t bound) {
    require(bound > 0, "uniform bound must be positive");
    // Rejection sampling over the largest multiple of bound.
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    for (;;) {
        const std::uint64_t v = next_u64();
        if (v < limit) return v % bound;
    }
}

void SystemRandom::fill(std::span<std::uint8_t> out) {
    std::size_t i = 0;
    while (i < out.size()) {
        const auto v = dev_();
        for (std::size_t k = 0; k < sizeof(v) && i < out.size(); ++k, ++i)
            out[i] = static_cast<std::uint8_t>(v >> (8 * k));
    }
}

void SeededRandom::fill(std::span<std::uint8_t> out) {
    std::size_t i = 0;
    while (i < out.size()) {
        const std::uint64_t v = engine_();
        for (std::size_t k = 0; k < 8 && i < out.size(); ++k, ++i) out[i] = static_cast<std::uint8_t>(v >> (8 * k));
    }
}

std::uint64_t parse_seed_hex(std::string_view text) {
    if (text.starts_with("0x") || text.starts_with("0X")) text.remove_prefix(2);
    if (text.empty() || text.size() > 16) throw Error(Errc::contract_violation, "seed must be 1-16 hex digits");
    std::uint64_t v = 0;
    for (char c : text) {
        unsigned d = 0;
        if (c >= '0' && c <= '9') d = static_cast<unsigned>(c - '0');
        else if (c >= 'a' && c <= 'f') d = static_cast<unsigned>(c - 'a' + 10);
        else if (c >= 'A' && c <= 'F') d = static_cast<unsigned>(c - 'A' + 10);
        else throw Error(Errc::contract_violation, "seed must be hexadecimal");
        v = (v << 4) | d;
    }
    return v;
}

std::uint64_t split_seed(std::uint64_t master, std::uint64_t index) noexcept {
    std::uint64_t z = master + (index + 1) * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace recog
