#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

namespace recog {

/// Source of uniform random bytes.
class RandomSource {
public:
    virtual ~RandomSource() = default;
    virtual void fill(std::span<std::uint8_t> out) = 0;

    std::uint64_t next_u64();
    /// Uniform in [0, bound); bound > 0.
    std::uint64_t uniform(std::uint64_t bound);
};

/// Operating-system entropy (std::random_device, getrandom on Linux).
class SystemRandom final : public RandomSource {
public:
    void fill(std::span<std::uint8_t> out) override;

private:
    std::random_device dev_;
};

/// Deterministic stream for tests, benches, and `--seed`. Not for keys a
/// human will rely on.
class SeededRandom final : public RandomSource {
public:
    explicit SeededRandom(std::uint64_t seed) : engine_(seed) {}
    void fill(std::span<std::uint8_t> out) override;

private:
    std::mt19937_64 engine_;
};

/// Parses a seed given as up to 16 hex digits (optional 0x prefix).
std::uint64_t parse_seed_hex(std::string_view text);

/// Independent sub-seed for stream `index` of a master seed:
/// splitmix64(master + (index + 1) * 0x9e3779b97f4a7c15).
std::uint64_t split_seed(std::uint64_t master, std::uint64_t index) noexcept;

}  // namespace recog
