#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace recog {

enum class Errc {
    contract_violation,
    zero_inverse,
    not_distinct,
    init_failed,
    onion_length,
    onion_alphabet,
    onion_version,
    onion_checksum,
    unknown_word,
    word_count,
    out_of_range,
    unsupported,
    insufficient_pool,
    not_a_database,
    corrupt,
    invalid_params,
    io,
    refused,
};

/// Stable kebab-case name, used in CLI diagnostics and bridge error payloads.
std::string_view errc_name(Errc code) noexcept;

/// The single exception type thrown by the library. `position` is set for
/// errors that point into a sequence (passphrase words, domain lists).
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what, std::optional<std::size_t> position = std::nullopt)
        : std::runtime_error(what), code_(code), position_(position) {}

    Errc code() const noexcept { return code_; }
    std::optional<std::size_t> position() const noexcept { return position_; }

private:
    Errc code_;
    std::optional<std::size_t> position_;
};

inline void require(bool cond, const char* what) {
    if (!cond) throw Error(Errc::contract_violation, what);
}

}  // namespace recog
