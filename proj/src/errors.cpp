#include "recog/errors.hpp"

namespace recog {

std::string_view errc_name(Errc code) noexcept {
    switch (code) {
        case Errc::contract_violation: return "contract-violation";
        case Errc::zero_inverse: return "zero-inverse";
        case Errc::not_distinct: return "not-distinct";
        case Errc::init_failed: return "init-failed";
        case Errc::onion_length: return "onion-length";
        case Errc::onion_alphabet: return "onion-alphabet";
        case Errc::onion_version: return "onion-version";
        case Errc::onion_checksum: return "onion-checksum";
        case Errc::unknown_word: return "unknown-word";
        case Errc::word_count: return "word-count";
        case Errc::out_of_range: return "out-of-range";
        case Errc::unsupported: return "unsupported";
        case Errc::insufficient_pool: return "insufficient-pool";
        case Errc::not_a_database: return "not-a-database";
        case Errc::corrupt: return "corrupt";
        case Errc::invalid_params: return "invalid-parameters";
        case Errc::io: return "io";
        case Errc::refused: return "refused";
    }
    return "unknown";
}

}  // namespace recog
