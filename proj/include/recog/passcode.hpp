#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "recog/gf2field.hpp"
#include "recog/random.hpp"
#include "recog/recognizer.hpp"

namespace recog {

/// Number of words in the shipped list; log2(1449) ~ 10.5 bits per word.
inline constexpr std::size_t kWordlistSize = 1449;

/// Largest key the passphrase codec accepts (N = 5 items at m = 21).
inline constexpr unsigned kMaxKeyBits = 84;

std::size_t levenshtein(std::string_view a, std::string_view b);

/// True iff levenshtein(a, b) <= limit, with early exit.
bool within_distance(std::string_view a, std::string_view b, std::size_t limit);

/// Edit metrics for the wordlist builder. `indel` charges 2 for a
/// substitution (insertions and deletions only).
enum class EditMetric { levenshtein, indel };

std::size_t edit_distance(std::string_view a, std::string_view b, EditMetric metric);
bool within_edit_distance(std::string_view a, std::string_view b, std::size_t limit, EditMetric metric);

class Wordlist {
public:
    explicit Wordlist(std::vector<std::string> words);

    /// The list compiled into the library (data/wordlist.txt).
    static const Wordlist& shipped();
    /// One word per line; blank lines and surrounding whitespace ignored.
    static Wordlist load(const std::string& path);

    std::size_t size() const noexcept { return words_.size(); }
    const std::string& operator[](std::size_t i) const { return words_[i]; }
    const std::vector<std::string>& words() const noexcept { return words_; }
    std::optional<std::size_t> index_of(std::string_view word) const;

    /// The unique entry at distance 1 from `word`; failing that, the unique
    /// entry at distance 2.
    std::optional<std::string> suggest(std::string_view word) const;

    /// Sorted, newline-terminated, one word per line.
    std::string to_text() const;

private:
    std::vector<std::string> words_;
    std::unordered_map<std::string, std::size_t> index_;
};

/// min{w : |list|^w >= 2^key_bits}.
std::size_t words_for_bits(unsigned key_bits, std::size_t radix = kWordlistSize);

/// Key -> words, little-endian base-|list| digits, joined by hyphens.
std::string encode_key(const Key& key, const Wordlist& list = Wordlist::shipped());
std::string encode_bits(const FieldElem& bits, const Wordlist& list = Wordlist::shipped());

/// Inverse of encode_bits for a key of `key_bits` bits. Throws unknown_word
/// (with position), word_count, or out_of_range.
FieldElem decode_words(std::string_view passphrase, unsigned key_bits, const Wordlist& list = Wordlist::shipped());
Key decode_key(std::string_view passphrase, unsigned item_count, unsigned m,
               const Wordlist& list = Wordlist::shipped());

enum class WordVerdict { accepted, unknown_with_suggestion, unknown };

struct WordStatus {
    std::string word;
    WordVerdict verdict = WordVerdict::unknown;
    std::optional<std::string> suggestion;
};

struct EntryStatus {
    std::vector<WordStatus> words;  // completed words only
    std::string pending;            // unterminated trailing fragment
    bool complete = false;          // every word accepted and the count matches
};

/// Checks every completed word of a partially typed passphrase. A word is
/// completed once a hyphen follows it, or when `final_entry` is set.
/// `expected_words` of 0 accepts any count.
EntryStatus validate_entry(std::string_view partial, const Wordlist& list = Wordlist::shipped(),
                           bool final_entry = false, std::size_t expected_words = 0);

std::string_view verdict_name(WordVerdict v) noexcept;

/// S plus a seeded sample of `target - |S|` survivors, sorted. Survivors:
/// P1 = { x in pool : d(x, S) >= 3 }, then
/// P2 = { x in P1 : d(x, P1 \ {x}) >= 3, x lowercase a-z }, then |x| <= max_len.
/// Throws insufficient_pool.
struct WordlistBuild {
    Wordlist list;
    std::size_t survivors = 0;  // filtered pool size before sampling
};
WordlistBuild build_wordlist(const std::vector<std::string>& base, const std::vector<std::string>& pool,
                             std::size_t max_len, std::size_t target, RandomSource& rng,
                             EditMetric metric = EditMetric::levenshtein);

struct WordlistReport {
    std::size_t size = 0;
    std::size_t duplicates = 0;
    std::size_t min_distance = 0;  // 0 when fewer than two distinct words
    std::size_t max_length = 0;
    bool pass = false;
};

WordlistReport verify_wordlist(const std::vector<std::string>& words, std::size_t expected_size = kWordlistSize);

}  // namespace recog
