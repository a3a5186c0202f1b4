#include "recog/passcode.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <numeric>
#include <sstream>

#include "recog/errors.hpp"

namespace recog {

extern const char* const kShippedWordlistText;

namespace {

using u128 = unsigned __int128;

std::vector<std::string> split_lines(std::istream& in) {
    std::vector<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        const auto e = line.find_last_not_of(" \t\r");
        words.push_back(line.substr(b, e - b + 1));
    }
    return words;
}

std::vector<std::string_view> split_hyphens(std::string_view s) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (;;) {
        const auto dash = s.find('-', start);
        if (dash == std::string_view::npos) {
            parts.push_back(s.substr(start));
            return parts;
        }
        parts.push_back(s.substr(start, dash - start));
        start = dash + 1;
    }
}

bool is_plain_word(std::string_view w) {
    return !w.empty() && std::all_of(w.begin(), w.end(), [](char c) { return c >= 'a' && c <= 'z'; });
}

u128 bits_to_int(const FieldElem& bits) {
    u128 v = 0;
    for (unsigned i = bits.width(); i-- > 0;) v = (v << 1) | (bits.bit(i) ? 1U : 0U);
    return v;
}

}  // namespace

std::size_t edit_distance(std::string_view a, std::string_view b, EditMetric metric) {
    const std::size_t sub = metric == EditMetric::indel ? 2 : 1;
    std::vector<std::size_t> row(b.size() + 1);
    std::iota(row.begin(), row.end(), std::size_t{0});
    for (std::size_t i = 1; i <= a.size(); ++i) {
        std::size_t diag = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t up = row[j];
            row[j] = std::min({up + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : sub)});
            diag = up;
        }
    }
    return row[b.size()];
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
    return edit_distance(a, b, EditMetric::levenshtein);
}

bool within_edit_distance(std::string_view a, std::string_view b, std::size_t limit, EditMetric metric) {
    const std::size_t diff = a.size() > b.size() ? a.size() - b.size() : b.size() - a.size();
    if (diff > limit) return false;
    std::array<std::size_t, 64> buf{};
    if (b.size() + 1 > buf.size()) return edit_distance(a, b, metric) <= limit;
    const std::size_t sub = metric == EditMetric::indel ? 2 : 1;
    auto* row = buf.data();
    for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        std::size_t diag = row[0];
        row[0] = i;
        std::size_t best = row[0];
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t up = row[j];
            row[j] = std::min({up + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : sub)});
            diag = up;
            best = std::min(best, row[j]);
        }
        if (best > limit) return false;
    }
    return row[b.size()] <= limit;
}

bool within_distance(std::string_view a, std::string_view b, std::size_t limit) {
    return within_edit_distance(a, b, limit, EditMetric::levenshtein);
}

// ---------------------------------------------------------------------------
// Wordlist

Wordlist::Wordlist(std::vector<std::string> words) : words_(std::move(words)) {
    index_.reserve(words_.size());
    for (std::size_t i = 0; i < words_.size(); ++i) {
        require(!words_[i].empty(), "wordlist contains an empty word");
        require(words_[i].find('-') == std::string::npos, "wordlist words must not contain hyphens");
        require(index_.emplace(words_[i], i).second, "wordlist contains a duplicate word");
    }
}

const Wordlist& Wordlist::shipped() {
    static const Wordlist list = [] {
        std::istringstream in(kShippedWordlistText);
        return Wordlist(split_lines(in));
    }();
    return list;
}

Wordlist Wordlist::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::io, "cannot read wordlist " + path);
    return Wordlist(split_lines(in));
}

std::optional<std::size_t> Wordlist::index_of(std::string_view word) const {
    const auto it = index_.find(std::string(word));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::string> Wordlist::suggest(std::string_view word) const {
    // Nearest first: with pairwise distance >= 3 at most one entry lies at
    // distance 1, but a distance-1 typo may still be 2 away from another word.
    std::optional<std::string> at1, at2;
    std::size_t n1 = 0, n2 = 0;
    for (const auto& w : words_) {
        if (!within_distance(word, w, 2)) continue;
        if (levenshtein(word, w) <= 1) {
            ++n1;
            at1 = w;
        } else {
            ++n2;
            at2 = w;
        }
    }
    if (n1 == 1) return at1;
    if (n1 == 0 && n2 == 1) return at2;
    return std::nullopt;
}

std::string Wordlist::to_text() const {
    std::vector<std::string> sorted = words_;
    std::sort(sorted.begin(), sorted.end());
    std::string out;
    for (const auto& w : sorted) out += w + "\n";
    return out;
}

// ---------------------------------------------------------------------------
// codec

std::size_t words_for_bits(unsigned key_bits, std::size_t radix) {
    require(radix >= 2, "radix must be at least 2");
    require(key_bits <= 127, "key too long");
    const u128 limit = u128{1} << key_bits;
    std::size_t w = 0;
    u128 span = 1;
    while (span < limit) {
        span *= radix;
        ++w;
    }
    return w;
}

std::string encode_bits(const FieldElem& bits, const Wordlist& list) {
    if (bits.width() > kMaxKeyBits)
        throw Error(Errc::unsupported, "keys longer than " + std::to_string(kMaxKeyBits) + " bits are not supported");
    u128 v = bits_to_int(bits);
    const std::size_t count = words_for_bits(bits.width(), list.size());
    std::string out;
    for (std::size_t i = 0; i < count; ++i) {
        if (i != 0) out += '-';
        out += list[static_cast<std::size_t>(v % list.size())];
        v /= list.size();
    }
    return out;
}

std::string encode_key(const Key& key, const Wordlist& list) { return encode_bits(key.to_bits(), list); }

FieldElem decode_words(std::string_view passphrase, unsigned key_bits, const Wordlist& list) {
    if (key_bits == 0 || key_bits > kMaxKeyBits)
        throw Error(Errc::unsupported, "keys longer than " + std::to_string(kMaxKeyBits) + " bits are not supported");
    const auto parts = split_hyphens(passphrase);
    std::vector<std::size_t> digits;
    digits.reserve(parts.size());
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const auto idx = list.index_of(parts[i]);
        if (!idx) throw Error(Errc::unknown_word, "unknown word '" + std::string(parts[i]) + "' at position " + std::to_string(i), i);
        digits.push_back(*idx);
    }
    const std::size_t expected = words_for_bits(key_bits, list.size());
    if (digits.size() != expected)
        throw Error(Errc::word_count,
                    "expected " + std::to_string(expected) + " words, got " + std::to_string(digits.size()));
    u128 v = 0;
    for (std::size_t i = digits.size(); i-- > 0;) v = v * list.size() + digits[i];
    if (v >> key_bits != 0) throw Error(Errc::out_of_range, "passphrase encodes a value outside the key space");
    FieldElem bits(key_bits);
    for (unsigned i = 0; i < key_bits; ++i) bits.set_bit(i, ((v >> i) & 1U) != 0);
    return bits;
}

Key decode_key(std::string_view passphrase, unsigned item_count, unsigned m, const Wordlist& list) {
    require(item_count >= 2, "key needs at least two items");
    return Key::from_bits(decode_words(passphrase, (item_count - 1) * m, list), m);
}

// ---------------------------------------------------------------------------
// entry validation

std::string_view verdict_name(WordVerdict v) noexcept {
    switch (v) {
        case WordVerdict::accepted: return "accepted";
        case WordVerdict::unknown_with_suggestion: return "unknown-with-suggestion";
        case WordVerdict::unknown: return "unknown";
    }
    return "unknown";
}

EntryStatus validate_entry(std::string_view partial, const Wordlist& list, bool final_entry,
                           std::size_t expected_words) {
    EntryStatus status;
    if (partial.empty()) return status;
    auto parts = split_hyphens(partial);
    if (!final_entry) {
        status.pending = std::string(parts.back());
        parts.pop_back();
    }
    bool all_ok = true;
    for (const auto part : parts) {
        WordStatus ws{std::string(part), WordVerdict::accepted, std::nullopt};
        if (!list.index_of(part)) {
            all_ok = false;
            ws.suggestion = list.suggest(part);
            ws.verdict = ws.suggestion ? WordVerdict::unknown_with_suggestion : WordVerdict::unknown;
        }
        status.words.push_back(std::move(ws));
    }
    status.complete = final_entry && all_ok && (expected_words == 0 || status.words.size() == expected_words);
    return status;
}

// ---------------------------------------------------------------------------
// wordlist construction

WordlistBuild build_wordlist(const std::vector<std::string>& base, const std::vector<std::string>& pool,
                             std::size_t max_len, std::size_t target, RandomSource& rng, EditMetric metric) {
    auto near = [&](const std::string& x, const std::string& y) { return within_edit_distance(x, y, 2, metric); };
    std::vector<std::string> first;
    for (const auto& x : pool) {
        if (std::any_of(base.begin(), base.end(), [&](const std::string& s) { return near(x, s); })) continue;
        first.push_back(x);
    }
    std::sort(first.begin(), first.end());
    first.erase(std::unique(first.begin(), first.end()), first.end());
    std::vector<std::string> survivors;
    for (std::size_t i = 0; i < first.size(); ++i) {
        bool crowded = false;
        for (std::size_t j = 0; j < first.size() && !crowded; ++j) crowded = j != i && near(first[i], first[j]);
        // Hyphenated pool words still crowd their neighbours but are never picked.
        if (!crowded && is_plain_word(first[i])) survivors.push_back(first[i]);
    }
    std::erase_if(survivors, [&](const std::string& w) { return w.size() > max_len; });

    const std::size_t need = target >= base.size() ? target - base.size() : 0;
    require(target >= base.size(), "target smaller than the base list");
    if (survivors.size() < need)
        throw Error(Errc::insufficient_pool, "only " + std::to_string(survivors.size()) + " pool words survive, need " +
                                                 std::to_string(need));
    // Partial Fisher-Yates over the sorted survivors.
    std::vector<std::string> picked = survivors;
    for (std::size_t i = 0; i < need; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.uniform(picked.size() - i));
        std::swap(picked[i], picked[j]);
    }
    picked.resize(need);

    std::vector<std::string> words = base;
    words.insert(words.end(), picked.begin(), picked.end());
    std::sort(words.begin(), words.end());
    return WordlistBuild{Wordlist(std::move(words)), survivors.size()};
}

WordlistReport verify_wordlist(const std::vector<std::string>& words, std::size_t expected_size) {
    WordlistReport r;
    r.size = words.size();
    std::vector<std::string> sorted = words;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i] == sorted[i - 1]) ++r.duplicates;
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (const auto& w : sorted) r.max_length = std::max(r.max_length, w.size());
    std::size_t best = 0;
    bool have = false;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        for (std::size_t j = i + 1; j < sorted.size(); ++j) {
            // Only distances below the running minimum matter.
            if (have && !within_distance(sorted[i], sorted[j], best - 1)) continue;
            best = levenshtein(sorted[i], sorted[j]);
            have = true;
        }
    }
    r.min_distance = have ? best : 0;
    r.pass = r.size == expected_size && r.duplicates == 0 && r.min_distance >= 3;
    return r;
}

}  // namespace recog
