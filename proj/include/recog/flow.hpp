#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "recog/recognizer.hpp"
#include "recog/visualhash.hpp"

namespace recog {

/// The recognizer sizes m for this many items at most, so that one m serves
/// every supported N (the passphrase codec tops out at 84 key bits).
inline constexpr unsigned kMaxItems = 5;
inline constexpr unsigned kDefaultQ = 100;
inline constexpr double kDefaultEpsilon = 3e-4;

/// select_m(kMaxItems, q, eps): 21 at the defaults.
unsigned fingerprint_bits_for(unsigned q, double eps);

struct InitOutcome {
    RecognizerInstance instance;
    std::string passphrase;
    Scene scene;
    std::string svg;
};

/// Parses the onion domains and builds a recognizer for them. Errors carry
/// the offending domain's position. With `add_decoy`, a single domain is
/// paired with a random 256-bit decoy item.
InitOutcome init_from_domains(const std::vector<std::string>& domains, unsigned q, double eps, RandomSource& rng,
                              bool add_decoy = false);

struct CheckOutcome {
    Fingerprint fingerprint;
    Scene scene;
    std::string svg;
};

CheckOutcome check_domain(const RecognizerParams& params, const CoeffVector& db, const Key& key,
                          std::string_view domain);

/// One row of the parameter table: N items, budget q, fingerprint bits m.
struct ParamRow {
    unsigned N = 0;
    unsigned q = 0;
    unsigned m = 0;
    long double epsilon = 0;
    unsigned key_bits = 0;
    unsigned fingerprint_bits = 0;
    std::size_t words = 0;
};

/// Rows for each N in `item_counts`, all at the single m that meets `eps`
/// for the largest N listed.
std::vector<ParamRow> parameter_table(const std::vector<unsigned>& item_counts, unsigned q, double eps);

/// `x` cut (not rounded) to two significant digits, as mantissa tenths and
/// exponent: 9.53e-5 -> {95, -5}.
struct TwoDigits {
    int tenths = 0;
    int exponent = 0;
    friend bool operator==(const TwoDigits&, const TwoDigits&) = default;
};
TwoDigits truncate_two_digits(long double x);

/// "9.5e-5" style.
std::string format_two_digits(long double x);

std::string format_parameter_table(const std::vector<ParamRow>& rows);

}  // namespace recog
