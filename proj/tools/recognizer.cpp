// Command-line front end: init, check, params, wordlist, bench, bridge.

#include <termios.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "recog/bridge.hpp"
#include "recog/errors.hpp"
#include "recog/flow.hpp"
#include "recog/gamebench.hpp"
#include "recog/passcode.hpp"
#include "recog/store.hpp"

namespace fs = std::filesystem;
using namespace recog;

namespace {

constexpr int kExitError = 1;
constexpr int kExitInput = 2;

fs::path sibling_svg(const fs::path& db, const std::string& suffix) {
    fs::path p = db;
    p.replace_extension();
    p += suffix;
    return p;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::io, "cannot write " + path.string());
    out << text;
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::io, "cannot read " + path);
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (!line.empty()) out.push_back(line);
    }
    return out;
}

void print_word_problems(const EntryStatus& status, std::ostream& os) {
    for (std::size_t i = 0; i < status.words.size(); ++i) {
        const auto& w = status.words[i];
        if (w.verdict == WordVerdict::accepted) continue;
        os << "  word " << i + 1 << " '" << w.word << "' is not in the wordlist";
        if (w.suggestion) os << " (did you mean '" << *w.suggestion << "'?)";
        os << "\n";
    }
}

// Raw-mode passphrase prompt: each word is checked as soon as its hyphen
// (or Enter) is typed.
std::optional<std::string> prompt_passphrase_tty(std::size_t expected_words) {
    termios saved{};
    tcgetattr(STDIN_FILENO, &saved);
    termios raw = saved;
    raw.c_lflag &= static_cast<tcflag_t>(~(ICANON | ECHO));
    tcsetattr(STDIN_FILENO, TCSANOW, &raw);
    struct Restore {
        termios t;
        ~Restore() { tcsetattr(STDIN_FILENO, TCSANOW, &t); }
    } restore{saved};

    const std::string prompt = "passphrase (" + std::to_string(expected_words) + " words): ";
    std::string buffer;
    std::cerr << prompt << std::flush;
    for (;;) {
        const int c = std::getchar();
        if (c == EOF || c == 3 || c == 4) {
            std::cerr << "\n";
            return std::nullopt;
        }
        if (c == 127 || c == 8) {
            if (!buffer.empty()) {
                buffer.pop_back();
                std::cerr << "\b \b" << std::flush;
            }
            continue;
        }
        if (c == '\n' || c == '\r') {
            const auto status = validate_entry(buffer, Wordlist::shipped(), true, expected_words);
            std::cerr << "\n";
            if (status.complete) return buffer;
            print_word_problems(status, std::cerr);
            if (status.words.size() != expected_words)
                std::cerr << "  expected " << expected_words << " words, got " << status.words.size() << "\n";
            std::cerr << prompt << buffer << std::flush;
            continue;
        }
        if (c == '-') {
            const auto status = validate_entry(buffer + "-", Wordlist::shipped());
            if (!status.words.empty() && status.words.back().verdict != WordVerdict::accepted) {
                std::cerr << "\n";
                EntryStatus last;
                last.words.push_back(status.words.back());
                // Report with the word's real position.
                const auto& w = status.words.back();
                std::cerr << "  word " << status.words.size() << " '" << w.word << "' is not in the wordlist";
                if (w.suggestion) std::cerr << " (did you mean '" << *w.suggestion << "'?)";
                std::cerr << "\n" << prompt << buffer << std::flush;
                continue;
            }
        }
        if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '-') {
            const char ch = static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c);
            buffer.push_back(ch);
            std::cerr << ch << std::flush;
        }
    }
}

std::optional<std::string> read_passphrase(std::size_t expected_words) {
    if (isatty(STDIN_FILENO)) return prompt_passphrase_tty(expected_words);
    std::string line;
    if (!std::getline(std::cin, line)) return std::nullopt;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    return line;
}

int cmd_init(const std::vector<std::string>& domains, unsigned q, double eps, const std::string& db_path,
             const std::string& seed_hex, bool add_decoy, const std::string& svg_path) {
    std::unique_ptr<RandomSource> rng;
    if (!seed_hex.empty()) {
        std::cerr << "WARNING: --seed makes the database, key, and fingerprint reproducible by anyone who knows the\n"
                     "WARNING: seed. It exists for tests only; never use it for a real recognizer.\n";
        rng = std::make_unique<SeededRandom>(parse_seed_hex(seed_hex));
    } else {
        rng = std::make_unique<SystemRandom>();
    }
    const auto out = init_from_domains(domains, q, eps, *rng, add_decoy);
    save_db(out.instance, db_path);
    const fs::path svg = svg_path.empty() ? sibling_svg(db_path, ".fingerprint.svg") : fs::path(svg_path);
    write_text(svg, out.svg);

    const auto& p = out.instance.params;
    std::cout << "database     " << db_path << " (N=" << p.N << ", q=" << p.q << ", m=" << p.m << ")\n";
    std::cout << "passphrase   " << out.passphrase << "\n";
    std::cout << "fingerprint  " << out.instance.fingerprint.value.to_hex() << "\n";
    std::cout << "visual hash  " << svg.string() << "\n";
    std::cout << "Write the passphrase down and remember the picture; neither is stored.\n";
    return 0;
}

int cmd_check(const std::string& domain, const std::string& db_path, const std::string& svg_path) {
    const auto [params, db] = load_db(db_path);
    const std::size_t expected = words_for_bits(params.key_bits());
    const auto phrase = read_passphrase(expected);
    if (!phrase) {
        std::cerr << "no passphrase entered\n";
        return kExitInput;
    }
    const auto status = validate_entry(*phrase, Wordlist::shipped(), true, expected);
    if (!status.complete) {
        print_word_problems(status, std::cerr);
        if (status.words.size() != expected)
            std::cerr << "  expected " << expected << " words, got " << status.words.size() << "\n";
        return kExitInput;
    }
    const Key key = decode_key(*phrase, params.N, params.m);
    const auto out = check_domain(params, db, key, domain);
    const fs::path svg = svg_path.empty() ? sibling_svg(db_path, ".check.svg") : fs::path(svg_path);
    write_text(svg, out.svg);
    std::cout << "fingerprint  " << out.fingerprint.value.to_hex() << "\n";
    std::cout << "visual hash  " << svg.string() << "\n";
    std::cout << "Compare the picture with the one you memorised.\n";
    return 0;
}

int cmd_params(const std::vector<unsigned>& counts, unsigned q, double eps) {
    std::vector<unsigned> ns = counts;
    if (ns.empty()) ns = {2, 3, 4, 5};
    std::cout << format_parameter_table(parameter_table(ns, q, eps));
    return 0;
}

int cmd_wordlist_verify(const std::string& file) {
    const std::vector<std::string> words = file.empty() ? Wordlist::shipped().words() : read_lines(file);
    const auto r = verify_wordlist(words);
    std::cout << "size          " << r.size << "\n"
              << "duplicates    " << r.duplicates << "\n"
              << "min distance  " << r.min_distance << "\n"
              << "max length    " << r.max_length << "\n"
              << "result        " << (r.pass ? "pass" : "FAIL") << "\n";
    return r.pass ? 0 : kExitInput;
}

int cmd_wordlist_build(const std::string& base_path, const std::string& pool_path, const std::vector<std::string>& drop,
                       std::size_t max_len, std::size_t target, const std::string& seed_hex, const std::string& metric,
                       const std::string& out) {
    auto base = read_lines(base_path);
    std::erase_if(base, [&](const std::string& w) { return std::find(drop.begin(), drop.end(), w) != drop.end(); });
    const auto pool = read_lines(pool_path);
    SeededRandom rng(parse_seed_hex(seed_hex));
    const auto built = build_wordlist(base, pool, max_len, target, rng,
                                      metric == "indel" ? EditMetric::indel : EditMetric::levenshtein);
    std::cerr << "base " << base.size() << ", pool " << pool.size() << ", survivors " << built.survivors << ", output "
              << built.list.size() << "\n";
    if (out.empty()) std::cout << built.list.to_text();
    else write_text(out, built.list.to_text());
    return 0;
}

int cmd_bench_collision(const RecognizerParams& p, const std::string& adversary, std::uint64_t trials,
                        const std::string& seed_hex, unsigned threads, bool json) {
    const auto adv = make_adversary(adversary);
    if (!adv) throw Error(Errc::contract_violation, "unknown adversary '" + adversary + "'");
    const auto r = run_collision_mc(p, *adv, trials, parse_seed_hex(seed_hex), threads);
    std::cout << (json ? report_json(r) + "\n" : report_table(r));
    return 0;
}

int cmd_bench_universality(unsigned n, unsigned m, unsigned k, bool json) {
    const auto dev = universality_census(n, m, k);
    if (json) {
        std::cout << nlohmann::json{{"k", k}, {"m", m}, {"max_deviation", dev}, {"n", n}}.dump() << "\n";
    } else {
        std::cout << "census n=" << n << " m=" << m << " k=" << k << "  max cell deviation " << dev
                  << (dev == 0 ? "  (strongly k-universal)" : "") << "\n";
    }
    return dev == 0 ? 0 : kExitInput;
}

int cmd_bench_lemma(unsigned m, unsigned roots, std::uint64_t instances, const std::string& seed_hex, bool json) {
    SeededRandom rng(parse_seed_hex(seed_hex));
    std::uint64_t passed = 0;
    for (std::uint64_t i = 0; i < instances; ++i) {
        std::vector<FieldElem> rs;
        while (rs.size() < roots) {
            auto x = FieldElem::from_u64(rng.uniform(std::uint64_t{1} << m), m);
            if (std::find(rs.begin(), rs.end(), x) == rs.end()) rs.push_back(x);
        }
        passed += lemma_scan(m, rs) ? 1 : 0;
    }
    if (json) {
        std::cout << nlohmann::json{{"instances", instances}, {"m", m}, {"passed", passed}, {"roots", roots}}.dump()
                  << "\n";
    } else {
        std::cout << "lemma scan m=" << m << " roots=" << roots << "  " << passed << "/" << instances
                  << " preimage sets equal the root set\n";
    }
    return passed == instances ? 0 : kExitInput;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Password-keyed onion-domain recognizer"};
    app.require_subcommand(1);

    // init
    std::vector<std::string> domains;
    unsigned q = kDefaultQ;
    double eps = kDefaultEpsilon;
    std::string db_path = "recognizer.db";
    std::string seed_hex;
    std::string svg_path;
    bool add_decoy = false;
    auto* init = app.add_subcommand("init", "Create a recognizer for 2-5 onion domains");
    init->add_option("--domain", domains, "Onion domain to recognize (repeat for each)")->required();
    init->add_option("--q", q, "Phishing attempts to defend against");
    init->add_option("--eps", eps, "Accepted collision probability");
    init->add_option("--db", db_path, "Database file to write");
    init->add_option("--seed", seed_hex, "Hex seed for reproducible output (tests only)");
    init->add_option("--svg", svg_path, "Where to write the fingerprint picture");
    init->add_flag("--add-decoy", add_decoy, "Pair a single domain with a random decoy item");

    // check
    std::string check_domain_arg;
    auto* check = app.add_subcommand("check", "Compute the fingerprint of a domain");
    check->add_option("domain", check_domain_arg, "Onion domain or URL")->required();
    check->add_option("--db", db_path, "Database file")->required();
    check->add_option("--svg", svg_path, "Where to write the picture");

    // params
    std::vector<unsigned> counts;
    auto* params = app.add_subcommand("params", "Print the parameter table");
    params->add_option("--N", counts, "Item counts (default 2 3 4 5)");
    params->add_option("--q", q, "Phishing attempts");
    params->add_option("--eps", eps, "Target collision probability");

    // wordlist
    auto* wordlist = app.add_subcommand("wordlist", "Verify or rebuild the passphrase wordlist");
    wordlist->require_subcommand(1);
    std::string wl_file;
    auto* wl_verify = wordlist->add_subcommand("verify", "Check size, uniqueness and pairwise edit distance");
    wl_verify->add_option("--file", wl_file, "Wordlist file (default: the shipped list)");
    std::string wl_base, wl_pool, wl_out, wl_seed = "1449";
    std::vector<std::string> wl_drop;
    std::size_t wl_max_len = 7;
    std::string wl_metric = "levenshtein";
    std::size_t wl_target = kWordlistSize;
    auto* wl_build = wordlist->add_subcommand("build", "Extend a base list from a pool");
    wl_build->add_option("--base", wl_base, "Base list, one word per line")->required();
    wl_build->add_option("--pool", wl_pool, "Pool list, one word per line")->required();
    wl_build->add_option("--drop", wl_drop, "Base words to remove first");
    wl_build->add_option("--max-len", wl_max_len, "Longest pool word kept");
    wl_build->add_option("--target", wl_target, "Output size");
    wl_build->add_option("--seed", wl_seed, "Hex seed for the sample");
    wl_build->add_option("--metric", wl_metric, "Edit metric: levenshtein | indel")
        ->check(CLI::IsMember({"levenshtein", "indel"}));
    wl_build->add_option("--out", wl_out, "Output file (default stdout)");

    // bench
    auto* bench = app.add_subcommand("bench", "Security-game experiments");
    bench->require_subcommand(1);
    bool json = false;
    RecognizerParams bp{32, 2, 16, 8};
    std::string adversary = "random";
    std::uint64_t trials = 100000;
    std::string bench_seed = "5eed";
    unsigned threads = 1;
    auto* b_coll = bench->add_subcommand("collision", "Monte Carlo collision game");
    b_coll->add_option("--n", bp.n, "Item bits");
    b_coll->add_option("--N", bp.N, "Stored items");
    b_coll->add_option("--q", bp.q, "Query budget");
    b_coll->add_option("--m", bp.m, "Fingerprint bits");
    b_coll->add_option("--adversary", adversary, "random | near-miss | adaptive-repeat");
    b_coll->add_option("--trials", trials, "Number of games");
    b_coll->add_option("--seed", bench_seed, "Hex master seed");
    b_coll->add_option("--threads", threads, "Worker threads");
    b_coll->add_flag("--json", json, "Emit JSON");
    unsigned cn = 4, cm = 2, ck = 2;
    auto* b_univ = bench->add_subcommand("universality", "Exhaustive strong-universality census");
    b_univ->add_option("--n", cn, "Item bits");
    b_univ->add_option("--m", cm, "Output bits");
    b_univ->add_option("--k", ck, "Number of inputs");
    b_univ->add_flag("--json", json, "Emit JSON");
    unsigned lm = 8, lroots = 2;
    std::uint64_t linstances = 1000;
    auto* b_lemma = bench->add_subcommand("lemma", "Preimage scans of the fingerprint polynomial");
    b_lemma->add_option("--m", lm, "Field bits (<= 16)");
    b_lemma->add_option("--roots", lroots, "Roots per instance");
    b_lemma->add_option("--instances", linstances, "Random instances");
    b_lemma->add_option("--seed", bench_seed, "Hex seed");
    b_lemma->add_flag("--json", json, "Emit JSON");

    // bridge
    auto* bridge = app.add_subcommand("bridge", "Local JSON bridge for the web UI");
    bridge->require_subcommand(1);
    BridgeOptions bopts;
    std::string static_dir;
    auto* serve = bridge->add_subcommand("serve", "Serve POST /api on loopback");
    serve->add_option("--port", bopts.port, "TCP port");
    serve->add_option("--static", static_dir, "Directory of UI assets to serve at /");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*init) return cmd_init(domains, q, eps, db_path, seed_hex, add_decoy, svg_path);
        if (*check) return cmd_check(check_domain_arg, db_path, svg_path);
        if (*params) return cmd_params(counts, q, eps);
        if (*wl_verify) return cmd_wordlist_verify(wl_file);
        if (*wl_build) return cmd_wordlist_build(wl_base, wl_pool, wl_drop, wl_max_len, wl_target, wl_seed, wl_metric, wl_out);
        if (*b_coll) return cmd_bench_collision(bp, adversary, trials, bench_seed, threads, json);
        if (*b_univ) return cmd_bench_universality(cn, cm, ck, json);
        if (*b_lemma) return cmd_bench_lemma(lm, lroots, linstances, bench_seed, json);
        if (*serve) {
            if (!static_dir.empty()) bopts.static_dir = static_dir;
            return bridge_serve(bopts) ? 0 : kExitError;
        }
    } catch (const Error& e) {
        std::cerr << "error [" << errc_name(e.code()) << "]: " << e.what() << "\n";
        return kExitError;
    }
    return 0;
}
