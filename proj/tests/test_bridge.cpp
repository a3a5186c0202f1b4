#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <unistd.h>
#include <future>
#include <random>
#include <sstream>
#include <thread>

#include "doctest.h"
#include "httplib.h"
#include "oracles.hpp"
#include "recog/bridge.hpp"
#include "recog/errors.hpp"
#include "recog/passcode.hpp"
#include "recog/store.hpp"

using namespace recog;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::vector<std::string> domains(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 g(seed);
    std::vector<std::string> out;
    for (std::size_t i = 0; i < count; ++i) {
        std::array<std::uint8_t, 32> k{};
        for (auto& b : k) b = static_cast<std::uint8_t>(g());
        out.push_back(oracle::onion_of(k));
    }
    return out;
}

std::string join(const json& words) {
    std::string s;
    for (const auto& w : words) s += (s.empty() ? "" : "-") + w.get<std::string>();
    return s;
}

}  // namespace

TEST_CASE("base64 round trip") {
    std::mt19937_64 g(127);
    for (std::size_t len = 0; len < 50; ++len) {
        std::vector<std::uint8_t> d(len);
        for (auto& b : d) b = static_cast<std::uint8_t>(g());
        CHECK(base64_decode(base64_encode(d)) == d);
    }
    CHECK(base64_encode(std::vector<std::uint8_t>{'f', 'o', 'o', 'b'}) == "Zm9vYg==");
    CHECK_THROWS_AS((void)base64_decode("abc"), Error);
    CHECK_THROWS_AS((void)base64_decode("a$c="), Error);
}

TEST_CASE("init and check messages") {
    const auto ds = domains(2, 131);
    const json init = bridge_handle({{"type", "init"}, {"domains", ds}, {"id", 7}});
    REQUIRE(init["type"] == "initResult");
    CHECK(init["id"] == 7);
    CHECK(init["passphraseWords"].size() == 2);
    const auto bytes = base64_decode(init["dbBase64"].get<std::string>());
    const auto [params, db] = parse_db(bytes);
    CHECK(params.N == 2);
    CHECK(params.m == 21);

    const std::string phrase = join(init["passphraseWords"]);
    for (const auto& d : ds) {
        const json check =
            bridge_handle({{"type", "check"}, {"dbBase64", init["dbBase64"]}, {"passphrase", phrase}, {"domain", d}});
        REQUIRE(check["type"] == "checkResult");
        CHECK(check["fingerprintHex"] == init["fingerprintHex"]);
        CHECK(check["svg"] == init["svg"]);
        CHECK(check["sceneJson"] == init["sceneJson"]);
        CHECK(check.dump().find(phrase) == std::string::npos);
        CHECK(check["wordStatus"].size() == 2);
    }
}

TEST_CASE("check reports typos with a suggestion and never judges a decodable passphrase") {
    const auto ds = domains(3, 137);
    const json init = bridge_handle({{"type", "init"}, {"domains", ds}});
    auto words = init["passphraseWords"].get<std::vector<std::string>>();
    std::string typo = words[2];
    typo[typo.size() - 1] = typo.back() == 'q' ? 'x' : 'q';
    REQUIRE_FALSE(Wordlist::shipped().index_of(typo));
    auto bad = words;
    bad[2] = typo;
    const json err = bridge_handle(
        {{"type", "check"}, {"dbBase64", init["dbBase64"]}, {"passphrase", join(bad)}, {"domain", ds[0]}});
    CHECK(err["type"] == "error");
    CHECK(err["code"] == "unknown-word");
    CHECK(err["position"] == 2);
    CHECK(err["wordStatus"][2]["verdict"] == "unknown-with-suggestion");
    CHECK(err["wordStatus"][2]["suggestion"] == words[2]);

    // A different but valid passphrase still yields a fingerprint.
    auto other = words;
    other[0] = Wordlist::shipped()[(*Wordlist::shipped().index_of(words[0]) + 1) % 1449];
    const json wrong = bridge_handle(
        {{"type", "check"}, {"dbBase64", init["dbBase64"]}, {"passphrase", join(other)}, {"domain", ds[0]}});
    CHECK(wrong["type"] == "checkResult");
    CHECK(wrong["fingerprintHex"].get<std::string>().size() == 6);
}

TEST_CASE("bridge errors") {
    const auto ds = domains(2, 139);
    auto e = bridge_handle({{"type", "init"}, {"domains", {ds[0]}}});
    CHECK(e["type"] == "error");
    CHECK(e["code"] == "invalid-parameters");

    e = bridge_handle({{"type", "init"}, {"domains", {ds[0], ds[0]}}});
    CHECK(e["code"] == "not-distinct");
    CHECK(e["position"] == 1);

    e = bridge_handle({{"type", "init"}, {"domains", {ds[0], "abc"}}});
    CHECK(e["code"] == "onion-length");
    CHECK(e["position"] == 1);

    const json init = bridge_handle({{"type", "init"}, {"domains", ds}});
    auto bytes = base64_decode(init["dbBase64"].get<std::string>());
    bytes[100] ^= 1;
    e = bridge_handle({{"type", "check"},
                       {"dbBase64", base64_encode(bytes)},
                       {"passphrase", join(init["passphraseWords"])},
                       {"domain", ds[0]}});
    CHECK(e["code"] == "corrupt");

    CHECK(bridge_handle({{"type", "dance"}})["type"] == "error");
    CHECK(bridge_handle({{"type", "check"}})["type"] == "error");
    CHECK(bridge_handle({{"type", "init"}, {"domains", 5}})["type"] == "error");
}

TEST_CASE("validate message") {
    const auto& list = Wordlist::shipped();
    const json r = bridge_handle({{"type", "validate"}, {"partial", list[1] + "-zzzzzz-" + list[2].substr(0, 1)}});
    CHECK(r["type"] == "validateResult");
    CHECK(r["wordStatus"].size() == 2);
    CHECK(r["wordStatus"][0]["verdict"] == "accepted");
    CHECK(r["wordStatus"][1]["verdict"] == "unknown");
    CHECK(r["pending"] == list[2].substr(0, 1));
    CHECK(r["complete"] == false);
}

TEST_CASE("seeded init matches the command line byte for byte") {
    const auto ds = domains(2, 149);
    const json init = bridge_handle({{"type", "init"}, {"domains", ds}, {"seed", "c0ffee"}});
    REQUIRE(init["type"] == "initResult");

    const fs::path dir = fs::temp_directory_path() / ("recog-bridge-" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const fs::path db = dir / "p.db";
    const std::string cmd = std::string(RECOG_CLI) + " init --domain " + ds[0] + " --domain " + ds[1] +
                            " --seed c0ffee --db " + db.string() + " > " + (dir / "out.txt").string() + " 2>/dev/null";
    REQUIRE(std::system(cmd.c_str()) == 0);
    std::ifstream svg(dir / "p.fingerprint.svg");
    std::stringstream s;
    s << svg.rdbuf();
    CHECK(s.str() == init["svg"].get<std::string>());
    std::ifstream dbf(db, std::ios::binary);
    const std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(dbf), std::istreambuf_iterator<char>()};
    CHECK(base64_encode(bytes) == init["dbBase64"].get<std::string>());
    std::ifstream out(dir / "out.txt");
    std::stringstream o;
    o << out.rdbuf();
    CHECK(o.str().find(join(init["passphraseWords"])) != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("loopback http") {
    std::promise<std::pair<int, std::function<void()>>> ready;
    BridgeOptions opts;
    opts.port = 0;
    opts.on_listen = [&](int port, std::function<void()> stop) { ready.set_value({port, std::move(stop)}); };
    std::thread server([&] { bridge_serve(opts); });
    auto [port, stop] = ready.get_future().get();

    httplib::Client client("127.0.0.1", port);
    const auto ds = domains(2, 151);
    auto res = client.Post("/api", json{{"type", "init"}, {"domains", ds}}.dump(), "application/json");
    REQUIRE(res);
    CHECK(res->status == 200);
    const auto init = json::parse(res->body);
    CHECK(init["type"] == "initResult");

    res = client.Post("/api",
                      json{{"type", "check"},
                           {"dbBase64", init["dbBase64"]},
                           {"passphrase", join(init["passphraseWords"])},
                           {"domain", ds[1]}}
                          .dump(),
                      "application/json");
    REQUIRE(res);
    CHECK(json::parse(res->body)["fingerprintHex"] == init["fingerprintHex"]);

    res = client.Post("/api", "{not json", "application/json");
    REQUIRE(res);
    CHECK(res->status == 400);

    stop();
    server.join();
}
