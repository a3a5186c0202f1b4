#include "recog/bridge.hpp"

#include <openssl/evp.h>

#include <iostream>

#include "httplib.h"
#include "recog/errors.hpp"
#include "recog/flow.hpp"
#include "recog/passcode.hpp"
#include "recog/random.hpp"
#include "recog/store.hpp"

namespace recog {

using nlohmann::json;

namespace {

json error_json(Errc code, const std::string& message, std::optional<std::size_t> position = std::nullopt) {
    json j = {{"type", "error"}, {"code", errc_name(code)}, {"message", message}};
    if (position) j["position"] = *position;
    return j;
}

json word_status_json(const std::vector<WordStatus>& words) {
    // Words themselves are not echoed; only their verdicts.
    json arr = json::array();
    for (std::size_t i = 0; i < words.size(); ++i) {
        const auto& w = words[i];
        json j = {{"index", i}, {"verdict", verdict_name(w.verdict)}};
        if (w.suggestion) j["suggestion"] = *w.suggestion;
        arr.push_back(std::move(j));
    }
    return arr;
}

std::vector<std::string> split_words(const std::string& phrase) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto dash = phrase.find('-', start);
        out.push_back(phrase.substr(start, dash == std::string::npos ? std::string::npos : dash - start));
        if (dash == std::string::npos) return out;
        start = dash + 1;
    }
}

}  // namespace

std::string base64_encode(std::span<const std::uint8_t> data) {
    std::string out(4 * ((data.size() + 2) / 3), '\0');
    const int n = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()), data.data(), static_cast<int>(data.size()));
    out.resize(static_cast<std::size_t>(n));
    return out;
}

std::vector<std::uint8_t> base64_decode(std::string_view text) {
    if (text.size() % 4 != 0) throw Error(Errc::corrupt, "malformed base64");
    std::vector<std::uint8_t> out(3 * (text.size() / 4));
    const int n = EVP_DecodeBlock(out.data(), reinterpret_cast<const unsigned char*>(text.data()),
                                  static_cast<int>(text.size()));
    if (n < 0) throw Error(Errc::corrupt, "malformed base64");
    std::size_t pad = 0;
    if (!text.empty() && text.back() == '=') ++pad;
    if (text.size() >= 2 && text[text.size() - 2] == '=') ++pad;
    out.resize(static_cast<std::size_t>(n) - pad);
    return out;
}

json bridge_init(const json& request) {
    if (!request.contains("domains") || !request["domains"].is_array())
        return error_json(Errc::contract_violation, "init needs a domains array");
    const auto domains = request["domains"].get<std::vector<std::string>>();
    const unsigned q = request.value("q", kDefaultQ);
    const double eps = request.value("eps", kDefaultEpsilon);

    std::unique_ptr<RandomSource> rng;
    if (request.contains("seed")) rng = std::make_unique<SeededRandom>(parse_seed_hex(request["seed"].get<std::string>()));
    else rng = std::make_unique<SystemRandom>();

    const auto out = init_from_domains(domains, q, eps, *rng);
    const auto bytes = serialize_db(out.instance.params, out.instance.db);
    return {
        {"type", "initResult"},
        {"dbBase64", base64_encode(bytes)},
        {"passphraseWords", split_words(out.passphrase)},
        {"fingerprintHex", out.instance.fingerprint.value.to_hex()},
        {"sceneJson", scene_json(out.scene)},
        {"svg", out.svg},
    };
}

json bridge_validate(const json& request) {
    const std::string partial = request.value("partial", std::string());
    const auto status = validate_entry(partial, Wordlist::shipped(), request.value("final", false));
    return {{"type", "validateResult"},
            {"wordStatus", word_status_json(status.words)},
            {"pending", status.pending},
            {"complete", status.complete}};
}

json bridge_check(const json& request) {
    for (const char* field : {"dbBase64", "passphrase", "domain"})
        if (!request.contains(field) || !request[field].is_string())
            return error_json(Errc::contract_violation, std::string("check needs a string field ") + field);
    const auto [params, db] = parse_db(base64_decode(request["dbBase64"].get<std::string>()));
    const std::string passphrase = request["passphrase"].get<std::string>();

    const auto status = validate_entry(passphrase, Wordlist::shipped(), true);
    for (std::size_t i = 0; i < status.words.size(); ++i) {
        if (status.words[i].verdict == WordVerdict::accepted) continue;
        json err = error_json(Errc::unknown_word, "word " + std::to_string(i) + " is not in the wordlist", i);
        err["wordStatus"] = word_status_json(status.words);
        return err;
    }
    const Key key = decode_key(passphrase, params.N, params.m);
    const auto out = check_domain(params, db, key, request["domain"].get<std::string>());
    return {
        {"type", "checkResult"},
        {"fingerprintHex", out.fingerprint.value.to_hex()},
        {"sceneJson", scene_json(out.scene)},
        {"svg", out.svg},
        {"wordStatus", word_status_json(status.words)},
    };
}

json bridge_handle(const json& request) {
    json response;
    try {
        const std::string type = request.value("type", std::string());
        if (type == "init") response = bridge_init(request);
        else if (type == "check") response = bridge_check(request);
        else if (type == "validate") response = bridge_validate(request);
        else response = error_json(Errc::contract_violation, "unknown request type '" + type + "'");
    } catch (const Error& e) {
        response = error_json(e.code(), e.what(), e.position());
    } catch (const json::exception& e) {
        response = error_json(Errc::contract_violation, std::string("malformed request: ") + e.what());
    }
    if (request.is_object() && request.contains("id")) response["id"] = request["id"];
    return response;
}

bool bridge_serve(const BridgeOptions& options) {
    httplib::Server server;
    server.Post("/api", [](const httplib::Request& req, httplib::Response& res) {
        json request;
        try {
            request = json::parse(req.body);
        } catch (const json::exception&) {
            res.status = 400;
            res.set_content(error_json(Errc::contract_violation, "request body is not JSON").dump(), "application/json");
            return;
        }
        res.set_content(bridge_handle(request).dump(), "application/json");
    });
    if (options.static_dir && !server.set_mount_point("/", *options.static_dir)) return false;
    int port = options.port;
    if (port == 0) port = server.bind_to_any_port(options.host);
    else if (!server.bind_to_port(options.host, port)) port = -1;
    if (port <= 0) return false;
    if (options.on_listen) options.on_listen(port, [&server] { server.stop(); });
    else std::cerr << "bridge listening on http://" << options.host << ":" << port << "/api\n";
    return server.listen_after_bind();
}

}  // namespace recog
