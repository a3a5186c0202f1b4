#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace recog {

/// JSON message handlers behind `bridge serve`. Requests carry "type"
/// ("init" | "check" | "validate") and an optional "id" that is echoed.
///
///   init     {domains: [..], q?, eps?, seed?}
///         -> initResult {dbBase64, passphraseWords, fingerprintHex, sceneJson, svg}
///   check    {dbBase64, passphrase, domain}
///         -> checkResult {fingerprintHex, sceneJson, svg, wordStatus}
///   validate {partial}
///         -> validateResult {wordStatus, pending, complete}
///
/// Failures produce {type: "error", code, message, position?}. The
/// passphrase is never echoed back.
nlohmann::json bridge_handle(const nlohmann::json& request);

nlohmann::json bridge_init(const nlohmann::json& request);
nlohmann::json bridge_check(const nlohmann::json& request);
nlohmann::json bridge_validate(const nlohmann::json& request);

std::string base64_encode(std::span<const std::uint8_t> data);
/// Throws Errc::corrupt on malformed input.
std::vector<std::uint8_t> base64_decode(std::string_view text);

struct BridgeOptions {
    std::string host = "127.0.0.1";
    int port = 8765;  // 0 picks a free port
    std::optional<std::string> static_dir;
    /// Called once the socket is bound, with the port and a function that
    /// stops the server from another thread.
    std::function<void(int port, std::function<void()> stop)> on_listen;
};

/// Serves POST /api with bridge_handle until stopped. Returns false if the
/// socket could not be bound.
bool bridge_serve(const BridgeOptions& options);

}  // namespace recog
