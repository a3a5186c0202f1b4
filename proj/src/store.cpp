#include "recog/store.hpp"

#include <zlib.h>

#include <fstream>
#include <iterator>
#include <string>

#include "recog/errors.hpp"
#include "recog/random.hpp"

namespace recog {

namespace {

constexpr std::uint8_t kMagic[4] = {'R', 'C', 'G', 'Z'};

void put_be(std::vector<std::uint8_t>& out, std::uint64_t v, int bytes) {
    for (int i = bytes - 1; i >= 0; --i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint64_t get_be(std::span<const std::uint8_t> in, std::size_t off, int bytes) {
    std::uint64_t v = 0;
    for (int i = 0; i < bytes; ++i) v = (v << 8) | in[off + static_cast<std::size_t>(i)];
    return v;
}

}  // namespace

std::uint32_t crc32_of(std::span<const std::uint8_t> bytes) {
    uLong crc = crc32(0L, Z_NULL, 0);
    crc = crc32(crc, bytes.data(), static_cast<uInt>(bytes.size()));
    return static_cast<std::uint32_t>(crc);
}

std::size_t db_file_size(const RecognizerParams& params) {
    return kDbHeaderSize + params.db_size() * ((params.n + 7) / 8) + kDbTrailerSize;
}

std::vector<std::uint8_t> serialize_db(const RecognizerParams& params, const CoeffVector& db) {
    params.validate();
    require(db.n() == params.n && db.size() == params.db_size(), "database does not match parameters");
    require(params.n <= 0xFFFF && params.m <= 0xFF && params.N <= 0xFF && params.q <= 0xFFFF,
            "parameters exceed the file format's field sizes");
    std::vector<std::uint8_t> out(std::begin(kMagic), std::end(kMagic));
    out.reserve(db_file_size(params));
    out.push_back(kDbFormatVersion);
    put_be(out, params.n, 2);
    put_be(out, params.m, 1);
    put_be(out, params.N, 1);
    put_be(out, params.q, 2);
    for (const auto& c : db.coeffs()) {
        const auto bytes = c.to_bytes();
        out.insert(out.end(), bytes.begin(), bytes.end());
    }
    put_be(out, crc32_of(out), 4);
    return out;
}

std::pair<RecognizerParams, CoeffVector> parse_db(std::span<const std::uint8_t> bytes) {
    if (bytes.size() >= 4 && !std::equal(std::begin(kMagic), std::end(kMagic), bytes.begin()))
        throw Error(Errc::not_a_database, "not a recognizer database");
    if (bytes.size() < kDbHeaderSize + kDbTrailerSize) throw Error(Errc::corrupt, "database file is truncated");
    const std::size_t body = bytes.size() - kDbTrailerSize;
    if (crc32_of(bytes.first(body)) != get_be(bytes, body, 4))
        throw Error(Errc::corrupt, "database checksum mismatch");
    if (bytes[4] != kDbFormatVersion)
        throw Error(Errc::unsupported, "unsupported database format version " + std::to_string(bytes[4]));

    RecognizerParams params;
    params.n = static_cast<unsigned>(get_be(bytes, 5, 2));
    params.m = bytes[7];
    params.N = bytes[8];
    params.q = static_cast<unsigned>(get_be(bytes, 9, 2));
    params.validate();
    if (bytes.size() != db_file_size(params)) throw Error(Errc::corrupt, "database length does not match its header");

    const std::size_t width = (params.n + 7) / 8;
    std::vector<FieldElem> coeffs;
    coeffs.reserve(params.db_size());
    for (std::size_t i = 0; i < params.db_size(); ++i) {
        try {
            coeffs.push_back(FieldElem::from_bytes(bytes.subspan(kDbHeaderSize + i * width, width), params.n));
        } catch (const Error&) {
            throw Error(Errc::corrupt, "database coefficient exceeds n bits");
        }
    }
    return {params, CoeffVector(params.n, std::move(coeffs))};
}

void save_db(const RecognizerInstance& inst, const std::filesystem::path& path) {
    save_db(inst.params, inst.db, path);
}

void save_db(const RecognizerParams& params, const CoeffVector& db, const std::filesystem::path& path) {
    const auto bytes = serialize_db(params, db);
    SystemRandom rng;
    auto tmp = path;
    tmp += ".tmp-" + std::to_string(rng.next_u64() & 0xFFFFFFFFULL);
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(Errc::io, "cannot write " + tmp.string());
        out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
        out.flush();
        if (!out) {
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw Error(Errc::io, "write failed for " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw Error(Errc::io, "cannot replace " + path.string() + ": " + ec.message());
    }
}

std::pair<RecognizerParams, CoeffVector> load_db(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::io, "cannot read " + path.string());
    const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_db(bytes);
}

}  // namespace recog
