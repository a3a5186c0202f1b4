#include <filesystem>
#include <fstream>
#include <unistd.h>
#include <zlib.h>

#include "doctest.h"
#include "recog/errors.hpp"
#include "recog/store.hpp"

using namespace recog;
namespace fs = std::filesystem;

namespace {

ItemSet random_items(unsigned N, RandomSource& rng) {
    std::vector<FieldElem> v;
    while (v.size() < N) {
        std::vector<std::uint8_t> b(32);
        rng.fill(b);
        auto x = FieldElem::from_bytes(b, 256);
        if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
    }
    return ItemSet(v);
}

std::vector<std::uint8_t> read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void fix_crc(std::vector<std::uint8_t>& bytes) {
    const std::size_t body = bytes.size() - 4;
    const auto c = static_cast<std::uint32_t>(::crc32(0L, bytes.data(), static_cast<uInt>(body)));
    for (int i = 0; i < 4; ++i) bytes[body + static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(c >> (24 - 8 * i));
}

Errc parse_error(const std::vector<std::uint8_t>& bytes) {
    try {
        (void)parse_db(bytes);
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return Errc::contract_violation;
}

struct TempDir {
    fs::path path = fs::temp_directory_path() / ("recog-store-" + std::to_string(::getpid()));
    TempDir() { fs::create_directories(path); }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("file size follows the layout") {
    CHECK(db_file_size({256, 4, 100, 21}) == 11 + 104 * 32 + 4);
    CHECK(db_file_size({256, 4, 100, 21}) == 3343);
    CHECK(db_file_size({256, 5, 100, 21}) == 3375);
    CHECK(db_file_size({256, 2, 100, 21}) < 5120);
}

TEST_CASE("header bytes") {
    SeededRandom rng(83);
    const RecognizerParams p{256, 3, 100, 21};
    const auto inst = rec_init(random_items(3, rng), p, rng);
    const auto bytes = serialize_db(p, inst.db);
    REQUIRE(bytes.size() == db_file_size(p));
    const std::vector<std::uint8_t> header = {'R', 'C', 'G', 'Z', 1, 0x01, 0x00, 21, 3, 0x00, 100};
    CHECK(std::equal(header.begin(), header.end(), bytes.begin()));
    const auto first = inst.db[0].to_bytes();
    CHECK(std::equal(first.begin(), first.end(), bytes.begin() + 11));
    const std::uint32_t c = static_cast<std::uint32_t>(::crc32(0L, bytes.data(), static_cast<uInt>(bytes.size() - 4)));
    CHECK(bytes[bytes.size() - 4] == (c >> 24));
    CHECK(bytes[bytes.size() - 1] == (c & 0xff));
}

TEST_CASE("save and load round-trip") {
    TempDir dir;
    SeededRandom rng(89);
    for (unsigned N = 2; N <= 5; ++N) {
        const RecognizerParams p{256, N, 100, 21};
        const auto inst = rec_init(random_items(N, rng), p, rng);
        const auto path = dir.path / "r.db";
        save_db(inst, path);
        CHECK(fs::file_size(path) == db_file_size(p));
        const auto [lp, ldb] = load_db(path);
        CHECK(lp == p);
        CHECK(ldb == inst.db);
        CHECK(serialize_db(lp, ldb) == read_file(path));
    }
    CHECK(std::distance(fs::directory_iterator(dir.path), fs::directory_iterator()) == 1);
}

TEST_CASE("the file never contains a stored item") {
    SeededRandom rng(97);
    for (int t = 0; t < 100; ++t) {
        const RecognizerParams p{256, 2 + static_cast<unsigned>(t % 4), 100, 21};
        const auto items = random_items(p.N, rng);
        const auto inst = rec_init(items, p, rng);
        const auto bytes = serialize_db(p, inst.db);
        for (const auto& x : items.items()) {
            const auto needle = x.to_bytes();
            REQUIRE(std::search(bytes.begin(), bytes.end(), needle.begin(), needle.end()) == bytes.end());
        }
    }
}

TEST_CASE("load rejects damaged files") {
    SeededRandom rng(101);
    const RecognizerParams p{256, 2, 100, 21};
    const auto inst = rec_init(random_items(2, rng), p, rng);
    const auto good = serialize_db(p, inst.db);

    auto flipped = good;
    flipped[500] ^= 0x10;
    CHECK(parse_error(flipped) == Errc::corrupt);

    auto magic = good;
    magic[0] = 'X';
    CHECK(parse_error(magic) == Errc::not_a_database);

    CHECK(parse_error(std::vector<std::uint8_t>(good.begin(), good.begin() + 9)) == Errc::corrupt);
    auto truncated = std::vector<std::uint8_t>(good.begin(), good.end() - 40);
    fix_crc(truncated);
    CHECK(parse_error(truncated) == Errc::corrupt);

    auto one_item = good;
    one_item[8] = 1;
    fix_crc(one_item);
    CHECK(parse_error(one_item) == Errc::invalid_params);

    auto version = good;
    version[4] = 2;
    fix_crc(version);
    CHECK(parse_error(version) == Errc::unsupported);

    const RecognizerParams small{12, 2, 1, 3};
    auto narrow = serialize_db(small, sample_coeffs(12, 3, rng));
    narrow[11] |= 0xf0;  // bits above n = 12
    fix_crc(narrow);
    CHECK(parse_error(narrow) == Errc::corrupt);

    CHECK_THROWS_AS((void)load_db("/nonexistent/dir/r.db"), Error);
}
