#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <utility>
#include <vector>

#include "recog/recognizer.hpp"
#include "recog/uhash.hpp"

namespace recog {

/// Database file layout, all integers big-endian:
///
///   offset  size  field
///   0       4     magic "RCGZ"
///   4       1     format version (1)
///   5       2     n
///   7       1     m
///   8       1     N
///   9       2     q
///   11      k*B   coefficients a_0..a_{k-1}, k = q + N, B = ceil(n / 8)
///   11+k*B  4     CRC-32 of all preceding bytes
///
/// Only the public coefficients are stored; key and fingerprint never are.
inline constexpr std::uint8_t kDbFormatVersion = 1;
inline constexpr std::size_t kDbHeaderSize = 11;
inline constexpr std::size_t kDbTrailerSize = 4;

std::size_t db_file_size(const RecognizerParams& params);

std::vector<std::uint8_t> serialize_db(const RecognizerParams& params, const CoeffVector& db);
std::pair<RecognizerParams, CoeffVector> parse_db(std::span<const std::uint8_t> bytes);

/// Writes to a temporary sibling and renames it over `path`.
void save_db(const RecognizerInstance& inst, const std::filesystem::path& path);
void save_db(const RecognizerParams& params, const CoeffVector& db, const std::filesystem::path& path);

std::pair<RecognizerParams, CoeffVector> load_db(const std::filesystem::path& path);

std::uint32_t crc32_of(std::span<const std::uint8_t> bytes);

}  // namespace recog
