#pragma once

#include <filesystem>
#include <optional>

#include "taxicab/partition.hpp"

namespace taxicab {

// Binary count-table files ("TXCB1"): a fixed little-endian header carrying
// the table identity (k, sizes, mode, cap) and an FNV-1a checksum over the
// row-major payload. A loaded table is cell-identical to a freshly built one
// or it is rejected; corruption never passes silently.

void store_table(const CountTable& table, const std::filesystem::path& path);

/// Loads and fully validates a table file. Throws TableFileError on bad
/// magic, truncation, trailing bytes, or checksum mismatch.
CountTable load_table(const std::filesystem::path& path);

/// Loads only when the file's identity matches the requested one (mode and
/// cap are part of a table's identity). Throws TableFileError on mismatch.
CountTable load_table_checked(const std::filesystem::path& path, int k, TableMode mode,
                              std::uint32_t cap);

} // namespace taxicab
