#include "taxicab/table_io.hpp"

#include <array>
#include <cstring>
#include <fstream>
#include <vector>

namespace taxicab {

namespace {

constexpr std::array<char, 5> kMagic = {'T', 'X', 'C', 'B', '1'};
constexpr std::size_t kHeaderSize = 5 + 1 + 2 + 4 + 8 + 4 + 8;

std::uint64_t fnv1a(const std::uint8_t* data, std::size_t size) {
    std::uint64_t hash = 14695981039346656037ull;
    for (std::size_t i = 0; i < size; ++i) {
        hash ^= data[i];
        hash *= 1099511628211ull;
    }
    return hash;
}

void put_le(std::vector<std::uint8_t>& out, std::uint64_t value, int bytes) {
    for (int i = 0; i < bytes; ++i) out.push_back(std::uint8_t(value >> (8 * i)));
}

std::uint64_t get_le(const std::uint8_t* data, int bytes) {
    std::uint64_t value = 0;
    for (int i = 0; i < bytes; ++i) value |= std::uint64_t(data[i]) << (8 * i);
    return value;
}

} // namespace

void store_table(const CountTable& table, const std::filesystem::path& path) {
    const std::uint64_t n_max = table.n_max();
    const int j_max = table.j_max();
    const bool saturating = table.mode() == TableMode::Saturating;
    const std::size_t cell_bytes = saturating ? 2 : 8;

    // Payload: rows by n, cells by j, little-endian.
    std::vector<std::uint8_t> payload;
    payload.reserve(table.cell_count() * cell_bytes);
    for (std::uint64_t n = 0; n <= n_max; ++n) {
        for (int j = 0; j <= j_max; ++j) {
            put_le(payload, table.at(n, j), int(cell_bytes));
        }
    }

    std::vector<std::uint8_t> header;
    header.reserve(kHeaderSize);
    for (char c : kMagic) header.push_back(std::uint8_t(c));
    put_le(header, saturating ? 1 : 0, 1);
    put_le(header, table.cap(), 2);
    put_le(header, std::uint64_t(table.exponent()), 4);
    put_le(header, n_max, 8);
    put_le(header, std::uint64_t(j_max), 4);
    put_le(header, fnv1a(payload.data(), payload.size()), 8);

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw TableFileError("cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(header.data()), std::streamsize(header.size()));
    out.write(reinterpret_cast<const char*>(payload.data()),
              std::streamsize(payload.size()));
    if (!out) throw TableFileError("write failed: " + path.string());
}

CountTable load_table(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw TableFileError("cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (bytes.size() < kHeaderSize) {
        throw TableFileError("table file truncated (header): " + path.string());
    }
    if (std::memcmp(bytes.data(), kMagic.data(), kMagic.size()) != 0) {
        throw TableFileError("bad magic/version in " + path.string());
    }
    const std::uint8_t* p = bytes.data() + kMagic.size();
    const std::uint64_t mode_raw = get_le(p, 1); p += 1;
    const std::uint32_t cap = std::uint32_t(get_le(p, 2)); p += 2;
    const std::uint32_t k = std::uint32_t(get_le(p, 4)); p += 4;
    const std::uint64_t n_max = get_le(p, 8); p += 8;
    const std::uint32_t j_max = std::uint32_t(get_le(p, 4)); p += 4;
    const std::uint64_t checksum = get_le(p, 8);
    if (mode_raw > 1 || k < 1 || k > 62 || j_max > 100000) {
        throw TableFileError("implausible header in " + path.string());
    }
    const bool saturating = mode_raw == 1;
    const std::size_t cell_bytes = saturating ? 2 : 8;
    const std::uint64_t cells = (n_max + 1) * std::uint64_t(j_max + 1);
    if (n_max != 0 && cells / (n_max + 1) != std::uint64_t(j_max + 1)) {
        throw TableFileError("implausible header in " + path.string());
    }
    if (bytes.size() != kHeaderSize + cells * cell_bytes) {
        throw TableFileError("payload length mismatch in " + path.string());
    }
    const std::uint8_t* payload = bytes.data() + kHeaderSize;
    if (fnv1a(payload, bytes.size() - kHeaderSize) != checksum) {
        throw TableFileError("checksum mismatch in " + path.string());
    }

    std::vector<std::uint16_t> sat_cells;
    std::vector<std::uint64_t> exact_cells;
    const std::size_t width = std::size_t(j_max) + 1;
    if (saturating) {
        sat_cells.resize(cells);
        for (std::uint64_t n = 0; n <= n_max; ++n) {
            for (std::uint32_t j = 0; j <= j_max; ++j) {
                sat_cells[std::size_t(j) * (n_max + 1) + n] =
                    std::uint16_t(get_le(payload + (n * width + j) * cell_bytes, 2));
            }
        }
    } else {
        exact_cells.resize(cells);
        for (std::uint64_t n = 0; n <= n_max; ++n) {
            for (std::uint32_t j = 0; j <= j_max; ++j) {
                exact_cells[std::size_t(j) * (n_max + 1) + n] =
                    get_le(payload + (n * width + j) * cell_bytes, 8);
            }
        }
    }
    return CountTable::from_cells(int(k), n_max, int(j_max),
                                  saturating ? TableMode::Saturating : TableMode::Exact,
                                  cap, std::move(sat_cells), std::move(exact_cells));
}

CountTable load_table_checked(const std::filesystem::path& path, int k, TableMode mode,
                              std::uint32_t cap) {
    CountTable table = load_table(path);
    if (table.exponent() != k || table.mode() != mode || table.cap() != cap) {
        throw TableFileError("table identity mismatch in " + path.string() +
                             " (mode and cap are part of a table's identity)");
    }
    return table;
}

} // namespace taxicab
