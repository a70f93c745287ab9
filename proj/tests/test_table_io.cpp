#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "taxicab/table_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace taxicab;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("taxicab-test-" + std::to_string(std::rand()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

void check_identical(const CountTable& a, const CountTable& b) {
    REQUIRE(a.exponent() == b.exponent());
    REQUIRE(a.n_max() == b.n_max());
    REQUIRE(a.j_max() == b.j_max());
    REQUIRE(a.mode() == b.mode());
    REQUIRE(a.cap() == b.cap());
    for (std::uint64_t n = 0; n <= a.n_max(); ++n) {
        for (int j = 0; j <= a.j_max(); ++j) {
            REQUIRE(a.at(n, j) == b.at(n, j));
        }
    }
}

} // namespace

TEST_CASE("store/load round trip is cell-identical") {
    TempDir dir;
    const auto sat = CountTable::build_saturating(2, 1000, 6, 40);
    const auto file = dir.path / "sat.txcb";
    store_table(sat, file);
    check_identical(sat, load_table(file));
    check_identical(sat, load_table_checked(file, 2, TableMode::Saturating, 40));

    const auto exact = CountTable::build_exact(3, 300, 5);
    const auto efile = dir.path / "exact.txcb";
    store_table(exact, efile);
    check_identical(exact, load_table(efile));
}

TEST_CASE("truncated files are rejected") {
    TempDir dir;
    const auto table = CountTable::build_saturating(2, 200, 4, 10);
    const auto file = dir.path / "t.txcb";
    store_table(table, file);
    const auto size = std::filesystem::file_size(file);
    std::filesystem::resize_file(file, size - 7);
    CHECK_THROWS_AS(load_table(file), TableFileError);
    std::filesystem::resize_file(file, 3); // not even a header
    CHECK_THROWS_AS(load_table(file), TableFileError);
}

TEST_CASE("corrupted payload fails the checksum") {
    TempDir dir;
    const auto table = CountTable::build_saturating(2, 200, 4, 10);
    const auto file = dir.path / "c.txcb";
    store_table(table, file);
    {
        std::fstream f(file, std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(100);
        const char byte = 0x5a;
        f.write(&byte, 1);
    }
    CHECK_THROWS_AS(load_table(file), TableFileError);
}

TEST_CASE("foreign magic and identity mismatches are rejected") {
    TempDir dir;
    const auto file = dir.path / "m.txcb";
    {
        std::ofstream f(file, std::ios::binary);
        f << "NOTME-definitely-not-a-table";
    }
    CHECK_THROWS_AS(load_table(file), TableFileError);

    const auto table = CountTable::build_saturating(2, 100, 4, 10);
    const auto good = dir.path / "good.txcb";
    store_table(table, good);
    CHECK_THROWS_AS(load_table_checked(good, 2, TableMode::Saturating, 11),
                    TableFileError);
    CHECK_THROWS_AS(load_table_checked(good, 3, TableMode::Saturating, 10),
                    TableFileError);
    CHECK_THROWS_AS(load_table_checked(good, 2, TableMode::Exact, 10), TableFileError);
}

TEST_CASE("trailing bytes are rejected") {
    TempDir dir;
    const auto table = CountTable::build_saturating(2, 50, 3, 5);
    const auto file = dir.path / "x.txcb";
    store_table(table, file);
    {
        std::ofstream f(file, std::ios::binary | std::ios::app);
        f << "junk";
    }
    CHECK_THROWS_AS(load_table(file), TableFileError);
}
