#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "taxicab/squares.hpp"

#include <set>

using namespace taxicab;

TEST_CASE("membership: worked examples") {
    CHECK(is_sum_of_j_squares(22, 9) == false);
    CHECK(is_sum_of_j_squares(23, 9) == true);
    CHECK(is_sum_of_j_squares(33, 5) == false);
    CHECK(is_sum_of_j_squares(384, 4) == false);
    CHECK(is_sum_of_j_squares(4, 4) == true);
    CHECK(is_sum_of_j_squares(9, 9) == true);
}

TEST_CASE("the nine-square failures are exactly the listed ones") {
    const std::set<std::uint64_t> expected = {1, 2,  3,  4,  5,  6,  7, 8,
                                              10, 11, 13, 14, 16, 19, 22};
    for (std::uint64_t n = 1; n <= 200; ++n) {
        CHECK(is_sum_of_j_squares(n, 9) == (expected.count(n) == 0));
    }
}

TEST_CASE("membership agrees with counting") {
    // Unit-scale audit; the acceptance suite runs the full one.
    const auto table = CountTable::build_saturating(2, 400, 12, 3);
    for (std::uint64_t n = 1; n <= 400; ++n) {
        for (int j = 1; j <= 12; ++j) {
            CHECK(is_sum_of_j_squares(n, j) == (table.at(n, j) >= 1));
        }
    }
}

TEST_CASE("four-square exceptions reproduce the catalogued prefix") {
    const std::vector<std::uint64_t> prefix = {1,  2,  3,  5,   6,   8,   9,
                                               11, 14, 17, 24,  29,  32,  41,
                                               56, 96, 128, 224, 384, 512, 896};
    CHECK(four_square_exceptions_between(0, 1000) == prefix);
    // Against counting.
    const auto table = CountTable::build_saturating(2, 2000, 4, 2);
    for (std::uint64_t n = 1; n <= 2000; ++n) {
        CHECK(is_four_square_exception(n) == (table.at(n, 4) == 0));
    }
}

TEST_CASE("past the search ceiling every count clears m") {
    // Desk-scale audit of the guarantee the ceiling formula promises.
    const auto table = CountTable::build_saturating(2, 2700, 8, 5);
    for (int j : {7, 8}) {
        for (std::uint32_t m : {2u, 3u}) {
            const auto bound = square_search_bound(m, j);
            for (std::uint64_t n = bound.value + 1; n <= bound.value + 500; ++n) {
                CHECK(table.at(n, j) >= m + 1);
            }
        }
    }
}

TEST_CASE("family census matches the full exception scan in a window") {
    const auto families = four_square_exception_families_between(2000, 921681);
    const auto all = four_square_exceptions_between(2000, 921681);
    CHECK(families == all); // sporadic exceptions end below 42
    CHECK(families.size() == 14);
}

TEST_CASE("search bound: formula and hypotheses") {
    const auto b11 = square_search_bound(3, 11);
    CHECK(b11.value == 3364);
    CHECK(b11.provenance == Provenance::Certified);

    const auto b6 = square_search_bound(36, 6);
    CHECK(b6.value == 55696);
    CHECK(b6.provenance == Provenance::HypothesisExtended);

    const auto b7 = square_search_bound(44, 7);
    CHECK(b7.value == 108241); // the formula value, above the printed one

    CHECK_THROWS_AS(square_search_bound(1, 8), ConfigError);
    CHECK_THROWS_AS(square_search_bound(3, 4), ConfigError);
}

TEST_CASE("pigeonhole lower bound: worked examples") {
    CHECK(pigeonhole_lower_bound(984, 10).value >= 4);
    CHECK(pigeonhole_lower_bound(4, 5).value == 0);
    const auto fifty = pigeonhole_lower_bound(50, 10);
    CHECK(fifty.value >= 1);
    CHECK(fifty.value <= 4);
    CHECK_THROWS_AS(pigeonhole_lower_bound(50, 4), ConfigError);
}

TEST_CASE("pigeonhole lower bound never exceeds the true count") {
    const auto table = CountTable::build_saturating(2, 1000, 10, 600);
    for (std::uint64_t n = 1; n <= 1000; ++n) {
        for (int j = 5; j <= 10; ++j) {
            CHECK(pigeonhole_lower_bound(n, j).value <= table.at(n, j));
        }
    }
}

TEST_CASE("five-square tail constants re-verify") {
    const auto tail = five_square_tail_threshold();
    CHECK(tail.threshold == 921681);
    CHECK(tail.guaranteed_ways == 189);
}

TEST_CASE("five-square tail window census by brute force") {
    // Every non-representable value in the window is a family member.
    const auto tail = five_square_tail_threshold();
    const std::uint64_t lo = tail.threshold - 919681;
    std::uint64_t bad = 0;
    for (std::uint64_t n = lo + 1; n <= tail.threshold; ++n) {
        if (!is_sum_of_j_squares(n, 4)) ++bad;
    }
    CHECK(bad == four_square_exception_families_between(lo, tail.threshold).size());
    CHECK(bad <= 21);
}
