#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "taxicab/partition.hpp"

#include <random>

using namespace taxicab;

namespace {

std::uint64_t exact(const Count& c) {
    REQUIRE(!c.saturated());
    return c.value;
}

std::uint64_t pw(std::uint64_t b, int k) { return pow_checked(b, k); }

} // namespace

TEST_CASE("kth_root_floor brackets the argument") {
    std::mt19937_64 rng(7);
    for (int k = 1; k <= 6; ++k) {
        for (int i = 0; i < 2000; ++i) {
            const std::uint64_t n = rng() >> (i % 40);
            const std::uint64_t r = kth_root_floor(n, k);
            if (n == 0) {
                CHECK(r == 0);
                continue;
            }
            CHECK(pw(r, k) <= n);
            // (r+1)^k > n, allowing for the power to overflow
            bool bigger = true;
            try {
                bigger = pw(r + 1, k) > n;
            } catch (const ArithmeticOverflowError&) {
            }
            CHECK(bigger);
        }
    }
    CHECK(kth_root_floor(919681, 2) == 959);
    CHECK(kth_root_floor(1729, 3) == 12);
    CHECK(is_perfect_power(635318657, 4) == false);
    CHECK(is_perfect_power(1u << 20, 4) == true);
}

TEST_CASE("count matches the worked examples") {
    CHECK(exact(count({2, 50, 2, {}})) == 2);
    CHECK(exact(count({2, 50, 2, 25})) == 1);
    CHECK(exact(count({2, 4, 4, {}})) == 1);
    CHECK(exact(count({2, 50, 10, {}})) == 4);
    CHECK(exact(count({1, 4, 2, {}})) == 2);
    CHECK(exact(count({3, 1729, 2, {}})) == 2);
}

TEST_CASE("count boundary conventions") {
    for (int k = 1; k <= 3; ++k) {
        CHECK(exact(count({k, 0, 0, {}})) == 1);
        CHECK(exact(count({k, 5, 0, {}})) == 0);
        for (std::uint64_t n = 1; n <= 40; ++n) {
            CHECK(exact(count({k, n, 1, {}})) == (is_perfect_power(n, k) ? 1 : 0));
            for (int j = int(n) + 1; j <= int(n) + 3; ++j) {
                CHECK(exact(count({k, n, j, {}})) == 0);
            }
        }
    }
}

TEST_CASE("counter memo is reused across queries") {
    Counter c(2);
    const auto first = c.count(50, 10);
    const auto second = c.count(50, 10);
    CHECK(first.value == second.value);
    CHECK(c.count(49, 9).value == 3);
}

TEST_CASE("two-part counting handles catalogued large totals") {
    Counter cubes(3);
    CHECK(cubes.count(6963472309248, 2).value == 4);
    CHECK(cubes.count(48988659276962496ull, 2).value == 5);
    Counter quartics(4);
    CHECK(quartics.count(635318657, 2).value == 2);
}

TEST_CASE("representations: worked examples") {
    const auto reps = representations({2, 20, 5, {}});
    REQUIRE(reps.size() == 2);
    CHECK(reps.parts[0] == std::vector<std::uint64_t>{1, 1, 1, 1, 4});
    CHECK(reps.parts[1] == std::vector<std::uint64_t>{2, 2, 2, 2, 2});

    CHECK(representations({2, 3, 2, {}}).size() == 0);

    // Two ways as a sum of two fourth powers; the pair loop is tiny.
    const auto quartic = representations({4, 635318657, 2, {}});
    REQUIRE(quartic.size() == 2);
    CHECK(quartic.parts[0] == std::vector<std::uint64_t>{59, 158});
    CHECK(quartic.parts[1] == std::vector<std::uint64_t>{133, 134});
}

TEST_CASE("representations are nondecreasing, distinct, lexicographic") {
    const auto reps = representations({2, 60, 6, {}});
    for (std::size_t i = 0; i < reps.size(); ++i) {
        const auto& r = reps.parts[i];
        REQUIRE(r.size() == 6);
        std::uint64_t sum = 0;
        for (std::size_t p = 0; p + 1 < r.size(); ++p) CHECK(r[p] <= r[p + 1]);
        for (std::uint64_t b : r) sum += b * b;
        CHECK(sum == 60);
        if (i > 0) CHECK(reps.parts[i - 1] < r);
    }
    CHECK(reps.size() == exact(count({2, 60, 6, {}})));
}

TEST_CASE("representations honor the step budget") {
    CHECK_THROWS_AS(representations({1, 300, 30, {}}, 10), StepBudgetError);
}

TEST_CASE("count table matches the worked examples") {
    const auto t = CountTable::build_saturating(2, 50, 10, 100);
    CHECK(t.at(49, 9) == 3);
    CHECK(t.at(50, 10) == 4);
    CHECK(t.at(2, 2) == 1);
    CHECK(t.at(0, 0) == 1);
    CHECK(t.at(3, 0) == 0);
}

TEST_CASE("oracle agreement: table == enumeration == series") {
    for (int k = 1; k <= 3; ++k) {
        const std::uint64_t n_max = 45;
        const int j_max = 6;
        const auto table = CountTable::build_exact(k, n_max, j_max);
        const auto series = series_counts(k, n_max, j_max);
        for (std::uint64_t n = 0; n <= n_max; ++n) {
            for (int j = 0; j <= j_max; ++j) {
                const std::uint64_t dp = table.at(n, j);
                CHECK(dp == series.at(n, j));
                CHECK(dp == representations({k, n, j, {}}).size());
            }
        }
    }
}

TEST_CASE("series totals match the small partition counts") {
    auto total = [](const CountTable& t, std::uint64_t n) {
        std::uint64_t sum = 0;
        for (int j = 0; j <= t.j_max(); ++j) sum += t.at(n, j);
        return sum;
    };
    CHECK(total(series_counts(1, 8, 8), 4) == 5);
    CHECK(total(series_counts(2, 8, 8), 4) == 2);
    CHECK(total(series_counts(3, 8, 8), 4) == 1);
    CHECK(total(series_counts(4, 8, 8), 4) == 1);
}

TEST_CASE("max-part recurrence holds") {
    for (int k = 1; k <= 3; ++k) {
        Counter c(k);
        for (std::uint64_t n = 1; n <= 60; ++n) {
            for (int j = 1; j <= 8; ++j) {
                for (std::uint64_t mu : {std::uint64_t(1), std::uint64_t(4), n / 2, n}) {
                    if (mu < 1) continue;
                    // Terms with i^k > n contribute nothing.
                    std::uint64_t rhs = 0;
                    for (std::uint64_t i = 1;; ++i) {
                        const std::uint64_t part = pow_checked(i, k);
                        if (part > mu || part > n) break;
                        rhs += c.count(n - part, j - 1, part).value;
                    }
                    CHECK(c.count(n, j, mu).value == rhs);
                }
            }
        }
    }
}

TEST_CASE("shift inequality with equality below the unit floor") {
    for (int k = 2; k <= 3; ++k) {
        const auto t = CountTable::build_exact(k, 200, 13);
        for (std::uint64_t n = 2; n + 1 <= 200; ++n) {
            for (int j = 2; j <= 12; ++j) {
                const std::uint64_t lhs = t.at(n, j);
                const std::uint64_t rhs = t.at(n + 1, j + 1);
                CHECK(lhs <= rhs);
                if (n < (std::uint64_t(1) << k) * std::uint64_t(j)) CHECK(lhs == rhs);
            }
        }
    }
}

TEST_CASE("saturating mode clamps exactly at the cap") {
    const std::uint32_t cap = 5;
    const auto sat = CountTable::build_saturating(2, 120, 10, cap);
    const auto ref = CountTable::build_exact(2, 120, 10);
    for (std::uint64_t n = 0; n <= 120; ++n) {
        for (int j = 0; j <= 10; ++j) {
            const std::uint64_t want = std::min<std::uint64_t>(ref.at(n, j), cap);
            CHECK(sat.at(n, j) == want);
        }
    }
}

TEST_CASE("saturating counter agrees with the saturating table") {
    Counter c(2, 5);
    const auto sat = CountTable::build_saturating(2, 120, 10, 5);
    for (std::uint64_t n = 1; n <= 120; n += 7) {
        for (int j = 1; j <= 10; ++j) {
            CHECK(c.count(n, j).value == sat.at(n, j));
        }
    }
}

TEST_CASE("exact mode overflow fails loudly with the offending cell") {
    try {
        const auto t = CountTable::build_exact(1, 2500, 80);
        FAIL("expected overflow, table built to ", t.n_max());
    } catch (const ArithmeticOverflowError& e) {
        CHECK(std::string(e.what()).find("n=") != std::string::npos);
    }
}

TEST_CASE("memory budget is checked before allocation") {
    CHECK_THROWS_AS(CountTable::build_saturating(2, 1'000'000, 1000, 10, 1 << 20),
                    ResourceBudgetError);
    CHECK_THROWS_AS(series_counts(2, 1'000'000, 1000, 1 << 20), ResourceBudgetError);
}

TEST_CASE("query and cap validation") {
    CHECK_THROWS_AS(count({0, 4, 2, {}}), ConfigError);
    CHECK_THROWS_AS(count({2, 4, 2, 0}), ConfigError);
    CHECK_THROWS_AS(CountTable::build_saturating(2, 10, 2, 0), ConfigError);
    CHECK_THROWS_AS(CountTable::build_saturating(2, 10, 2, 40000), ConfigError);
    CHECK_THROWS_AS(Counter(2, 0), ConfigError);
}
