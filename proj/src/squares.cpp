#include "taxicab/squares.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace taxicab {

namespace {

constexpr std::array<std::uint32_t, 7> kExceptionOffsets = {1, 2, 4, 5, 7, 10, 13};

bool offset_excluded(std::uint64_t n, int j) {
    if (n < std::uint64_t(j)) return true;
    const std::uint64_t beta = n - std::uint64_t(j);
    for (std::uint32_t b : kExceptionOffsets) {
        if (beta == b) return true;
    }
    if (j == 5 && beta == kFiveSquareExtraOffset) return true;
    return false;
}

bool is_square(std::uint64_t n) { return n >= 1 && is_perfect_power(n, 2); }

bool is_sum_of_two_squares_positive(std::uint64_t n) {
    for (std::uint64_t x = 1; x * x * 2 <= n; ++x) {
        if (is_square(n - x * x)) return true;
    }
    return false;
}

bool is_sum_of_three_squares_positive(std::uint64_t n) {
    for (std::uint64_t x = 1; x * x * 3 <= n; ++x) {
        if (is_sum_of_two_squares_positive(n - x * x)) return true;
    }
    return false;
}

} // namespace

std::span<const std::uint32_t> exception_offsets() {
    return {kExceptionOffsets.data(), kExceptionOffsets.size()};
}

bool is_four_square_exception(std::uint64_t n) {
    if (n <= 3) return true;
    const std::uint64_t beta = n - 4;
    for (std::uint32_t b : kExceptionOffsets) {
        if (beta == b) return true;
    }
    if (beta == 25 || beta == 37) return true;
    // The geometric families 2*4^a, 6*4^a, 14*4^a.
    std::uint64_t v = n;
    while (v % 4 == 0) v /= 4;
    return v == 2 || v == 6 || v == 14;
}

std::vector<std::uint64_t> four_square_exceptions_between(std::uint64_t lo,
                                                          std::uint64_t hi) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = lo + 1; n <= hi && n != 0; ++n) {
        if (is_four_square_exception(n)) out.push_back(n);
    }
    return out;
}

std::vector<std::uint64_t> four_square_exception_families_between(std::uint64_t lo,
                                                                  std::uint64_t hi) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t seed : {2ull, 6ull, 14ull}) {
        for (std::uint64_t v = seed; v <= hi; v *= 4) {
            if (v > lo) out.push_back(v);
            if (v > hi / 4) break;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool is_sum_of_j_squares(std::uint64_t n, int j) {
    if (n < 1 || j < 1) throw ConfigError("is_sum_of_j_squares: need n >= 1, j >= 1");
    switch (j) {
        case 1: return is_square(n);
        case 2: return is_sum_of_two_squares_positive(n);
        case 3: return is_sum_of_three_squares_positive(n);
        case 4: return !is_four_square_exception(n);
        default: return !offset_excluded(n, j);
    }
}

SearchBound square_search_bound(std::uint32_t m, int j) {
    if (m < 2) throw ConfigError("square search bound: requires m >= 2");
    if (j < 5) throw ConfigError("square search bound: requires j >= 5");
    const std::uint64_t root = std::uint64_t(m) * j + std::uint64_t(j) + 14;
    return SearchBound{root * root,
                       j >= 7 ? Provenance::Certified : Provenance::HypothesisExtended};
}

Count pigeonhole_lower_bound(std::uint64_t n, int j) {
    if (j < 5) throw ConfigError("pigeonhole lower bound: requires j >= 5");
    if (n < 1) throw ConfigError("pigeonhole lower bound: requires n >= 1");
    std::uint64_t usable = 0;
    if (n >= std::uint64_t(j)) {
        // x^2 must leave at least j-1 behind for the remaining squares.
        for (std::uint64_t x = 1; x * x <= n - std::uint64_t(j) + 1; ++x) {
            if (is_sum_of_j_squares(n - x * x, j - 1)) ++usable;
        }
    }
    return Count{(usable + std::uint64_t(j) - 1) / std::uint64_t(j), std::nullopt};
}

FiveSquareTail five_square_tail_threshold() {
    constexpr std::uint64_t kWindow = 919681;
    constexpr std::uint64_t kThreshold = 921681;
    constexpr std::uint32_t kWays = 189;

    // The window must be a perfect square so every candidate square fits it.
    const std::uint64_t root = kth_root_floor(kWindow, 2);
    if (root * root != kWindow) {
        throw CertificationError("five-square tail: window is not a perfect square");
    }
    // At the threshold the window floor sits exactly at 2000, above the last
    // sporadic four-square exception.
    if (kThreshold - kWindow != 2000 || kThreshold - kWindow < 42) {
        throw CertificationError("five-square tail: window floor misplaced");
    }
    // Logarithmic bound on the number of family members inside the window,
    // evaluated at the threshold (it decreases in n).
    auto log_base4 = [](double v) { return std::log(v) / std::log(4.0); };
    const double gamma_bound =
        3.0 * (log_base4(double(kThreshold) / 2.0) -
               log_base4(double(kThreshold - kWindow) / 14.0));
    if (!(gamma_bound <= 18.0)) {
        throw CertificationError("five-square tail: log bound exceeds 18");
    }
    // Direct census of the three families inside the window at the threshold.
    const auto family = four_square_exception_families_between(kThreshold - kWindow,
                                                               kThreshold);
    if (family.size() > 21) {
        throw CertificationError("five-square tail: family census exceeds 21");
    }
    if (double(family.size()) > gamma_bound) {
        throw CertificationError("five-square tail: census exceeds the log bound");
    }
    // Pigeonhole: at least root - 18 usable squares, each five-square
    // representation consumed at most 5 of them.
    const std::uint64_t usable = root - 18;
    if (usable != 941) {
        throw CertificationError("five-square tail: usable square count is off");
    }
    if ((usable + 4) / 5 != kWays) {
        throw CertificationError("five-square tail: pigeonhole division is off");
    }
    return FiveSquareTail{kThreshold, kWays};
}

} // namespace taxicab
