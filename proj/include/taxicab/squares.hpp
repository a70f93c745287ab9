#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "taxicab/partition.hpp"
#include "taxicab/provenance.hpp"

namespace taxicab {

// Closed-form membership tests for "n is a sum of exactly j positive
// squares" (Dubouis/Pall), the four-square exceptional families, the
// certified search ceiling for square taxicab decisions, and the pigeonhole
// machinery behind the nonexistence proofs.

/// Offsets beta such that n = j + beta is not a sum of j positive squares
/// (for j >= 6; together with n <= j-1 these are the only failures).
std::span<const std::uint32_t> exception_offsets();

/// The extra offset that joins the set when j = 5.
inline constexpr std::uint32_t kFiveSquareExtraOffset = 28;

/// True iff n >= 1 has at least one representation as a sum of exactly j
/// positive squares. O(log n) for j >= 4; j <= 3 answers by enumeration.
bool is_sum_of_j_squares(std::uint64_t n, int j);

/// True iff n has no representation as a sum of four positive squares.
bool is_four_square_exception(std::uint64_t n);

/// All four-square exceptions with lo < n <= hi, ascending.
std::vector<std::uint64_t> four_square_exceptions_between(std::uint64_t lo,
                                                          std::uint64_t hi);

/// Members of the three geometric exception families {2,6,14} * 4^a with
/// lo < n <= hi, ascending. The finite sporadic exceptions all lie below 42.
std::vector<std::uint64_t> four_square_exception_families_between(std::uint64_t lo,
                                                                  std::uint64_t hi);

struct SearchBound {
    std::uint64_t value = 0;
    Provenance provenance = Provenance::Certified;
};

/// The search ceiling (mj + j + 14)^2: every n above it has at least m+1
/// representations as a sum of j positive squares. Certified for j >= 7;
/// j = 5 and 6 are accepted with a hypothesis-extended flag since the
/// downstream decisions rely on the formula there as well.
SearchBound square_search_bound(std::uint32_t m, int j);

/// Pigeonhole lower bound on the number of representations of n as a sum of
/// j positive squares: ceil(D / j) where D counts the bases x with x^2 small
/// enough that n - x^2 is a sum of j-1 positive squares. Requires j >= 5 so
/// the closed-form membership test covers j-1.
Count pigeonhole_lower_bound(std::uint64_t n, int j);

struct FiveSquareTail {
    std::uint64_t threshold = 0;     // every n above it has at least ...
    std::uint32_t guaranteed_ways = 0;
};

/// Constants for the five-square tail: above the threshold every integer has
/// at least guaranteed_ways representations as a sum of 5 positive squares.
/// Re-derives each inequality of the underlying argument (window square
/// root, family census, logarithmic bound on bad values, pigeonhole division)
/// and throws CertificationError if any recheck fails.
FiveSquareTail five_square_tail_threshold();

} // namespace taxicab
