#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "taxicab/errors.hpp"

namespace taxicab {

// Counts of partitions of n into exactly j positive k-th powers, optionally
// with every part bounded by a maximum part value. Two table modes exist:
// exact (64-bit, overflow-checked) and saturating (16-bit, clamped at a cap
// chosen above every count the caller will compare against).

inline constexpr std::uint64_t kDefaultMemoryBudget = 2ull << 30; // bytes
inline constexpr std::uint64_t kDefaultStepBudget = 20'000'000;

// Saturating cells are uint16_t; keeping the cap at or below 32767 means the
// sum of two clamped cells cannot wrap before the clamp is applied.
inline constexpr std::uint32_t kMaxSaturatingCap = 32767;

/// Floor of the k-th root, exact for all n and k >= 1.
std::uint64_t kth_root_floor(std::uint64_t n, int k);

/// base^k, throwing ArithmeticOverflowError if it does not fit 64 bits.
std::uint64_t pow_checked(std::uint64_t base, int k);

/// True iff n = x^k for some positive integer x (n >= 1).
bool is_perfect_power(std::uint64_t n, int k);

struct PartitionQuery {
    int k = 2;                              // power exponent, >= 1
    std::uint64_t n = 0;                    // target sum
    int j = 0;                              // exact number of parts
    std::optional<std::uint64_t> max_part;  // bound on the part value i^k
};

/// Validates field invariants; throws ConfigError on violation.
void validate(const PartitionQuery& q);

struct Count {
    std::uint64_t value = 0;
    // Engaged in saturating mode; value is clamped at *cap.
    std::optional<std::uint32_t> cap;

    bool saturated() const { return cap.has_value() && value >= *cap; }
};

/// Memoized per-query counter for one exponent k. Exact by default; a
/// saturating counter clamps every result (and may stop summing early).
/// Repeated queries share the memo. Not thread-safe; use one per thread.
class Counter {
public:
    explicit Counter(int k);
    Counter(int k, std::uint32_t cap);

    Count count(std::uint64_t n, int j) const;
    Count count(std::uint64_t n, int j, std::uint64_t max_part) const;
    Count count(const PartitionQuery& q) const;

    int exponent() const { return k_; }

private:
    struct Key {
        std::uint64_t n;
        std::uint32_t j;
        std::uint64_t root_cap;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& key) const;
    };

    std::uint64_t count_impl(std::uint64_t n, int j, std::uint64_t root_cap) const;

    int k_;
    std::optional<std::uint32_t> cap_;
    mutable std::unordered_map<Key, std::uint64_t, KeyHash> memo_;
};

/// One-off exact count (fresh memo each call).
Count count(const PartitionQuery& q);

/// All ways to write n as a sum of exactly j positive k-th powers, as
/// nondecreasing base sequences in lexicographic order. Independent of the
/// table machinery; used as an oracle and for listing witnesses.
struct RepresentationList {
    std::vector<std::vector<std::uint64_t>> parts; // bases, each of length j

    std::size_t size() const { return parts.size(); }
};

RepresentationList representations(const PartitionQuery& q,
                                   std::uint64_t step_budget = kDefaultStepBudget);

enum class TableMode : std::uint8_t { Exact = 0, Saturating = 1 };

/// Dense (n, j)-indexed count table for one exponent, immutable once built.
/// Cells are stored per part-count row so that both the construction sweep
/// and per-row scans touch contiguous memory in ascending n. Large builds
/// are memory-bandwidth bound, so saturating tables with a cap below 128
/// use one-byte cells; the disk format keeps two bytes per cell either way.
class CountTable {
public:
    /// Exact 64-bit table; throws ArithmeticOverflowError on any cell that
    /// does not fit, identifying the offending (n, j).
    static CountTable build_exact(int k, std::uint64_t n_max, int j_max,
                                  std::uint64_t memory_budget = kDefaultMemoryBudget);

    /// Saturating table with all cells clamped at cap (1 <= cap <= 32767).
    static CountTable build_saturating(int k, std::uint64_t n_max, int j_max,
                                       std::uint32_t cap,
                                       std::uint64_t memory_budget = kDefaultMemoryBudget);

    /// Assembles a table from raw cells (row-major by j). Used by the series
    /// expansion and the table file loader.
    static CountTable from_cells(int k, std::uint64_t n_max, int j_max, TableMode mode,
                                 std::uint32_t cap, std::vector<std::uint16_t> sat_cells,
                                 std::vector<std::uint64_t> exact_cells);

    int exponent() const { return k_; }
    std::uint64_t n_max() const { return n_max_; }
    int j_max() const { return j_max_; }
    TableMode mode() const { return mode_; }
    std::uint32_t cap() const { return cap_; }

    /// Count at (n, j); in saturating mode this is min(cap, exact count).
    std::uint64_t at(std::uint64_t n, int j) const;

    /// Contiguous row of exact counts for a fixed part count, indexed by n.
    std::span<const std::uint64_t> exact_row(int j) const;

    /// Walks a saturating row over n in [n_lo, n_hi], calling fn(n, value)
    /// until fn returns false or the range ends. The loop stays tight per
    /// cell width.
    template <typename F>
    void scan_saturating_row(int j, std::uint64_t n_lo, std::uint64_t n_hi, F&& fn) const {
        if (mode_ != TableMode::Saturating) throw ConfigError("count table: not saturating");
        if (j < 0 || j > j_max_ || n_hi > n_max_ || n_lo > n_hi) {
            throw ConfigError("count table: row scan out of range");
        }
        const std::size_t base = std::size_t(j) * (std::size_t(n_max_) + 1);
        if (!sat8_.empty()) {
            const std::uint8_t* row = sat8_.data() + base;
            for (std::uint64_t n = n_lo; n <= n_hi; ++n) {
                if (!fn(n, std::uint32_t(row[n]))) return;
            }
        } else {
            const std::uint16_t* row = sat16_.data() + base;
            for (std::uint64_t n = n_lo; n <= n_hi; ++n) {
                if (!fn(n, std::uint32_t(row[n]))) return;
            }
        }
    }

    std::size_t cell_count() const { return (n_max_ + 1) * std::size_t(j_max_ + 1); }

private:
    CountTable() = default;

    int k_ = 0;
    std::uint64_t n_max_ = 0;
    int j_max_ = 0;
    TableMode mode_ = TableMode::Exact;
    std::uint32_t cap_ = 0;
    std::vector<std::uint8_t> sat8_;   // saturating, cap <= 127
    std::vector<std::uint16_t> sat16_; // saturating, larger caps
    std::vector<std::uint64_t> exact_;
};

/// Expands the truncated power series for the count family by multiplying
/// one geometric factor per admissible part. A deliberately different route
/// from the table sweep, kept for cross-validation. Exact mode only.
CountTable series_counts(int k, std::uint64_t n_max, int j_max,
                         std::uint64_t memory_budget = kDefaultMemoryBudget);

} // namespace taxicab
