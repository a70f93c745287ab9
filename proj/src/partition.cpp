#include "taxicab/partition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace taxicab {

namespace {

std::string cell_label(std::uint64_t n, int j) {
    return "(n=" + std::to_string(n) + ", j=" + std::to_string(j) + ")";
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b, std::uint64_t n, int j) {
    std::uint64_t out = 0;
    if (__builtin_add_overflow(a, b, &out)) {
        throw ArithmeticOverflowError("exact count overflow at " + cell_label(n, j));
    }
    return out;
}

// The k-th powers not exceeding limit, ascending.
std::vector<std::uint64_t> parts_up_to(int k, std::uint64_t limit) {
    std::vector<std::uint64_t> parts;
    for (std::uint64_t base = 1;; ++base) {
        std::uint64_t p = 1;
        bool over = false;
        for (int e = 0; e < k; ++e) {
            if (p > limit / base) {
                over = true;
                break;
            }
            p *= base;
        }
        if (over || p > limit) break;
        parts.push_back(p);
    }
    return parts;
}

void check_budget(std::uint64_t n_max, int j_max, std::size_t cell_bytes,
                  std::uint64_t budget) {
    const std::uint64_t cells = (n_max + 1) * std::uint64_t(j_max + 1);
    if (cells / (n_max + 1) != std::uint64_t(j_max + 1) ||
        cells > budget / cell_bytes) {
        throw ResourceBudgetError(
            "count table of " + std::to_string(n_max + 1) + " x " +
            std::to_string(j_max + 1) + " cells exceeds the memory budget of " +
            std::to_string(budget) + " bytes");
    }
}

} // namespace

std::uint64_t kth_root_floor(std::uint64_t n, int k) {
    if (k < 1) throw ConfigError("exponent must be >= 1");
    if (n == 0) return 0;
    if (k == 1) return n;
    std::uint64_t r = static_cast<std::uint64_t>(
        std::pow(static_cast<double>(n), 1.0 / static_cast<double>(k)));
    // std::pow is inexact near perfect powers; settle by direct comparison.
    auto pow_leq = [&](std::uint64_t base) {
        if (base == 0) return true;
        std::uint64_t p = 1;
        for (int e = 0; e < k; ++e) {
            if (p > n / base) return false;
            p *= base;
        }
        return p <= n;
    };
    while (r > 0 && !pow_leq(r)) --r;
    while (pow_leq(r + 1)) ++r;
    return r;
}

std::uint64_t pow_checked(std::uint64_t base, int k) {
    std::uint64_t p = 1;
    for (int e = 0; e < k; ++e) {
        if (base != 0 && p > std::numeric_limits<std::uint64_t>::max() / base) {
            throw ArithmeticOverflowError("power overflow: " + std::to_string(base) +
                                          "^" + std::to_string(k));
        }
        p *= base;
    }
    return p;
}

bool is_perfect_power(std::uint64_t n, int k) {
    if (n == 0) return false;
    const std::uint64_t r = kth_root_floor(n, k);
    return pow_checked(r, k) == n;
}

void validate(const PartitionQuery& q) {
    if (q.k < 1) throw ConfigError("partition query: k must be >= 1");
    if (q.j < 0) throw ConfigError("partition query: j must be >= 0");
    if (q.max_part && *q.max_part < 1) {
        throw ConfigError("partition query: max part value must be >= 1");
    }
}

// ---------------------------------------------------------------------------
// Counter

std::size_t Counter::KeyHash::operator()(const Key& key) const {
    std::uint64_t h = key.n * 0x9e3779b97f4a7c15ull;
    h ^= (std::uint64_t(key.j) + 0xbf58476d1ce4e5b9ull) * 0x94d049bb133111ebull;
    h += key.root_cap * 0xff51afd7ed558ccdull;
    h ^= h >> 33;
    h *= 0xc4ceb9fe1a85ec53ull;
    h ^= h >> 29;
    return static_cast<std::size_t>(h);
}

Counter::Counter(int k) : k_(k) {
    if (k < 1) throw ConfigError("counter: k must be >= 1");
}

Counter::Counter(int k, std::uint32_t cap) : k_(k), cap_(cap) {
    if (k < 1) throw ConfigError("counter: k must be >= 1");
    if (cap < 1 || cap > kMaxSaturatingCap) {
        throw ConfigError("counter: saturating cap must be in [1, " +
                          std::to_string(kMaxSaturatingCap) + "]");
    }
}

std::uint64_t Counter::count_impl(std::uint64_t n, int j, std::uint64_t root_cap) const {
    if (j == 0) return n == 0 ? 1 : 0;
    if (n < std::uint64_t(j)) return 0;
    // Largest usable base: its power must leave room for j-1 parts of 1.
    const std::uint64_t hi =
        std::min(root_cap, kth_root_floor(n - std::uint64_t(j) + 1, k_));
    if (hi == 0) return 0;
    if (j == 1) return pow_checked(hi, k_) == n ? 1 : 0;

    const Key key{n, std::uint32_t(j), hi};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    std::uint64_t total = 0;
    for (std::uint64_t base = 1; base <= hi; ++base) {
        const std::uint64_t part = pow_checked(base, k_);
        const std::uint64_t sub = count_impl(n - part, j - 1, base);
        if (cap_) {
            total = std::min<std::uint64_t>(total + sub, *cap_);
            if (total == *cap_) break; // further terms cannot lower a clamped sum
        } else {
            total = checked_add(total, sub, n, j);
        }
    }
    memo_.emplace(key, total);
    return total;
}

Count Counter::count(std::uint64_t n, int j) const {
    return count(PartitionQuery{k_, n, j, std::nullopt});
}

Count Counter::count(std::uint64_t n, int j, std::uint64_t max_part) const {
    return count(PartitionQuery{k_, n, j, max_part});
}

Count Counter::count(const PartitionQuery& q) const {
    validate(q);
    if (q.k != k_) throw ConfigError("counter: query exponent does not match");
    const std::uint64_t root_cap = q.max_part
                                       ? kth_root_floor(*q.max_part, k_)
                                       : std::numeric_limits<std::uint64_t>::max();
    return Count{count_impl(q.n, q.j, root_cap), cap_};
}

Count count(const PartitionQuery& q) {
    validate(q);
    return Counter(q.k).count(q);
}

// ---------------------------------------------------------------------------
// Brute-force enumeration

namespace {

struct Enumerator {
    int k = 2;
    std::uint64_t max_base = 0;
    std::uint64_t budget = 0;
    std::uint64_t steps = 0;
    std::vector<std::uint64_t> stack;
    std::vector<std::vector<std::uint64_t>> out;

    void run(std::uint64_t remaining, int parts_left, std::uint64_t min_base) {
        if (++steps > budget) {
            throw StepBudgetError("representation enumeration exceeded " +
                                  std::to_string(budget) + " steps");
        }
        if (parts_left == 1) {
            const std::uint64_t base = kth_root_floor(remaining, k);
            if (base >= min_base && base <= max_base &&
                pow_checked(base, k) == remaining) {
                stack.push_back(base);
                out.push_back(stack);
                stack.pop_back();
            }
            return;
        }
        for (std::uint64_t base = min_base; base <= max_base; ++base) {
            const std::uint64_t part = pow_checked(base, k);
            // All parts_left remaining parts are >= part.
            if (part > remaining / parts_left) break;
            stack.push_back(base);
            run(remaining - part, parts_left - 1, base);
            stack.pop_back();
        }
    }
};

} // namespace

RepresentationList representations(const PartitionQuery& q, std::uint64_t step_budget) {
    validate(q);
    RepresentationList list;
    if (q.j == 0) {
        if (q.n == 0) list.parts.push_back({});
        return list;
    }
    if (q.n == 0) return list;
    Enumerator e;
    e.k = q.k;
    e.budget = step_budget;
    e.max_base = q.max_part ? kth_root_floor(*q.max_part, q.k)
                            : kth_root_floor(q.n, q.k);
    if (e.max_base == 0) return list;
    e.stack.reserve(std::size_t(q.j));
    e.run(q.n, q.j, 1);
    list.parts = std::move(e.out);
    return list;
}

// ---------------------------------------------------------------------------
// CountTable

CountTable CountTable::build_exact(int k, std::uint64_t n_max, int j_max,
                                   std::uint64_t memory_budget) {
    if (k < 1 || j_max < 0) throw ConfigError("count table: bad k or j_max");
    check_budget(n_max, j_max, sizeof(std::uint64_t), memory_budget);
    CountTable t;
    t.k_ = k;
    t.n_max_ = n_max;
    t.j_max_ = j_max;
    t.mode_ = TableMode::Exact;
    t.exact_.assign(t.cell_count(), 0);
    t.exact_[0] = 1; // row j=0: the empty partition of 0
    const std::size_t width = std::size_t(n_max) + 1;
    for (std::uint64_t part : parts_up_to(k, n_max)) {
        for (int j = 1; j <= j_max; ++j) {
            const std::uint64_t* src = t.exact_.data() + std::size_t(j - 1) * width;
            std::uint64_t* dst = t.exact_.data() + std::size_t(j) * width;
            for (std::uint64_t n = part; n <= n_max; ++n) {
                if (src[n - part] != 0) {
                    dst[n] = checked_add(dst[n], src[n - part], n, j);
                }
            }
        }
    }
    return t;
}

namespace {

// The sum of two clamped cells stays below the wraparound of CellT as long
// as the cap is at most half the type's maximum, which both width choices
// guarantee.
template <typename CellT>
void sweep_saturating(std::vector<CellT>& cells, int k, std::uint64_t n_max, int j_max,
                      std::uint32_t cap) {
    cells.assign((std::size_t(n_max) + 1) * std::size_t(j_max + 1), 0);
    cells[0] = 1;
    const std::size_t width = std::size_t(n_max) + 1;
    const CellT capc = static_cast<CellT>(cap);
    for (std::uint64_t part : parts_up_to(k, n_max)) {
        for (int j = 1; j <= j_max; ++j) {
            const CellT* __restrict src = cells.data() + std::size_t(j - 1) * width;
            CellT* __restrict dst = cells.data() + std::size_t(j) * width;
            for (std::uint64_t n = part; n <= n_max; ++n) {
                dst[n] = std::min<CellT>(static_cast<CellT>(dst[n] + src[n - part]), capc);
            }
        }
    }
}

} // namespace

CountTable CountTable::build_saturating(int k, std::uint64_t n_max, int j_max,
                                        std::uint32_t cap, std::uint64_t memory_budget) {
    if (k < 1 || j_max < 0) throw ConfigError("count table: bad k or j_max");
    if (cap < 1 || cap > kMaxSaturatingCap) {
        throw ConfigError("count table: saturating cap must be in [1, " +
                          std::to_string(kMaxSaturatingCap) + "]");
    }
    const bool narrow = cap <= 127;
    check_budget(n_max, j_max, narrow ? sizeof(std::uint8_t) : sizeof(std::uint16_t),
                 memory_budget);
    CountTable t;
    t.k_ = k;
    t.n_max_ = n_max;
    t.j_max_ = j_max;
    t.mode_ = TableMode::Saturating;
    t.cap_ = cap;
    if (narrow) {
        sweep_saturating(t.sat8_, k, n_max, j_max, cap);
    } else {
        sweep_saturating(t.sat16_, k, n_max, j_max, cap);
    }
    return t;
}

CountTable CountTable::from_cells(int k, std::uint64_t n_max, int j_max, TableMode mode,
                                  std::uint32_t cap, std::vector<std::uint16_t> sat_cells,
                                  std::vector<std::uint64_t> exact_cells) {
    CountTable t;
    t.k_ = k;
    t.n_max_ = n_max;
    t.j_max_ = j_max;
    t.mode_ = mode;
    t.cap_ = cap;
    const std::size_t expect = (std::size_t(n_max) + 1) * std::size_t(j_max + 1);
    if (mode == TableMode::Saturating) {
        if (sat_cells.size() != expect) {
            throw ConfigError("count table: cell count mismatch");
        }
        if (cap <= 127) {
            t.sat8_.resize(sat_cells.size());
            for (std::size_t i = 0; i < sat_cells.size(); ++i) {
                if (sat_cells[i] > cap) {
                    throw ConfigError("count table: cell exceeds the cap");
                }
                t.sat8_[i] = std::uint8_t(sat_cells[i]);
            }
        } else {
            for (std::uint16_t cell : sat_cells) {
                if (cell > cap) throw ConfigError("count table: cell exceeds the cap");
            }
            t.sat16_ = std::move(sat_cells);
        }
    } else {
        if (exact_cells.size() != expect) {
            throw ConfigError("count table: cell count mismatch");
        }
        t.exact_ = std::move(exact_cells);
    }
    return t;
}

std::uint64_t CountTable::at(std::uint64_t n, int j) const {
    if (n > n_max_ || j < 0 || j > j_max_) {
        throw ConfigError("count table: cell " + cell_label(n, j) + " out of range");
    }
    const std::size_t idx = std::size_t(j) * (std::size_t(n_max_) + 1) + n;
    if (mode_ != TableMode::Saturating) return exact_[idx];
    return sat8_.empty() ? sat16_[idx] : sat8_[idx];
}

std::span<const std::uint64_t> CountTable::exact_row(int j) const {
    if (mode_ != TableMode::Exact) throw ConfigError("count table: not exact");
    if (j < 0 || j > j_max_) throw ConfigError("count table: row out of range");
    return {exact_.data() + std::size_t(j) * (std::size_t(n_max_) + 1),
            std::size_t(n_max_) + 1};
}

// ---------------------------------------------------------------------------
// Series expansion

CountTable series_counts(int k, std::uint64_t n_max, int j_max,
                         std::uint64_t memory_budget) {
    if (k < 1 || j_max < 0) throw ConfigError("series: bad k or j_max");
    // Two coefficient arrays are alive at once.
    check_budget(n_max, j_max, 2 * sizeof(std::uint64_t), memory_budget);
    const std::size_t width = std::size_t(n_max) + 1;
    std::vector<std::uint64_t> coeff(width * std::size_t(j_max + 1), 0);
    coeff[0] = 1;
    std::vector<std::uint64_t> next;
    for (std::uint64_t part : parts_up_to(k, n_max)) {
        next = coeff;
        // Multiply by the geometric series in (x^part y): add every shifted
        // copy t >= 1 of the current coefficients.
        for (int t = 1; t <= j_max; ++t) {
            const std::uint64_t shift = part * std::uint64_t(t);
            if (shift > n_max) break;
            for (int j = t; j <= j_max; ++j) {
                const std::uint64_t* src = coeff.data() + std::size_t(j - t) * width;
                std::uint64_t* dst = next.data() + std::size_t(j) * width;
                for (std::uint64_t n = shift; n <= n_max; ++n) {
                    if (src[n - shift] != 0) {
                        dst[n] = checked_add(dst[n], src[n - shift], n, j);
                    }
                }
            }
        }
        coeff.swap(next);
    }
    return CountTable::from_cells(k, n_max, j_max, TableMode::Exact, 0, {},
                                  std::move(coeff));
}

} // namespace taxicab
