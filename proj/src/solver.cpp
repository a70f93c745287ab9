#include "taxicab/solver.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

#include "parallel.hpp"

namespace taxicab {

namespace {

void validate_query(int k, int j, std::uint32_t m, std::uint64_t bound) {
    if (k < 1 || k > 62) throw ConfigError("taxicab: k must be in [1, 62]");
    if (j < 1) throw ConfigError("taxicab: j must be >= 1");
    if (m < 1) throw ConfigError("taxicab: m must be >= 1");
    if (m >= kMaxSaturatingCap) {
        throw ConfigError("taxicab: m exceeds the saturating comparison range");
    }
    if (bound < std::uint64_t(j)) throw ConfigError("taxicab: bound must be >= j");
}

// Enumerates sums x^k + y^k (x <= y) in ascending order and returns the
// first value whose multiset multiplicity matches. Memory stays at
// O(bound^(1/k)) where a table row would need O(bound) cells.
TaxicabOutcome scan_pairs(int k, std::uint32_t m, std::uint64_t bound, bool at_least) {
    struct Node {
        std::uint64_t sum;
        std::uint64_t x, y;
        bool operator>(const Node& o) const { return sum > o.sum; }
    };
    std::priority_queue<Node, std::vector<Node>, std::greater<>> heap;
    const std::uint64_t root_bound = kth_root_floor(bound, k);
    auto push = [&](std::uint64_t x, std::uint64_t y) {
        if (x > root_bound || y > root_bound) return;
        std::uint64_t sum = 0;
        if (__builtin_add_overflow(pow_checked(x, k), pow_checked(y, k), &sum)) return;
        if (sum <= bound) heap.push(Node{sum, x, y});
    };
    push(1, 1);
    TaxicabOutcome out{k, 2, m, SearchStatus::AbsentUpTo, 0, bound,
                       Provenance::Empirical};
    while (!heap.empty()) {
        const std::uint64_t sum = heap.top().sum;
        std::uint64_t multiplicity = 0;
        while (!heap.empty() && heap.top().sum == sum) {
            const Node node = heap.top();
            heap.pop();
            ++multiplicity;
            if (node.x == node.y) push(node.x + 1, node.y + 1);
            push(node.x, node.y + 1);
        }
        if (at_least ? multiplicity >= m : multiplicity == m) {
            out.status = SearchStatus::Found;
            out.n = sum;
            out.provenance = Provenance::Certified;
            return out;
        }
    }
    return out;
}

} // namespace

// ---------------------------------------------------------------------------
// BoundPolicy

BoundPolicy BoundPolicy::certified() { return BoundPolicy{Kind::Certified, 150, 50'000'000}; }

BoundPolicy BoundPolicy::conjectural(std::uint64_t offset, std::uint64_t scan_limit) {
    return BoundPolicy{Kind::Conjectural, offset, scan_limit};
}

std::optional<SearchBound> BoundPolicy::bound_for(int k, int j, std::uint32_t m) const {
    if (kind == Kind::Certified && k == 2 && j >= 5 && m >= 2) {
        const SearchBound sb = square_search_bound(m, j);
        if (sb.value > scan_limit) return std::nullopt;
        return sb;
    }
    // Conjectural ceiling (mj + j + C)^k; refuse instead of overflowing.
    const std::uint64_t root = std::uint64_t(m) * j + std::uint64_t(j) + conjectural_offset;
    if (root > kth_root_floor(scan_limit, k)) return std::nullopt;
    return SearchBound{pow_checked(root, k), Provenance::Empirical};
}

// ---------------------------------------------------------------------------
// Searcher

Searcher::Searcher(SearcherOptions options) : options_(options) {
    if (options_.workers < 1) throw ConfigError("searcher: workers must be >= 1");
}

std::shared_ptr<const CountTable> Searcher::table(int k, std::uint32_t cap,
                                                  std::uint64_t n_max, int j_max) {
    std::shared_ptr<CacheSlot> slot;
    {
        std::lock_guard lock(cache_mutex_);
        auto& entry = cache_[{k, cap}];
        if (!entry) entry = std::make_shared<CacheSlot>();
        slot = entry;
    }
    std::lock_guard lock(slot->mutex);
    if (slot->table && slot->table->n_max() >= n_max && slot->table->j_max() >= j_max) {
        return slot->table;
    }
    // Grow geometrically so a stream of slightly larger requests costs a
    // constant factor over the final build.
    std::uint64_t want_n = n_max;
    int want_j = j_max;
    if (slot->table) {
        want_n = std::max(want_n, slot->table->n_max() * 2);
        want_j = std::max(want_j, slot->table->j_max() + 6);
    }
    slot->table.reset(); // release before building the replacement
    try {
        slot->table = std::make_shared<const CountTable>(
            CountTable::build_saturating(k, want_n, want_j, cap, options_.memory_budget));
    } catch (const ResourceBudgetError&) {
        // The headroom may not fit even when the plain request does.
        slot->table = std::make_shared<const CountTable>(
            CountTable::build_saturating(k, n_max, j_max, cap, options_.memory_budget));
    }
    return slot->table;
}

void Searcher::adopt_table(CountTable table) {
    if (table.mode() != TableMode::Saturating) {
        throw ConfigError("searcher: only saturating tables are cached");
    }
    auto key = std::make_pair(table.exponent(), table.cap());
    std::shared_ptr<CacheSlot> slot;
    {
        std::lock_guard lock(cache_mutex_);
        auto& entry = cache_[key];
        if (!entry) entry = std::make_shared<CacheSlot>();
        slot = entry;
    }
    std::lock_guard lock(slot->mutex);
    if (!slot->table || slot->table->n_max() < table.n_max() ||
        slot->table->j_max() < table.j_max()) {
        slot->table = std::make_shared<const CountTable>(std::move(table));
    }
}

std::shared_ptr<const CountTable> Searcher::peek_table(int k, std::uint32_t cap) {
    std::shared_ptr<CacheSlot> slot;
    {
        std::lock_guard lock(cache_mutex_);
        const auto it = cache_.find({k, cap});
        if (it == cache_.end()) return nullptr;
        slot = it->second;
    }
    std::lock_guard lock(slot->mutex);
    return slot->table;
}

void Searcher::clear_tables() {
    std::lock_guard lock(cache_mutex_);
    cache_.clear();
}

TaxicabOutcome Searcher::scan(int k, int j, std::uint32_t m, std::uint64_t bound,
                              std::uint32_t cap, bool at_least) {
    if (m + 1 > cap) {
        throw ConfigError("taxicab: saturating cap " + std::to_string(cap) +
                          " is too small to compare against m = " + std::to_string(m));
    }
    TaxicabOutcome out{k, j, m, SearchStatus::AbsentUpTo, 0, bound,
                       Provenance::Empirical};
    if (j == 1) {
        // A positive integer is a k-th power in at most one way, so the
        // column starts at 1 for m = 1 and is empty for every larger m.
        if (m == 1) {
            out.status = SearchStatus::Found;
            out.n = 1;
            out.provenance = Provenance::Certified;
        }
        return out;
    }
    if (j == 2 && bound > options_.pair_scan_threshold) {
        return scan_pairs(k, m, bound, at_least);
    }
    const auto tbl = table(k, cap, bound, j);
    tbl->scan_saturating_row(j, std::uint64_t(j), bound,
                             [&](std::uint64_t n, std::uint32_t v) {
                                 if (at_least ? v >= m : v == m) {
                                     out.status = SearchStatus::Found;
                                     out.n = n;
                                     out.provenance = Provenance::Certified;
                                     return false;
                                 }
                                 return true;
                             });
    return out;
}

TaxicabOutcome Searcher::taxicab(int k, int j, std::uint32_t m, std::uint64_t bound) {
    validate_query(k, j, m, bound);
    TaxicabOutcome out = scan(k, j, m, bound, m + 1, false);
    if (!out.found() && k == 2 && j >= 5 && m >= 2) {
        const SearchBound sb = square_search_bound(m, j);
        if (bound >= sb.value) {
            out.status = SearchStatus::ProvedAbsent;
            out.provenance = sb.provenance;
        }
    }
    return out;
}

TaxicabOutcome Searcher::taxicab_at_least(int k, int j, std::uint32_t m,
                                          std::uint64_t bound) {
    validate_query(k, j, m, bound);
    return scan(k, j, m, bound, m + 1, true);
}

TaxicabOutcome Searcher::decide_squares(int j, std::uint32_t m, std::uint32_t cap_hint) {
    if (cap_hint != 0 && cap_hint < m + 1) {
        throw ConfigError("decide_squares: cap hint is below m + 1");
    }
    return decide_squares_with_cap(j, m, cap_hint == 0 ? m + 1 : cap_hint);
}

TaxicabOutcome Searcher::decide_squares_with_cap(int j, std::uint32_t m,
                                                 std::uint32_t cap) {
    const SearchBound sb = square_search_bound(m, j); // validates j >= 5, m >= 2
    validate_query(2, j, m, sb.value);
    TaxicabOutcome out = scan(2, j, m, sb.value, cap, false);
    if (!out.found()) {
        out.status = SearchStatus::ProvedAbsent;
        out.provenance = sb.provenance;
    }
    return out;
}

std::optional<IncrementCertificate> Searcher::certify_tail_increment(int k, int start_j,
                                                                     std::uint32_t m,
                                                                     std::uint64_t bound) {
    if (start_j < 2) throw ConfigError("increment certificate: start_j must be >= 2");
    if (bound == 0) {
        if (k == 2 && start_j >= 5 && m >= 2) {
            bound = square_search_bound(m, start_j).value;
        } else {
            const auto sb = BoundPolicy::conjectural().bound_for(k, start_j, m);
            if (!sb) return std::nullopt;
            bound = sb->value;
        }
    }
    const TaxicabOutcome hit = taxicab(k, start_j, m, bound);
    if (!hit.found()) return std::nullopt;
    const std::uint64_t unit_floor = (std::uint64_t(1) << k) * std::uint64_t(start_j + 1);
    if (hit.n + 1 >= unit_floor) return std::nullopt; // refusal: column not settled yet
    return IncrementCertificate{k, m, start_j, hit.n, bound,
                                k == 2 ? Provenance::Certified : Provenance::Empirical};
}

Searcher::NonexistenceProbe Searcher::probe_nonexistence(std::uint32_t m, int start_j,
                                                         int row_limit,
                                                         std::uint32_t cap) {
    if (m < 2) throw ConfigError("nonexistence certificate: requires m >= 2");
    if (start_j < 5) throw ConfigError("nonexistence certificate: requires start_j >= 5");
    for (int row = start_j; row <= row_limit; ++row) {
        const SearchBound sb = square_search_bound(m, row);
        const auto tbl = table(2, cap, sb.value, row);
        // One pass establishes both (a) no exact-m cell and the minimal
        // threshold t with every cell >= m+1 from t through the bound.
        std::uint64_t last_low = 0;
        bool hit = false;
        tbl->scan_saturating_row(row, std::uint64_t(row), sb.value,
                                 [&](std::uint64_t n, std::uint32_t v) {
                                     if (v == m) {
                                         hit = true;
                                         return false;
                                     }
                                     if (v < m) last_low = n;
                                     return true;
                                 });
        if (hit) return NonexistenceProbe{std::nullopt, row};
        const std::uint64_t threshold = last_low + 1;
        if (threshold > 4 * std::uint64_t(row) + 3) continue; // chain cannot reach; widen
        // Settle the rows below the witness individually.
        NonexistenceCertificate cert;
        cert.m = m;
        cert.start_j = start_j;
        cert.tail_j = row;
        cert.tail_threshold = threshold;
        cert.bound_searched = sb.value;
        cert.provenance = sb.provenance;
        for (int j = start_j; j <= row; ++j) {
            const TaxicabOutcome low = decide_squares_with_cap(j, m, cap);
            if (low.status != SearchStatus::ProvedAbsent) {
                return NonexistenceProbe{std::nullopt, low.found() ? j : 0};
            }
            cert.provenance = weaker(cert.provenance, low.provenance);
            cert.low_rows.push_back(low);
        }
        return NonexistenceProbe{std::move(cert), 0};
    }
    return NonexistenceProbe{std::nullopt, 0};
}

std::optional<NonexistenceCertificate> Searcher::certify_tail_nonexistence(
    std::uint32_t m, int start_j, int row_limit) {
    return probe_nonexistence(m, start_j, row_limit, m + 1).certificate;
}

ColumnClassification Searcher::classify_with_cap(int k, std::uint32_t m, int j_limit,
                                                 const BoundPolicy& policy,
                                                 std::uint32_t cap) {
    ColumnClassification out;
    out.k = k;
    out.m = m;
    if (j_limit < 2) throw ConfigError("classify: j_limit must be >= 2");
    int j = 2;
    while (j <= j_limit) {
        const auto sb = policy.bound_for(k, j, m);
        if (!sb) {
            out.j_scanned = j - 1; // bound beyond the scan limit: undetermined
            return out;
        }
        out.j_scanned = j;
        TaxicabOutcome hit = scan(k, j, m, sb->value, cap, false);
        if (hit.found()) {
            const std::uint64_t unit_floor = (std::uint64_t(1) << k) * std::uint64_t(j + 1);
            if (hit.n + 1 < unit_floor) {
                IncrementCertificate cert{k, m, j, hit.n, sb->value,
                                          k == 2 ? Provenance::Certified
                                                 : Provenance::Empirical};
                out.verdict = ColumnVerdict::EventualIncrement;
                out.onset_j = j;
                out.provenance = cert.provenance;
                out.certificate = TailCertificate{cert};
                return out;
            }
            ++j;
            continue;
        }
        if (k == 2 && j >= 5 && m >= 2) {
            NonexistenceProbe probe = probe_nonexistence(m, j, j_limit, cap);
            if (probe.certificate) {
                out.verdict = ColumnVerdict::EventualAbsence;
                out.onset_j = j;
                out.j_scanned = probe.certificate->tail_j;
                out.provenance = probe.certificate->provenance;
                out.certificate = TailCertificate{std::move(*probe.certificate)};
                return out;
            }
            if (probe.found_at_row > j) {
                j = probe.found_at_row; // the column reappears; resume there
                continue;
            }
            out.j_scanned = j_limit; // absent throughout but not certifiable
            return out;
        }
        if (k != 2) {
            // No certified ceiling exists for higher powers: report eventual
            // absence only when the absence persists through the whole scan.
            const int onset = j;
            int next_hit = 0;
            for (int jj = j + 1; jj <= j_limit; ++jj) {
                const auto sb2 = policy.bound_for(k, jj, m);
                if (!sb2) {
                    out.j_scanned = jj - 1;
                    return out; // tail not verifiable at this scale
                }
                const TaxicabOutcome o = scan(k, jj, m, sb2->value, cap, false);
                out.j_scanned = jj;
                if (o.found()) {
                    next_hit = jj;
                    break;
                }
            }
            if (next_hit == 0) {
                out.verdict = ColumnVerdict::EventualAbsence;
                out.onset_j = onset;
                out.provenance = Provenance::Empirical;
                return out;
            }
            j = next_hit;
            continue;
        }
        ++j; // k = 2 below the certified range: keep scanning
    }
    out.j_scanned = j_limit;
    return out;
}

ColumnClassification Searcher::classify_column(int k, std::uint32_t m, int j_limit,
                                               const BoundPolicy& policy) {
    validate_query(k, 2, m, 2);
    return classify_with_cap(k, m, j_limit, policy, m + 1);
}

MembershipSequence Searcher::membership_sequence(int k, std::uint32_t m_limit,
                                                 int j_limit, const BoundPolicy& policy) {
    if (m_limit < 1) throw ConfigError("membership sequence: m_limit must be >= 1");
    if (m_limit >= kMaxSaturatingCap) {
        throw ConfigError("membership sequence: m_limit exceeds the saturating range");
    }
    MembershipSequence seq;
    seq.k = k;
    seq.columns.resize(m_limit);
    const std::uint32_t cap = m_limit + 1;
    detail::parallel_for(m_limit, options_.workers, [&](std::size_t idx) {
        const std::uint32_t m = static_cast<std::uint32_t>(idx + 1);
        try {
            seq.columns[idx] = classify_with_cap(k, m, j_limit, policy, cap);
        } catch (const ResourceBudgetError&) {
            ColumnClassification c;
            c.k = k;
            c.m = m;
            c.verdict = ColumnVerdict::Undetermined;
            seq.columns[idx] = std::move(c);
        }
    });
    for (const auto& column : seq.columns) {
        switch (column.verdict) {
            case ColumnVerdict::EventualIncrement: seq.members.push_back(column.m); break;
            case ColumnVerdict::EventualAbsence: seq.complement.push_back(column.m); break;
            case ColumnVerdict::Undetermined: seq.undetermined.push_back(column.m); break;
        }
    }
    return seq;
}

// ---------------------------------------------------------------------------
// Certificate serialization

std::string to_text(const TailCertificate& certificate) {
    std::ostringstream out;
    if (const auto* inc = std::get_if<IncrementCertificate>(&certificate)) {
        const std::uint64_t unit_floor =
            (std::uint64_t(1) << inc->k) * std::uint64_t(inc->start_j + 1);
        out << "tail-certificate: increment\n"
            << "k: " << inc->k << "\n"
            << "m: " << inc->m << "\n"
            << "start-j: " << inc->start_j << "\n"
            << "value-at-start: " << inc->first_value << "\n"
            << "bound-searched: " << inc->bound_searched << "\n"
            << "check: " << inc->first_value << "+1 < 2^" << inc->k << "*"
            << (inc->start_j + 1) << " = " << unit_floor << "\n"
            << "implies: value(j) = " << inc->first_value << " + (j - " << inc->start_j
            << ") for all j >= " << inc->start_j << "\n"
            << "provenance: " << to_string(inc->provenance) << "\n";
        return out.str();
    }
    const auto& non = std::get<NonexistenceCertificate>(certificate);
    out << "tail-certificate: nonexistence\n"
        << "k: 2\n"
        << "m: " << non.m << "\n"
        << "start-j: " << non.start_j << "\n"
        << "tail-row: " << non.tail_j << "\n"
        << "tail-threshold: " << non.tail_threshold << "\n"
        << "bound-searched: " << non.bound_searched << "\n"
        << "check-a: row " << non.tail_j << " has no exact-" << non.m
        << " cell up to " << non.bound_searched << "\n"
        << "check-b: row " << non.tail_j << " cells are >= " << (non.m + 1)
        << " from " << non.tail_threshold << " through " << non.bound_searched << "\n"
        << "check-c: " << non.tail_threshold << " <= 4*" << non.tail_j
        << "+3 = " << (4 * std::uint64_t(non.tail_j) + 3) << "\n";
    for (const auto& low : non.low_rows) {
        out << "row: j=" << low.j << " " << to_string(low.status)
            << " bound=" << low.bound_used
            << " provenance=" << to_string(low.provenance) << "\n";
    }
    out << "implies: no n counts exactly " << non.m << " for any j >= " << non.start_j
        << "\n"
        << "provenance: " << to_string(non.provenance) << "\n";
    return out.str();
}

} // namespace taxicab
