#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "taxicab/partition.hpp"
#include "taxicab/provenance.hpp"
#include "taxicab/squares.hpp"

namespace taxicab {

// Bounded search for the smallest n that is a sum of exactly j positive
// k-th powers in exactly (or at least) m ways, plus the machinery that
// certifies what a column (fixed m) does for every larger part count.

enum class SearchStatus { Found, ProvedAbsent, AbsentUpTo };

inline const char* to_string(SearchStatus s) {
    switch (s) {
        case SearchStatus::Found: return "found";
        case SearchStatus::ProvedAbsent: return "proved-absent";
        case SearchStatus::AbsentUpTo: return "absent-up-to";
    }
    return "unknown";
}

struct TaxicabOutcome {
    int k = 0;
    int j = 0;
    std::uint32_t m = 0;
    SearchStatus status = SearchStatus::AbsentUpTo;
    std::uint64_t n = 0; // meaningful when status == Found
    std::uint64_t bound_used = 0;
    Provenance provenance = Provenance::Empirical;

    bool found() const { return status == SearchStatus::Found; }
};

/// Certifies that from part count start_j on, the column value advances by
/// exactly one per extra part: value(j) = first_value + (j - start_j).
/// Issued only when first_value + 1 < 2^k * (start_j + 1), which forces a
/// unit part into every representation at all the shifted positions, so both
/// the hit and its minimality transfer upward.
struct IncrementCertificate {
    int k = 0;
    std::uint32_t m = 0;
    int start_j = 0;
    std::uint64_t first_value = 0; // the column value at start_j
    std::uint64_t bound_searched = 0;
    Provenance provenance = Provenance::Certified;
};

/// Certifies that no n is a sum of exactly j positive squares in exactly m
/// ways for any j >= start_j. The witness row is tail_j: (a) the row has no
/// exact-m cell up to bound_searched, (b) every cell from tail_threshold up
/// is at least m+1, and (c) tail_threshold <= 4 * tail_j + 3, which lets the
/// unit-part chain carry both facts to every larger j. Rows between start_j
/// and tail_j are decided individually (outcomes in low_rows).
struct NonexistenceCertificate {
    std::uint32_t m = 0;
    int start_j = 0;
    int tail_j = 0;                  // witness row
    std::uint64_t tail_threshold = 0; // minimal t satisfying (b) and (c)
    std::uint64_t bound_searched = 0; // the certified ceiling for row tail_j
    std::vector<TaxicabOutcome> low_rows;
    Provenance provenance = Provenance::Certified;
};

using TailCertificate = std::variant<IncrementCertificate, NonexistenceCertificate>;

/// Line-oriented audit record of every inequality and bound the certificate
/// relies on.
std::string to_text(const TailCertificate& certificate);

enum class ColumnVerdict { EventualIncrement, EventualAbsence, Undetermined };

inline const char* to_string(ColumnVerdict v) {
    switch (v) {
        case ColumnVerdict::EventualIncrement: return "eventual-increment";
        case ColumnVerdict::EventualAbsence: return "eventual-absence";
        case ColumnVerdict::Undetermined: return "undetermined";
    }
    return "unknown";
}

struct ColumnClassification {
    int k = 0;
    std::uint32_t m = 0;
    ColumnVerdict verdict = ColumnVerdict::Undetermined;
    int onset_j = 0;   // the J from which the verdict holds (determined verdicts)
    int j_scanned = 0; // how far the scan went
    std::optional<TailCertificate> certificate;
    Provenance provenance = Provenance::Empirical;
};

/// Supplies per-(k, j, m) search ceilings. The certified policy uses the
/// square bound (k = 2, j >= 5) and falls back to the conjectural formula
/// elsewhere; the conjectural policy uses (mj + j + C)^k throughout. A
/// nullopt bound means the scan limit would be exceeded and the cell must
/// stay undetermined rather than be guessed at.
struct BoundPolicy {
    enum class Kind { Certified, Conjectural };

    Kind kind = Kind::Certified;
    std::uint64_t conjectural_offset = 150; // C in (mj + j + C)^k
    std::uint64_t scan_limit = 50'000'000;  // refuse bounds beyond this

    static BoundPolicy certified();
    static BoundPolicy conjectural(std::uint64_t offset = 150,
                                   std::uint64_t scan_limit = 50'000'000);

    std::optional<SearchBound> bound_for(int k, int j, std::uint32_t m) const;
};

struct MembershipSequence {
    int k = 0;
    std::vector<std::uint32_t> members;      // columns that eventually increment
    std::vector<std::uint32_t> complement;   // columns that eventually vanish
    std::vector<std::uint32_t> undetermined; // columns the scan could not settle
    std::vector<ColumnClassification> columns; // by m, ascending
};

struct SearcherOptions {
    std::uint64_t memory_budget = kDefaultMemoryBudget;
    int workers = 1;
    // Scans at j = 2 switch to pair enumeration past this bound; the table
    // route would need bound * 3 cells for what a heap does in O(bound^(2/k)).
    std::uint64_t pair_scan_threshold = 4'000'000;
};

/// Search front end over a grow-on-demand table cache. Queries against the
/// same exponent and cap share tables; growth is geometric so repeated
/// slightly-larger requests do not rebuild from scratch each time. Safe for
/// concurrent use; the cache hands out immutable snapshots.
class Searcher {
public:
    explicit Searcher(SearcherOptions options = {});

    /// Smallest n in [j, bound] with exactly m representations as a sum of j
    /// positive k-th powers. Absence within the bound upgrades to
    /// ProvedAbsent when k = 2 and the bound reaches the certified ceiling.
    TaxicabOutcome taxicab(int k, int j, std::uint32_t m, std::uint64_t bound);

    /// Same scan with an at-least-m hit condition.
    TaxicabOutcome taxicab_at_least(int k, int j, std::uint32_t m, std::uint64_t bound);

    /// taxicab(2, j, m, certified ceiling), with provenance recorded.
    /// cap_hint (>= m+1) lets batch callers share one saturating table
    /// across many m; 0 picks the minimal cap.
    TaxicabOutcome decide_squares(int j, std::uint32_t m, std::uint32_t cap_hint = 0);

    /// Issues an increment certificate at start_j, or nullopt if the column
    /// value there is too large (or absent). bound = 0 picks the certified
    /// ceiling for squares and the conjectural default otherwise.
    std::optional<IncrementCertificate> certify_tail_increment(int k, int start_j,
                                                               std::uint32_t m,
                                                               std::uint64_t bound = 0);

    /// Searches rows start_j..row_limit for a witness row certifying that
    /// the column is empty for every j >= start_j (squares only).
    std::optional<NonexistenceCertificate> certify_tail_nonexistence(std::uint32_t m,
                                                                     int start_j,
                                                                     int row_limit = 64);

    /// Scans part counts upward until a tail certificate settles the column.
    /// Squares get certified verdicts; higher powers are empirical: eventual
    /// absence is reported only when absence persists to j_limit, and bound
    /// or budget exhaustion yields Undetermined.
    ColumnClassification classify_column(int k, std::uint32_t m, int j_limit,
                                         const BoundPolicy& policy);

    /// Classifies every column m = 1..m_limit and partitions them by
    /// verdict. Per-column resource exhaustion is reported as undetermined,
    /// never silently dropped. Columns are classified in parallel when the
    /// searcher was configured with more than one worker.
    MembershipSequence membership_sequence(int k, std::uint32_t m_limit, int j_limit,
                                           const BoundPolicy& policy);

    /// Immutable snapshot of a saturating table covering at least
    /// (n_max, j_max) for this exponent and cap.
    std::shared_ptr<const CountTable> table(int k, std::uint32_t cap,
                                            std::uint64_t n_max, int j_max);

    /// Registers an externally built table (e.g. loaded from disk) so later
    /// queries can start from it.
    void adopt_table(CountTable table);

    /// The currently cached table for (k, cap), if any. Never builds.
    std::shared_ptr<const CountTable> peek_table(int k, std::uint32_t cap);

    void clear_tables();

    const SearcherOptions& options() const { return options_; }

private:
    struct CacheSlot {
        std::mutex mutex;
        std::shared_ptr<const CountTable> table;
    };

    ColumnClassification classify_with_cap(int k, std::uint32_t m, int j_limit,
                                           const BoundPolicy& policy, std::uint32_t cap);

    struct NonexistenceProbe {
        std::optional<NonexistenceCertificate> certificate;
        int found_at_row = 0; // a hit here interrupted the probe
    };
    NonexistenceProbe probe_nonexistence(std::uint32_t m, int start_j, int row_limit,
                                         std::uint32_t cap);

    TaxicabOutcome decide_squares_with_cap(int j, std::uint32_t m, std::uint32_t cap);

    TaxicabOutcome scan(int k, int j, std::uint32_t m, std::uint64_t bound,
                        std::uint32_t cap, bool at_least);

    SearcherOptions options_;
    std::mutex cache_mutex_;
    std::map<std::pair<int, std::uint32_t>, std::shared_ptr<CacheSlot>> cache_;
};

} // namespace taxicab
