#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "taxicab/solver.hpp"

namespace taxicab {

// Existence grids over (j, m), their bitmap/CSV renderings, and the boundary
// between the chaotic low-j region and the settled tail.

struct IntRange {
    int lo = 0;
    int hi = 0; // inclusive

    int size() const { return hi - lo + 1; }
    bool contains(int v) const { return v >= lo && v <= hi; }
};

enum class CellStatus : std::uint8_t { Exists, Absent, Undetermined };

inline const char* to_string(CellStatus s) {
    switch (s) {
        case CellStatus::Exists: return "exists";
        case CellStatus::Absent: return "absent";
        case CellStatus::Undetermined: return "undetermined";
    }
    return "unknown";
}

struct GridCell {
    CellStatus status = CellStatus::Undetermined;
    std::uint64_t n = 0; // the found value when status == Exists
    Provenance provenance = Provenance::Empirical;
};

class ExistenceGrid {
public:
    ExistenceGrid(int k, IntRange j_range, IntRange m_range);

    int exponent() const { return k_; }
    IntRange j_range() const { return j_range_; }
    IntRange m_range() const { return m_range_; }

    const GridCell& cell(int j, std::uint32_t m) const;
    GridCell& cell(int j, std::uint32_t m);

    bool has_undetermined() const;

private:
    int k_;
    IntRange j_range_;
    IntRange m_range_;
    std::vector<GridCell> cells_; // column-major: all m for j_lo, then j_lo+1, ...
};

/// Builds one column per part count j: a single table row scan records the
/// first hit for every m in range simultaneously; cells with no hit become
/// Absent (certified where the square ceiling applies) or Undetermined when
/// the policy refuses a bound at that scale. Columns run in parallel across
/// `workers` threads; the output does not depend on scheduling.
ExistenceGrid build_grid(Searcher& searcher, int k, IntRange j_range, IntRange m_range,
                         const BoundPolicy& policy, int workers = 1);

enum class UndeterminedPixel { Error, White, Black };

/// Plain PBM (P1): j runs left to right, m top to bottom; 0 (white) marks an
/// existing value, 1 (black) a vanished one. Undetermined cells require an
/// explicit rendering choice, which is recorded in a comment line.
void write_pbm(const ExistenceGrid& grid, std::ostream& out,
               UndeterminedPixel policy = UndeterminedPixel::Error);
void write_pbm(const ExistenceGrid& grid, const std::filesystem::path& path,
               UndeterminedPixel policy = UndeterminedPixel::Error);

/// CSV with header "k,j,m,status,n,provenance", j-major, n blank unless the
/// cell exists.
void write_grid_csv(const ExistenceGrid& grid, std::ostream& out);
void write_grid_csv(const ExistenceGrid& grid, const std::filesystem::path& path);

struct BoundaryPoint {
    std::uint32_t m = 0;
    int onset_j = 0;
    Provenance provenance = Provenance::Empirical;
};

struct BoundaryFunction {
    int k = 0;
    std::vector<BoundaryPoint> points; // ascending m
};

/// Per m: the certificate onset when the classification settled the column,
/// otherwise the onset observed in the grid alone (flagged empirical).
/// Columns with nothing to report are skipped.
BoundaryFunction extract_boundary(const ExistenceGrid& grid,
                                  std::span<const ColumnClassification> classifications);

/// Boundary points from classifications alone (no grid fallback);
/// undetermined columns are skipped.
BoundaryFunction boundary_from_classifications(
    int k, std::span<const ColumnClassification> classifications);

/// CSV with header "m,J,provenance".
void write_boundary_csv(const BoundaryFunction& boundary, std::ostream& out);
void write_boundary_csv(const BoundaryFunction& boundary,
                        const std::filesystem::path& path);

/// CSV with header "m,classification,J"; J is blank for undetermined columns.
void write_sequence_csv(const MembershipSequence& sequence, std::ostream& out);
void write_sequence_csv(const MembershipSequence& sequence,
                        const std::filesystem::path& path);

} // namespace taxicab
