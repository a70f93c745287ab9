#include "taxicab/grid.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>

#include "parallel.hpp"

namespace taxicab {

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    return out;
}

} // namespace

ExistenceGrid::ExistenceGrid(int k, IntRange j_range, IntRange m_range)
    : k_(k), j_range_(j_range), m_range_(m_range) {
    if (j_range.lo < 1 || j_range.hi < j_range.lo) {
        throw ConfigError("grid: j range is empty or starts below 1");
    }
    if (m_range.lo < 1 || m_range.hi < m_range.lo) {
        throw ConfigError("grid: m range is empty or starts below 1");
    }
    cells_.resize(std::size_t(j_range.size()) * std::size_t(m_range.size()));
}

const GridCell& ExistenceGrid::cell(int j, std::uint32_t m) const {
    if (!j_range_.contains(j) || !m_range_.contains(int(m))) {
        throw ConfigError("grid: cell (j=" + std::to_string(j) +
                          ", m=" + std::to_string(m) + ") out of range");
    }
    return cells_[std::size_t(j - j_range_.lo) * m_range_.size() + (int(m) - m_range_.lo)];
}

GridCell& ExistenceGrid::cell(int j, std::uint32_t m) {
    return const_cast<GridCell&>(std::as_const(*this).cell(j, m));
}

bool ExistenceGrid::has_undetermined() const {
    return std::any_of(cells_.begin(), cells_.end(), [](const GridCell& c) {
        return c.status == CellStatus::Undetermined;
    });
}

ExistenceGrid build_grid(Searcher& searcher, int k, IntRange j_range, IntRange m_range,
                         const BoundPolicy& policy, int workers) {
    ExistenceGrid grid(k, j_range, m_range);
    if (std::uint64_t(m_range.hi) + 1 > kMaxSaturatingCap) {
        throw ConfigError("grid: m range exceeds the saturating comparison range");
    }
    const std::uint32_t cap = std::uint32_t(m_range.hi) + 1;

    auto build_column = [&](std::size_t column) {
        const int j = j_range.lo + int(column);
        // The policy ceilings grow with m; scan to the largest one granted.
        std::uint64_t scan_to = 0;
        int m_covered = m_range.lo - 1;
        for (int m = m_range.lo; m <= m_range.hi; ++m) {
            const auto sb = policy.bound_for(k, j, std::uint32_t(m));
            if (!sb) break;
            scan_to = std::max(scan_to, sb->value);
            m_covered = m;
        }
        if (m_covered < m_range.lo) return; // whole column stays undetermined
        try {
            const auto tbl = searcher.table(k, cap, scan_to, j);
            tbl->scan_saturating_row(
                j, std::uint64_t(j), scan_to, [&](std::uint64_t n, std::uint32_t v) {
                    if (v < std::uint32_t(m_range.lo) || v > std::uint32_t(m_covered)) {
                        return true;
                    }
                    GridCell& cell = grid.cell(j, v);
                    if (cell.status != CellStatus::Exists) {
                        cell = GridCell{CellStatus::Exists, n, Provenance::Certified};
                    }
                    return true;
                });
            for (int m = m_range.lo; m <= m_covered; ++m) {
                GridCell& cell = grid.cell(j, std::uint32_t(m));
                if (cell.status == CellStatus::Exists) continue;
                Provenance prov = Provenance::Empirical;
                if (k == 2 && j >= 5 && m >= 2) {
                    prov = square_search_bound(std::uint32_t(m), j).provenance;
                }
                cell = GridCell{CellStatus::Absent, 0, prov};
            }
        } catch (const ResourceBudgetError& e) {
            throw ResourceBudgetError("grid column j=" + std::to_string(j) + " (bound " +
                                      std::to_string(scan_to) + "): " + e.what());
        }
    };
    detail::parallel_for(std::size_t(j_range.size()), workers, build_column);
    return grid;
}

// ---------------------------------------------------------------------------
// PBM

void write_pbm(const ExistenceGrid& grid, std::ostream& out, UndeterminedPixel policy) {
    const bool undecided = grid.has_undetermined();
    if (undecided && policy == UndeterminedPixel::Error) {
        throw ConfigError("pbm: grid has undetermined cells and no rendering choice");
    }
    out << "P1\n";
    if (undecided) {
        out << "# undetermined=" << (policy == UndeterminedPixel::White ? "white" : "black")
            << "\n";
    }
    out << grid.j_range().size() << " " << grid.m_range().size() << "\n";
    for (int m = grid.m_range().lo; m <= grid.m_range().hi; ++m) {
        for (int j = grid.j_range().lo; j <= grid.j_range().hi; ++j) {
            const GridCell& cell = grid.cell(j, std::uint32_t(m));
            int pixel = 0;
            switch (cell.status) {
                case CellStatus::Exists: pixel = 0; break;
                case CellStatus::Absent: pixel = 1; break;
                case CellStatus::Undetermined:
                    pixel = policy == UndeterminedPixel::Black ? 1 : 0;
                    break;
            }
            if (j > grid.j_range().lo) out << " ";
            out << pixel;
        }
        out << "\n";
    }
    if (!out) throw Error("pbm: write failed");
}

void write_pbm(const ExistenceGrid& grid, const std::filesystem::path& path,
               UndeterminedPixel policy) {
    if (grid.has_undetermined() && policy == UndeterminedPixel::Error) {
        throw ConfigError("pbm: grid has undetermined cells and no rendering choice");
    }
    auto out = open_output(path);
    write_pbm(grid, out, policy);
}

// ---------------------------------------------------------------------------
// CSV

void write_grid_csv(const ExistenceGrid& grid, std::ostream& out) {
    out << "k,j,m,status,n,provenance\n";
    for (int j = grid.j_range().lo; j <= grid.j_range().hi; ++j) {
        for (int m = grid.m_range().lo; m <= grid.m_range().hi; ++m) {
            const GridCell& cell = grid.cell(j, std::uint32_t(m));
            out << grid.exponent() << "," << j << "," << m << "," << to_string(cell.status)
                << ",";
            if (cell.status == CellStatus::Exists) out << cell.n;
            out << "," << to_string(cell.provenance) << "\n";
        }
    }
    if (!out) throw Error("csv: write failed");
}

void write_grid_csv(const ExistenceGrid& grid, const std::filesystem::path& path) {
    auto out = open_output(path);
    write_grid_csv(grid, out);
}

BoundaryFunction extract_boundary(const ExistenceGrid& grid,
                                  std::span<const ColumnClassification> classifications) {
    BoundaryFunction boundary;
    boundary.k = grid.exponent();
    for (int m = grid.m_range().lo; m <= grid.m_range().hi; ++m) {
        const ColumnClassification* settled = nullptr;
        for (const auto& c : classifications) {
            if (int(c.m) == m) {
                settled = &c;
                break;
            }
        }
        if (settled && settled->verdict != ColumnVerdict::Undetermined) {
            boundary.points.push_back(
                BoundaryPoint{std::uint32_t(m), settled->onset_j, settled->provenance});
            continue;
        }
        // Observed onset: the earliest j from which the final column state
        // (absent, or existing with unit steps) persists through the grid.
        const IntRange jr = grid.j_range();
        const GridCell& last = grid.cell(jr.hi, std::uint32_t(m));
        if (last.status == CellStatus::Undetermined) continue;
        int onset = jr.hi;
        if (last.status == CellStatus::Absent) {
            while (onset > jr.lo &&
                   grid.cell(onset - 1, std::uint32_t(m)).status == CellStatus::Absent) {
                --onset;
            }
        } else {
            while (onset > jr.lo) {
                const GridCell& prev = grid.cell(onset - 1, std::uint32_t(m));
                if (prev.status != CellStatus::Exists ||
                    prev.n + 1 != grid.cell(onset, std::uint32_t(m)).n) {
                    break;
                }
                --onset;
            }
        }
        boundary.points.push_back(
            BoundaryPoint{std::uint32_t(m), onset, Provenance::Empirical});
    }
    return boundary;
}

BoundaryFunction boundary_from_classifications(
    int k, std::span<const ColumnClassification> classifications) {
    BoundaryFunction boundary;
    boundary.k = k;
    for (const auto& c : classifications) {
        if (c.verdict == ColumnVerdict::Undetermined) continue;
        boundary.points.push_back(BoundaryPoint{c.m, c.onset_j, c.provenance});
    }
    return boundary;
}

void write_boundary_csv(const BoundaryFunction& boundary, std::ostream& out) {
    out << "m,J,provenance\n";
    for (const auto& pt : boundary.points) {
        out << pt.m << "," << pt.onset_j << "," << to_string(pt.provenance) << "\n";
    }
    if (!out) throw Error("csv: write failed");
}

void write_boundary_csv(const BoundaryFunction& boundary,
                        const std::filesystem::path& path) {
    auto out = open_output(path);
    write_boundary_csv(boundary, out);
}

void write_sequence_csv(const MembershipSequence& sequence, std::ostream& out) {
    out << "m,classification,J\n";
    for (const auto& column : sequence.columns) {
        out << column.m << ",";
        switch (column.verdict) {
            case ColumnVerdict::EventualIncrement: out << "increment"; break;
            case ColumnVerdict::EventualAbsence: out << "absence"; break;
            case ColumnVerdict::Undetermined: out << "undetermined"; break;
        }
        out << ",";
        if (column.verdict != ColumnVerdict::Undetermined) out << column.onset_j;
        out << "\n";
    }
    if (!out) throw Error("csv: write failed");
}

void write_sequence_csv(const MembershipSequence& sequence,
                        const std::filesystem::path& path) {
    auto out = open_output(path);
    write_sequence_csv(sequence, out);
}

} // namespace taxicab
