#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "taxicab/fit.hpp"
#include "taxicab/grid.hpp"
#include "taxicab/solver.hpp"
#include "taxicab/table_io.hpp"

namespace py = pybind11;
using namespace taxicab;

namespace {

std::optional<std::string> certificate_text(const ColumnClassification& c) {
    if (!c.certificate) return std::nullopt;
    return to_text(*c.certificate);
}

UndeterminedPixel pixel_from_name(const std::string& name) {
    if (name == "error") return UndeterminedPixel::Error;
    if (name == "white") return UndeterminedPixel::White;
    if (name == "black") return UndeterminedPixel::Black;
    throw ConfigError("undetermined must be error, white or black");
}

BoundPolicy policy_from_name(const std::string& name, std::uint64_t constant,
                             std::uint64_t scan_limit) {
    if (name == "certified") return BoundPolicy::certified();
    if (name == "conjectural") return BoundPolicy::conjectural(constant, scan_limit);
    throw ConfigError("policy must be certified or conjectural");
}

} // namespace

PYBIND11_MODULE(_taxicab, m) {
    m.doc() = "Counting and searching sums of exactly j positive k-th powers";

    py::register_exception<ArithmeticOverflowError>(m, "ArithmeticOverflow");
    py::register_exception<ResourceBudgetError>(m, "ResourceBudgetExceeded");
    py::register_exception<StepBudgetError>(m, "StepBudgetExceeded");
    py::register_exception<ConfigError>(m, "ConfigurationError");

    m.def(
        "count",
        [](int k, std::uint64_t n, int j, std::optional<std::uint64_t> max_part) {
            return count(PartitionQuery{k, n, j, max_part}).value;
        },
        py::arg("k"), py::arg("n"), py::arg("j"), py::arg("max_part") = py::none(),
        "Exact number of multisets of j positive k-th powers summing to n");

    m.def(
        "representations",
        [](int k, std::uint64_t n, int j, std::optional<std::uint64_t> max_part,
           std::uint64_t step_budget) {
            return representations(PartitionQuery{k, n, j, max_part}, step_budget).parts;
        },
        py::arg("k"), py::arg("n"), py::arg("j"), py::arg("max_part") = py::none(),
        py::arg("step_budget") = kDefaultStepBudget,
        "All base sequences, nondecreasing, in lexicographic order");

    m.def("is_sum_of_j_squares", &is_sum_of_j_squares, py::arg("n"), py::arg("j"));

    m.def(
        "square_search_bound",
        [](std::uint32_t m, int j) {
            const auto sb = square_search_bound(m, j);
            return py::make_tuple(sb.value, to_string(sb.provenance));
        },
        py::arg("m"), py::arg("j"),
        "Certified scan ceiling (value, provenance) for squares");

    m.def(
        "pigeonhole_lower_bound",
        [](std::uint64_t n, int j) { return pigeonhole_lower_bound(n, j).value; },
        py::arg("n"), py::arg("j"));

    m.def("five_square_tail_threshold", [] {
        const auto tail = five_square_tail_threshold();
        return py::make_tuple(tail.threshold, tail.guaranteed_ways);
    });

    py::class_<TaxicabOutcome>(m, "Outcome")
        .def_readonly("k", &TaxicabOutcome::k)
        .def_readonly("j", &TaxicabOutcome::j)
        .def_readonly("m", &TaxicabOutcome::m)
        .def_readonly("n", &TaxicabOutcome::n)
        .def_readonly("bound_used", &TaxicabOutcome::bound_used)
        .def_property_readonly("found", &TaxicabOutcome::found)
        .def_property_readonly("status",
                               [](const TaxicabOutcome& o) { return to_string(o.status); })
        .def_property_readonly(
            "provenance",
            [](const TaxicabOutcome& o) { return to_string(o.provenance); })
        .def("__repr__", [](const TaxicabOutcome& o) {
            std::string text = "Outcome(k=" + std::to_string(o.k) +
                               ", j=" + std::to_string(o.j) + ", m=" + std::to_string(o.m) +
                               ", status=" + to_string(o.status);
            if (o.found()) text += ", n=" + std::to_string(o.n);
            return text + ")";
        });

    py::class_<ColumnClassification>(m, "ColumnClassification")
        .def_readonly("k", &ColumnClassification::k)
        .def_readonly("m", &ColumnClassification::m)
        .def_readonly("onset_j", &ColumnClassification::onset_j)
        .def_readonly("j_scanned", &ColumnClassification::j_scanned)
        .def_property_readonly(
            "verdict",
            [](const ColumnClassification& c) { return to_string(c.verdict); })
        .def_property_readonly(
            "provenance",
            [](const ColumnClassification& c) { return to_string(c.provenance); })
        .def_property_readonly("certificate_text", &certificate_text);

    py::class_<MembershipSequence>(m, "MembershipSequence")
        .def_readonly("k", &MembershipSequence::k)
        .def_readonly("members", &MembershipSequence::members)
        .def_readonly("complement", &MembershipSequence::complement)
        .def_readonly("undetermined", &MembershipSequence::undetermined)
        .def_readonly("columns", &MembershipSequence::columns);

    py::class_<ExistenceGrid>(m, "ExistenceGrid")
        .def_property_readonly("k", &ExistenceGrid::exponent)
        .def_property_readonly("j_range",
                               [](const ExistenceGrid& g) {
                                   return py::make_tuple(g.j_range().lo, g.j_range().hi);
                               })
        .def_property_readonly("m_range",
                               [](const ExistenceGrid& g) {
                                   return py::make_tuple(g.m_range().lo, g.m_range().hi);
                               })
        .def(
            "cell",
            [](const ExistenceGrid& g, int j, std::uint32_t m) {
                const auto& cell = g.cell(j, m);
                return py::make_tuple(to_string(cell.status),
                                      cell.status == CellStatus::Exists
                                          ? py::cast(cell.n)
                                          : py::none(),
                                      to_string(cell.provenance));
            },
            py::arg("j"), py::arg("m"), "(status, n, provenance) of one cell")
        .def(
            "write_pbm",
            [](const ExistenceGrid& g, const std::filesystem::path& path,
               const std::string& undetermined) {
                write_pbm(g, path, pixel_from_name(undetermined));
            },
            py::arg("path"), py::arg("undetermined") = "error")
        .def(
            "write_csv",
            [](const ExistenceGrid& g, const std::filesystem::path& path) {
                write_grid_csv(g, path);
            },
            py::arg("path"));

    py::class_<Searcher>(m, "Searcher")
        .def(py::init([](std::uint64_t memory_budget_mb, int workers) {
                 SearcherOptions opts;
                 opts.memory_budget = memory_budget_mb << 20;
                 opts.workers = workers;
                 return std::make_unique<Searcher>(opts);
             }),
             py::arg("memory_budget_mb") = 2048, py::arg("workers") = 1)
        .def("taxicab", &Searcher::taxicab, py::arg("k"), py::arg("j"), py::arg("m"),
             py::arg("bound"), py::call_guard<py::gil_scoped_release>())
        .def("taxicab_at_least", &Searcher::taxicab_at_least, py::arg("k"), py::arg("j"),
             py::arg("m"), py::arg("bound"), py::call_guard<py::gil_scoped_release>())
        .def("decide_squares", &Searcher::decide_squares, py::arg("j"), py::arg("m"),
             py::arg("cap_hint") = 0, py::call_guard<py::gil_scoped_release>())
        .def(
            "certify_tail_increment",
            [](Searcher& s, int k, int start_j, std::uint32_t m,
               std::uint64_t bound) -> std::optional<std::string> {
                const auto cert = s.certify_tail_increment(k, start_j, m, bound);
                if (!cert) return std::nullopt;
                return to_text(TailCertificate{*cert});
            },
            py::arg("k"), py::arg("start_j"), py::arg("m"), py::arg("bound") = 0,
            py::call_guard<py::gil_scoped_release>(),
            "Certificate text, or None on refusal")
        .def(
            "certify_tail_nonexistence",
            [](Searcher& s, std::uint32_t m, int start_j,
               int row_limit) -> std::optional<std::string> {
                const auto cert = s.certify_tail_nonexistence(m, start_j, row_limit);
                if (!cert) return std::nullopt;
                return to_text(TailCertificate{*cert});
            },
            py::arg("m"), py::arg("start_j"), py::arg("row_limit") = 64,
            py::call_guard<py::gil_scoped_release>())
        .def(
            "classify_column",
            [](Searcher& s, int k, std::uint32_t m, int j_limit,
               const std::string& policy, std::uint64_t conjectural_constant,
               std::uint64_t scan_limit) {
                return s.classify_column(
                    k, m, j_limit,
                    policy_from_name(policy, conjectural_constant, scan_limit));
            },
            py::arg("k"), py::arg("m"), py::arg("j_limit") = 40,
            py::arg("policy") = "certified", py::arg("conjectural_constant") = 150,
            py::arg("scan_limit") = 50'000'000,
            py::call_guard<py::gil_scoped_release>())
        .def(
            "membership_sequence",
            [](Searcher& s, int k, std::uint32_t m_limit, int j_limit,
               const std::string& policy, std::uint64_t conjectural_constant,
               std::uint64_t scan_limit) {
                return s.membership_sequence(
                    k, m_limit, j_limit,
                    policy_from_name(policy, conjectural_constant, scan_limit));
            },
            py::arg("k"), py::arg("m_limit"), py::arg("j_limit") = 40,
            py::arg("policy") = "certified", py::arg("conjectural_constant") = 150,
            py::arg("scan_limit") = 50'000'000,
            py::call_guard<py::gil_scoped_release>());

    m.def(
        "build_grid",
        [](Searcher& s, int k, std::pair<int, int> j_range, std::pair<int, int> m_range,
           const std::string& policy, std::uint64_t conjectural_constant,
           std::uint64_t scan_limit, int workers) {
            return build_grid(s, k, IntRange{j_range.first, j_range.second},
                              IntRange{m_range.first, m_range.second},
                              policy_from_name(policy, conjectural_constant, scan_limit),
                              workers);
        },
        py::arg("searcher"), py::arg("k"), py::arg("j_range"), py::arg("m_range"),
        py::arg("policy") = "certified", py::arg("conjectural_constant") = 150,
        py::arg("scan_limit") = 50'000'000, py::arg("workers") = 1,
        py::call_guard<py::gil_scoped_release>());

    m.def(
        "fit_root_affine",
        [](const std::vector<std::pair<double, double>>& pts, int root) {
            std::vector<FitPoint> points;
            points.reserve(pts.size());
            for (const auto& [x, y] : pts) points.push_back({x, y});
            const auto fit = fit_root_affine(points, root);
            return py::make_tuple(fit.a, fit.b, fit.residual);
        },
        py::arg("points"), py::arg("root"), "(a, b, residual) for y = a*x^(1/root)+b");

    m.def(
        "fit_exponential",
        [](const std::vector<std::pair<double, double>>& pts) {
            std::vector<FitPoint> points;
            points.reserve(pts.size());
            for (const auto& [x, y] : pts) points.push_back({x, y});
            const auto fit = fit_exponential(points);
            return py::make_tuple(fit.a, fit.b, fit.residual);
        },
        py::arg("points"), "(a, b, residual) for y = a*exp(b*x)");

#ifdef TAXICAB_VERSION
    m.attr("__version__") = TAXICAB_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}
