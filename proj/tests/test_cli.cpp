#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

using json = nlohmann::json;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(TAXICAB_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult result;
    char buffer[4096];
    while (std::size_t got = std::fread(buffer, 1, sizeof buffer, pipe)) {
        result.out.append(buffer, got);
    }
    const int status = pclose(pipe);
    result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

json first_line_json(const std::string& text) {
    const auto newline = text.find('\n');
    return json::parse(text.substr(0, newline));
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("taxicab-cli-" + std::to_string(std::rand()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

} // namespace

TEST_CASE("count subcommand") {
    auto r = run_cli("count --k 2 --n 50 --j 10");
    CHECK(r.code == 0);
    auto rec = first_line_json(r.out);
    CHECK(rec["count"] == 4);
    CHECK(rec["mu"].is_null());

    r = run_cli("count --k 2 --n 50 --j 2 --max-part 25");
    CHECK(r.code == 0);
    CHECK(first_line_json(r.out)["count"] == 1);

    r = run_cli("count --k 2 --n 3 --j 2");
    CHECK(r.code == 0);
    CHECK(first_line_json(r.out)["count"] == 0);
}

TEST_CASE("taxicab subcommand") {
    auto r = run_cli("taxicab --k 2 --j 6 --m 36 --bound auto");
    CHECK(r.code == 0);
    auto rec = first_line_json(r.out);
    CHECK(rec["status"] == "proved-absent");
    CHECK(rec["bound_used"] == 55696);
    CHECK(rec["provenance"] == "hypothesis-extended");
    CHECK(rec["n"].is_null());

    r = run_cli("taxicab --k 2 --j 4 --m 1 --bound 100");
    CHECK(r.code == 0);
    CHECK(first_line_json(r.out)["n"] == 4);

    r = run_cli("taxicab --k 3 --j 2 --m 3 --bound 100000000");
    CHECK(r.code == 0);
    rec = first_line_json(r.out);
    CHECK(rec["n"] == 87539319);
    CHECK(rec["status"] == "found");

    r = run_cli("taxicab --k 2 --j 10 --m 3 --bound auto --at-least");
    CHECK(r.code == 0);
    rec = first_line_json(r.out);
    CHECK(rec["status"] == "found");
    CHECK(rec["n"] <= 50); // at or before the four-way value at 50
}

TEST_CASE("exit codes: usage, arithmetic, resource") {
    CHECK(run_cli("count --k 2 --n 50").code == 2);   // missing --j
    CHECK(run_cli("no-such-subcommand").code == 2);
    CHECK(run_cli("taxicab --k 62 --j 2 --m 2 --bound auto").code == 3);
    CHECK(run_cli("--memory-budget-mb 8 taxicab --k 2 --j 5 --m 2 --bound 1000000000")
              .code == 4);
    CHECK(run_cli("verify --suite nope").code == 2);
    CHECK(run_cli("fit --family root --root 8 --in /nonexistent.csv").code == 2);
}

TEST_CASE("verify desk suite passes") {
    const auto r = run_cli("verify --suite oeis --budget desk");
    CHECK(r.code == 0);
    std::istringstream lines(r.out);
    std::string line;
    int checks = 0, passes = 0, skipped = 0;
    while (std::getline(lines, line)) {
        const auto rec = json::parse(line);
        ++checks;
        if (rec["status"] == "pass") ++passes;
        if (rec["status"] == "skipped(budget)") ++skipped;
    }
    CHECK(checks == 8);
    CHECK(passes == 7);
    CHECK(skipped == 1); // the full-budget five-square list
}

TEST_CASE("grid artifacts and determinism") {
    TempDir dir;
    const auto pbm1 = dir.path / "a.pbm";
    const auto csv1 = dir.path / "a.csv";
    const std::string base = "grid --k 2 --j 7..16 --m 1..6 ";
    auto r = run_cli(base + "--workers 1 --out-pbm " + pbm1.string() + " --out-csv " +
                     csv1.string());
    CHECK(r.code == 0);

    const auto pbm2 = dir.path / "b.pbm";
    const auto csv2 = dir.path / "b.csv";
    r = run_cli(base + "--workers 3 --out-pbm " + pbm2.string() + " --out-csv " +
                csv2.string());
    CHECK(r.code == 0);

    auto slurp = [](const std::filesystem::path& p) {
        std::ifstream in(p, std::ios::binary);
        return std::string(std::istreambuf_iterator<char>(in),
                           std::istreambuf_iterator<char>());
    };
    const std::string pbm = slurp(pbm1);
    CHECK(pbm.substr(0, 3) == "P1\n");
    CHECK(pbm == slurp(pbm2));
    const std::string csv = slurp(csv1);
    CHECK(csv.rfind("k,j,m,status,n,provenance\n", 0) == 0);
    CHECK(csv == slurp(csv2));
    CHECK(csv.find("2,9,3,exists,49,certified") != std::string::npos);
    CHECK(csv.find("2,10,3,absent,,certified") != std::string::npos);
}

TEST_CASE("sequence subcommand with artifacts") {
    TempDir dir;
    const auto csv = dir.path / "seq.csv";
    const auto certs = dir.path / "certs.txt";
    const auto r = run_cli("sequence --k 2 --m-limit 10 --j-limit 30 --out-csv " +
                           csv.string() + " --out-certificates " + certs.string());
    CHECK(r.code == 0);
    const auto rec = first_line_json(r.out);
    CHECK(rec["complement"] == json::array({3}));
    CHECK(rec["members"] == json::array({1, 2, 4, 5, 6, 7, 8, 9, 10}));
    CHECK(rec["undetermined"].empty());

    std::ifstream csv_in(csv);
    std::string csv_text((std::istreambuf_iterator<char>(csv_in)),
                         std::istreambuf_iterator<char>());
    CHECK(csv_text.rfind("m,classification,J\n", 0) == 0);
    CHECK(csv_text.find("3,absence,10") != std::string::npos);
    CHECK(csv_text.find("2,increment,5") != std::string::npos);

    std::ifstream certs_in(certs);
    std::string certs_text((std::istreambuf_iterator<char>(certs_in)),
                           std::istreambuf_iterator<char>());
    CHECK(certs_text.find("tail-certificate: nonexistence") != std::string::npos);
    CHECK(certs_text.find("tail-row: 12") != std::string::npos);
    CHECK(certs_text.find("tail-certificate: increment") != std::string::npos);
}

TEST_CASE("sequence boundary feeds the fitter") {
    TempDir dir;
    const auto boundary = dir.path / "boundary.csv";
    auto r = run_cli("sequence --k 2 --m-limit 8 --j-limit 30 --out-boundary " +
                     boundary.string());
    CHECK(r.code == 0);
    std::ifstream in(boundary);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    CHECK(text.rfind("m,J,provenance\n", 0) == 0);
    CHECK(text.find("2,5,certified") != std::string::npos);
    CHECK(text.find("3,10,certified") != std::string::npos);

    r = run_cli("fit --family root --root 8 --in " + boundary.string());
    CHECK(r.code == 0);
    CHECK(first_line_json(r.out)["points"] == 8);
}

TEST_CASE("cube grids keep undetermined cells honest") {
    TempDir dir;
    const auto pbm = dir.path / "cubes.pbm";
    const std::string base =
        "grid --k 3 --j 2..6 --m 1..8 --scan-limit 5000000 --out-pbm " + pbm.string();
    // Cells past the scan limit stay undetermined; rendering them needs an
    // explicit choice.
    auto r = run_cli(base);
    CHECK(r.code == 2);
    CHECK(!std::filesystem::exists(pbm));

    r = run_cli(base + " --undetermined black");
    CHECK(r.code == 0);
    std::ifstream in(pbm);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    CHECK(text.rfind("P1\n# undetermined=black\n", 0) == 0);
}

TEST_CASE("fit subcommand recovers synthetic constants") {
    TempDir dir;
    const auto csv = dir.path / "points.csv";
    {
        std::ofstream out(csv);
        out << "x,y\n";
        for (int i = 1; i <= 30; ++i) {
            const double x = double(i);
            out.precision(17);
            out << x << "," << (2.0 * std::pow(x, 0.125) - 1.0) << "\n";
        }
    }
    const auto r = run_cli("fit --family root --root 8 --in " + csv.string());
    CHECK(r.code == 0);
    const auto rec = first_line_json(r.out);
    CHECK(std::abs(double(rec["a"]) - 2.0) < 1e-9);
    CHECK(std::abs(double(rec["b"]) + 1.0) < 1e-9);
    CHECK(double(rec["residual"]) < 1e-9);
}

TEST_CASE("table cache: store, reuse, reject corruption") {
    TempDir dir;
    const std::string with_cache =
        "--cache-dir " + dir.path.string() + " taxicab --k 2 --j 9 --m 3 --bound 10000";
    auto r = run_cli(with_cache);
    CHECK(r.code == 0);
    CHECK(first_line_json(r.out)["n"] == 49);
    const auto cache = dir.path / "txcb-k2-cap4.txcb";
    REQUIRE(std::filesystem::exists(cache));

    // Second run answers from the cached table.
    r = run_cli(with_cache);
    CHECK(r.code == 0);
    CHECK(first_line_json(r.out)["n"] == 49);

    // Corruption is detected and the run falls back to a rebuild.
    {
        std::fstream f(cache, std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(40);
        const char junk = 0x77;
        f.write(&junk, 1);
    }
    r = run_cli(with_cache);
    CHECK(r.code == 0);
    CHECK(first_line_json(r.out)["n"] == 49);
}
