#include "doctest.h"
#include "helpers.hpp"

#include <filesystem>
#include <fstream>

#include "nsc/run.hpp"

using namespace nsc;
using namespace nsc::test;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

struct TmpDir {
    fs::path path;
    explicit TmpDir(const std::string& name) : path(fs::temp_directory_path() / name)
    {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TmpDir() { fs::remove_all(path); }
};

} // namespace

TEST_CASE("config parser: nesting, arrays, comments, errors")
{
    Config cfg = Config::parse_string("# comment\n"
                                      "grid.n = 16\n"
                                      "grid.length = 6.5   # trailing comment\n"
                                      "omega.values = [1, 10, 100]\n"
                                      "flag = true\n"
                                      "name = taylor-green\n");
    CHECK(cfg.get_int("grid.n", 0) == 16);
    CHECK(cfg.get_double("grid.length", 0.0) == 6.5);
    CHECK(cfg.get_doubles("omega.values") == std::vector<double>{1.0, 10.0, 100.0});
    CHECK(cfg.get_bool("flag", false));
    CHECK(cfg.get_string("name", "") == "taylor-green");
    CHECK(cfg.get_int("missing", 7) == 7);
    CHECK_THROWS_AS((void)Config::parse_string("not a pair\n"), std::runtime_error);
    CHECK_THROWS_AS((void)cfg.get_double("name", 0.0), std::runtime_error);
}

TEST_CASE("initial data: taylor-green solenoidal, seeded determinism, rescale")
{
    const Grid3 g = grid2pi(16);
    InitialDataSpec tg;
    tg.generator = "taylor-green";
    SpectralField u = generate_initial_data(tg, g);
    CHECK(u.divergence_residual() < 1e-13);
    CHECK(u.max_hermitian_defect() < 1e-12);

    InitialDataSpec r;
    r.generator = "random-band-limited";
    r.seed = 42;
    SpectralField a = generate_initial_data(r, g);
    SpectralField b = generate_initial_data(r, g);
    CHECK(max_abs_diff(a, b) == 0.0); // bitwise reproducible
    r.seed = 43;
    CHECK(max_abs_diff(a, generate_initial_data(r, g)) > 0.0);

    r.target_norm = 0.7;
    r.norm_index = {0.6, 2.0, 2.0};
    SpectralField scaled = generate_initial_data(r, g);
    const DyadicPartition part = build_partition(g);
    CHECK(std::abs(besov_norm(scaled, r.norm_index, part) - 0.7) < 1e-10);

    InitialDataSpec bad;
    bad.generator = "no-such-generator";
    CHECK_THROWS_AS((void)generate_initial_data(bad, g), std::invalid_argument);
    InitialDataSpec zero;
    zero.generator = "single-mode";
    zero.amplitude = 0.0;
    zero.target_norm = 1.0;
    CHECK_THROWS_AS((void)generate_initial_data(zero, g), std::invalid_argument);
}

TEST_CASE("run_experiment: validation is total (all violations listed)")
{
    TmpDir tmp("nsc_cli_validation");
    Config cfg = Config::parse_string("grid.n = 7\n"            // odd
                                      "solver.dt = -1\n"        // negative
                                      "norm.p = 0.5\n"          // < 1
                                      "omega.values = [4, 1]\n" // not increasing
    );
    RunOutcome out = run_experiment("picard", cfg, (tmp.path / "v").string());
    CHECK(out.exit_code == 2);
    CHECK(out.violations.size() >= 4);

    RunOutcome unknown = run_experiment("no-such", cfg, (tmp.path / "u").string());
    CHECK(unknown.exit_code == 2);
}

TEST_CASE("run_experiment: picard run produces a self-describing directory")
{
    TmpDir tmp("nsc_cli_picard");
    Config cfg = Config::parse_string("grid.n = 12\n"
                                      "solver.dt = 0.125\n"
                                      "solver.horizon = 2.0\n"
                                      "solver.max_iters = 4\n"
                                      "norm.theta = 9.2\nnorm.s = 0.6\nnorm.p = 2.3\nnorm.q = 2\n"
                                      "norm.horizon = 2.0\n"
                                      "initial.generator = taylor-green\n"
                                      "initial.target_norm = 1.0\n"
                                      "omega.values = [5]\n");
    RunOutcome out = run_experiment("picard", cfg, (tmp.path / "run").string());
    CHECK(out.exit_code == 0);
    CHECK(fs::exists(tmp.path / "run" / "picard.csv"));
    CHECK(fs::exists(tmp.path / "run" / "summary.json"));
    CHECK(fs::exists(tmp.path / "run" / "run.json"));
    CHECK(fs::exists(tmp.path / "run" / "config.cfg"));
    const std::string csv = slurp(tmp.path / "run" / "picard.csv");
    CHECK(csv.find("omega,iteration,iterate_norm,difference_norm,kappa") == 0);
}

TEST_CASE("run_experiment: identical config and seed give byte-identical CSV")
{
    TmpDir tmp("nsc_cli_determinism");
    Config cfg = Config::parse_string("grid.n = 12\n"
                                      "solver.dt = 0.125\n"
                                      "solver.horizon = 1.0\n"
                                      "solver.max_iters = 3\n"
                                      "norm.theta = 9.2\nnorm.s = 0.6\nnorm.p = 2.3\nnorm.q = 2\n"
                                      "norm.horizon = 1.0\n"
                                      "initial.generator = random-band-limited\n"
                                      "initial.seed = 5\ninitial.target_norm = 0.5\n"
                                      "omega.values = [2]\n");
    RunOutcome a = run_experiment("picard", cfg, (tmp.path / "a").string());
    RunOutcome b = run_experiment("picard", cfg, (tmp.path / "b").string());
    CHECK(a.exit_code == 0);
    CHECK(b.exit_code == 0);
    CHECK(slurp(tmp.path / "a" / "picard.csv") == slurp(tmp.path / "b" / "picard.csv"));
    CHECK(slurp(tmp.path / "a" / "summary.json") == slurp(tmp.path / "b" / "summary.json"));

    // seed override changes the data, hence the numbers
    RunOutcome c = run_experiment("picard", cfg, (tmp.path / "c").string(), 99);
    CHECK(slurp(tmp.path / "a" / "picard.csv") != slurp(tmp.path / "c" / "picard.csv"));
}

TEST_CASE("run_experiment: empty batch is a no-op with an empty manifest")
{
    TmpDir tmp("nsc_cli_batch");
    Config cfg = Config::parse_string("experiments = []\n");
    RunOutcome out = run_experiment("batch", cfg, (tmp.path / "run").string());
    CHECK(out.exit_code == 0);
    CHECK(out.verdict_line.find("no-op") != std::string::npos);
    const std::string summary = slurp(tmp.path / "run" / "summary.json");
    CHECK(summary.find("\"experiments\": []") != std::string::npos);
}

TEST_CASE("run_experiment: simulate flags blowup with exit code 3")
{
    TmpDir tmp("nsc_cli_blowup");
    Config cfg = Config::parse_string("grid.n = 12\n"
                                      "solver.dt = 0.05\nsolver.horizon = 0.5\n"
                                      "solver.blowup_threshold = 10.0\n"
                                      "norm.s = 0.6\nnorm.p = 2\nnorm.q = 2\n"
                                      "initial.generator = taylor-green\n"
                                      "initial.amplitude = 2e3\n"
                                      "omega.values = [0]\n");
    RunOutcome out = run_experiment("simulate", cfg, (tmp.path / "run").string());
    CHECK(out.exit_code == 3);
}
