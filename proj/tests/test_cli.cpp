#include "nussbaum_pid/cli.hpp"
#include "nussbaum_pid/csv.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

using namespace nussbaum_pid;
namespace fs = std::filesystem;

namespace {

struct Invocation {
    int code;
    std::string out;
    std::string err;
};

Invocation cli(const std::vector<std::string> &args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch_dir(const std::string &name) {
    const fs::path dir = fs::temp_directory_path() / ("nussbaum_pid_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CsvTable table(const fs::path &p) {
    std::ifstream in(p);
    return read_csv(in);
}

}  // namespace

TEST_CASE("run with the paper preset writes the full trace") {
    const fs::path dir = scratch_dir("run");
    const auto r = cli({"run", "--preset", "paper", "--out", (dir / "paper.csv").string()});
    CHECK(r.code == exit_ok);
    const CsvTable t = table(dir / "paper.csv");
    CHECK(t.rows.size() == 20001);
    CHECK(t.columns.size() == csv_columns);
    CHECK(t.rows.front()[0] == 0.0);
    CHECK(t.rows.back()[0] == doctest::Approx(20.0));
    CHECK(r.out.find("diverged") != std::string::npos);

    SUBCASE("repeated runs are byte-identical") {
        REQUIRE(cli({"run", "--preset", "paper", "--out", (dir / "again.csv").string()}).code == exit_ok);
        CHECK(slurp(dir / "paper.csv") == slurp(dir / "again.csv"));
    }
    SUBCASE("a one-value sweep reproduces run") {
        REQUIRE(cli({"sweep", "--preset", "paper", "--param", "k_delta", "--values", "0.1", "--out",
                     (dir / "sw").string()})
                    .code == exit_ok);
        CHECK(slurp(dir / "sw" / "sweep_k_delta_0.csv") == slurp(dir / "paper.csv"));
    }
}

TEST_CASE("flags override the preset") {
    const fs::path dir = scratch_dir("flags");
    const auto r = cli({"run", "--preset", "flip", "--controller", "fixed-pid", "--duration", "1", "--decimation",
                        "100", "--out", (dir / "f.csv").string()});
    CHECK(r.code == exit_ok);
    CHECK(table(dir / "f.csv").rows.size() == 101);
    CHECK(r.out.find("fixed-pid") != std::string::npos);
}

TEST_CASE("config file between preset and flags") {
    const fs::path dir = scratch_dir("config");
    {
        std::ofstream(dir / "c.json") << R"({"sim": {"duration": 0.5, "decimation": 50},
                                            "output": {"csv_path": ")" +
                                             (dir / "from_config.csv").generic_string() + R"("}})";
    }
    CHECK(cli({"run", "--config", (dir / "c.json").string()}).code == exit_ok);
    CHECK(table(dir / "from_config.csv").rows.size() == 101);
    CHECK(cli({"run", "--config", (dir / "c.json").string(), "--duration", "0.25", "--out",
               (dir / "flag.csv").string()})
              .code == exit_ok);
    CHECK(table(dir / "flag.csv").rows.size() == 51);
}

TEST_CASE("bad configs fail without writing output") {
    const fs::path dir = scratch_dir("bad");
    {
        std::ofstream(dir / "neg.json") << R"({"sim": {"dt": -0.001}})";
        std::ofstream(dir / "broken.json") << R"({"sim": {"dt": )";
    }
    const auto neg = cli({"run", "--config", (dir / "neg.json").string(), "--out", (dir / "neg.csv").string()});
    CHECK(neg.code == exit_usage);
    CHECK(neg.err.find("dt") != std::string::npos);
    CHECK_FALSE(fs::exists(dir / "neg.csv"));

    const auto broken = cli({"run", "--config", (dir / "broken.json").string(), "--out", (dir / "b.csv").string()});
    CHECK(broken.code == exit_malformed_config);
    CHECK_FALSE(fs::exists(dir / "b.csv"));

    CHECK(cli({"run", "--config", (dir / "missing.json").string()}).code == exit_io);
    CHECK(cli({"run", "--preset", "nope"}).code == exit_usage);
    CHECK(cli({"run", "--dt", "0", "--out", (dir / "z.csv").string()}).code == exit_usage);
    CHECK_FALSE(fs::exists(dir / "z.csv"));
    CHECK(cli({"frobnicate"}).code == exit_usage);
    CHECK(cli({}).code == exit_usage);
}

TEST_CASE("sweep") {
    const fs::path dir = scratch_dir("sweep");
    const auto r = cli({"sweep", "--preset", "paper", "--duration", "0.5", "--param", "kappa-scale", "--values",
                        "1,-1,0.5", "--out", dir.string()});
    CHECK(r.code == exit_ok);
    std::ifstream summary(dir / "summary.csv");
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(summary, line)) lines.push_back(line);
    REQUIRE(lines.size() == 4);
    CHECK(lines[0].rfind("param,value,csv,diverged", 0) == 0);
    CHECK(lines[2].rfind("kappa-scale,-1,sweep_kappa-scale_1.csv,", 0) == 0);
    for (int i = 0; i < 3; ++i) CHECK(fs::exists(dir / ("sweep_kappa-scale_" + std::to_string(i) + ".csv")));

    CHECK(cli({"sweep", "--param", "kappa-scale", "--values", "", "--out", dir.string()}).code == exit_usage);
    CHECK(cli({"sweep", "--param", "kappa-scale", "--values", "1,abc", "--out", dir.string()}).code == exit_usage);
    CHECK(cli({"sweep", "--param", "mass", "--values", "1", "--out", dir.string()}).code == exit_usage);
    CHECK(cli({"sweep", "--param", "dt", "--values", "-1", "--out", dir.string()}).code == exit_usage);
}

TEST_CASE("verify exits cleanly on the stock model") {
    const auto r = cli({"verify"});
    CHECK(r.code == exit_ok);
    CHECK(r.out.find("FAIL") == std::string::npos);
    CHECK(r.out.find("PASS") != std::string::npos);
}
