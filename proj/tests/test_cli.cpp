#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "swarmx/campaign.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const std::string cli = SWARMX_CLI_PATH;

int run_cli(const std::string& args) {
    const std::string cmd = cli + " " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::size_t count_lines(const std::string& text) {
    std::size_t lines = 0;
    for (char c : text) lines += (c == '\n');
    return lines;
}

struct Scratch {
    fs::path dir;
    explicit Scratch(const char* name) : dir(fs::temp_directory_path() / name) {
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    ~Scratch() { fs::remove_all(dir); }
    std::string operator/(const char* sub) const { return (dir / sub).string(); }
};

} // namespace

TEST_CASE("usage errors exit with 2") {
    CHECK(run_cli("run --topology mesh --fids 1 --out /tmp/swarmx_nowhere") == 2);
    CHECK(run_cli("run --fids 1") == 2);                       // missing --out
    CHECK(run_cli("run --grid bogus --fids 1 --out /tmp/x") == 2);
    CHECK(run_cli("definitely-not-a-command") == 2);
    CHECK(run_cli("--help") == 0);
}

TEST_CASE("reduced campaign end to end") {
    Scratch scratch("swarmx_cli_reduced");

    const std::string base = "run --topology star --fids 1 --grid reduced --budget 20 "
                             "--instances 5 --runs 5 --out ";
    REQUIRE(run_cli(base + (scratch / "a")) == 0);
    REQUIRE(run_cli(base + (scratch / "b")) == 0);

    const std::string a = read_file(scratch.dir / "a" / "runs.csv");
    const std::string b = read_file(scratch.dir / "b" / "runs.csv");
    CHECK(a == b);                      // byte-identical reruns
    CHECK(count_lines(a) == 26);        // header + 1 config x 1 fid x 5 x 5

    // stats over the fresh campaign
    const std::string agg = scratch / "aggregate.csv";
    REQUIRE(run_cli("stats --runs " + (scratch / "a") + "/runs.csv --out " + agg) == 0);
    const std::string agg_text = read_file(agg);
    CHECK(agg_text.rfind(swarmx::kAggregateCsvHeader, 0) == 0);
    CHECK(count_lines(agg_text) == 2);  // header + one (fid, topology) row
}

TEST_CASE("ring and von neumann campaigns run through the cli") {
    Scratch scratch("swarmx_cli_topologies");
    REQUIRE(run_cli("run --topology ring --fids 3 --grid reduced --budget 10 "
                    "--instances 2 --runs 2 --out " + (scratch / "ring")) == 0);
    REQUIRE(run_cli("run --topology vonneumann --fids 21 --grid reduced --budget 10 "
                    "--instances 2 --runs 2 --out " + (scratch / "vn")) == 0);

    const std::string ring = read_file(scratch.dir / "ring" / "runs.csv");
    CHECK(count_lines(ring) == 5);
    CHECK(ring.find("\nring,") != std::string::npos);
    const std::string vn = read_file(scratch.dir / "vn" / "runs.csv");
    CHECK(vn.find("\nvonneumann,") != std::string::npos);

    REQUIRE(run_cli("stats --runs " + (scratch / "ring") + "/runs.csv --out " +
                    (scratch / "agg.csv")) == 0);
    CHECK(count_lines(read_file(scratch / "agg.csv")) == 2);
}

TEST_CASE("stats rejects empty and header-only files") {
    Scratch scratch("swarmx_cli_stats");
    const std::string empty = scratch / "empty.csv";
    std::ofstream(empty).close();
    CHECK(run_cli("stats --runs " + empty + " --out " + (scratch / "agg.csv")) == 1);

    const std::string header_only = scratch / "header.csv";
    std::ofstream(header_only) << swarmx::kRunsCsvHeader << '\n';
    CHECK(run_cli("stats --runs " + header_only + " --out " + (scratch / "agg2.csv")) == 1);

    CHECK(run_cli("stats --runs " + (scratch / "missing.csv") + " --out " +
                  (scratch / "agg3.csv")) == 1);
}

TEST_CASE("explain and plot on a complete factorial slice") {
    Scratch scratch("swarmx_cli_explain");

    // full grid, minimal protocol: fast but a genuine 1728-point factorial
    REQUIRE(run_cli("run --topology star --fids 1 --grid full --budget 1 --instances 1 "
                    "--runs 1 --out " + (scratch / "camp")) == 0);
    const std::string runs = (scratch / "camp") + "/runs.csv";
    CHECK(count_lines(read_file(runs)) == 1729);

    REQUIRE(run_cli("explain --runs " + runs + " --fid 1 --mode exact --out " +
                    (scratch / "camp")) == 0);
    const std::string attr_text = read_file((scratch / "camp") + "/attr_f1.csv");
    CHECK(count_lines(attr_text) == 1 + 1728 * 7);

    const std::string report = read_file((scratch / "camp") + "/surrogate_f1.csv");
    CHECK(count_lines(report) == 2);
    CHECK(report.find("star") != std::string::npos);

    // exact-only mode leaves the surrogate column empty
    const std::string first_row = attr_text.substr(attr_text.find('\n') + 1, 200);
    CHECK(first_row.substr(0, first_row.find('\n')).back() == ',');

    // plot twice, byte-identical
    REQUIRE(run_cli("plot --attributions " + (scratch / "camp") + "/attr_f1.csv --out " +
                    (scratch / "p1.svg")) == 0);
    REQUIRE(run_cli("plot --attributions " + (scratch / "camp") + "/attr_f1.csv --out " +
                    (scratch / "p2.svg")) == 0);
    const std::string svg = read_file(scratch / "p1.svg");
    CHECK(svg == read_file(scratch / "p2.svg"));
    for (const char* feature : {">c1<", ">c2<", ">w<", ">n<", ">k<", ">p<", ">r<"}) {
        CHECK(svg.find(feature) != std::string::npos);  // seven bands
    }

    // removing one configuration breaks the factorial
    const std::string full = read_file(runs);
    std::string truncated = full.substr(0, full.rfind("star,1727"));
    std::ofstream(scratch / "incomplete.csv", std::ios::binary) << truncated;
    CHECK(run_cli("explain --runs " + (scratch / "incomplete.csv") +
                  " --fid 1 --mode exact --out " + (scratch / "x")) == 1);

    // unknown function in the slice
    CHECK(run_cli("explain --runs " + runs + " --fid 3 --mode exact --out " +
                  (scratch / "x")) == 1);
}

TEST_CASE("explain with the surrogate path populates both columns") {
    Scratch scratch("swarmx_cli_both");
    REQUIRE(run_cli("run --topology star --fids 1 --grid reduced --budget 5 --instances 2 "
                    "--runs 2 --out " + (scratch / "camp")) == 0);
    REQUIRE(run_cli("explain --runs " + (scratch / "camp") + "/runs.csv --fid 1 "
                    "--mode both --permutations 16 --out " + (scratch / "camp")) == 0);

    const std::string attr = read_file((scratch / "camp") + "/attr_f1.csv");
    CHECK(count_lines(attr) == 1 + 7);
    std::istringstream lines(attr);
    std::string line;
    std::getline(lines, line);  // header
    while (std::getline(lines, line)) {
        CHECK(line.back() != ',');  // surrogate column filled
        const std::size_t last_comma = line.rfind(',');
        CHECK(line[last_comma - 1] != ',');  // exact column filled
    }
}

TEST_CASE("plot handles degenerate inputs") {
    Scratch scratch("swarmx_cli_plot");

    const std::string empty_attr = scratch / "attr_empty.csv";
    std::ofstream(empty_attr)
        << "fid,topology,config_index,feature,feature_value,shap_exact,shap_surrogate\n";
    REQUIRE(run_cli("plot --attributions " + empty_attr + " --out " +
                    (scratch / "empty.svg")) == 0);
    const std::string svg = read_file(scratch / "empty.svg");
    CHECK(svg.find("no data") != std::string::npos);

    const std::string bad = scratch / "bad.csv";
    std::ofstream(bad) << "not,a,valid,header\n";
    CHECK(run_cli("plot --attributions " + bad + " --out " + (scratch / "bad.svg")) == 1);

    CHECK(run_cli("plot --attributions " + (scratch / "nope.csv") + " --out " +
                  (scratch / "n.svg")) == 1);
}

TEST_CASE("worker cap from the environment") {
    Scratch scratch("swarmx_cli_workers");
    const std::string base = "run --topology star --fids 1 --grid reduced --budget 5 "
                             "--instances 2 --runs 2 --out ";

    const auto with_env = [&](const char* value, const std::string& out) {
        setenv("SWARMX_WORKERS", value, 1);
        const int rc = run_cli(base + out);
        unsetenv("SWARMX_WORKERS");
        return rc;
    };
    REQUIRE(with_env("1", scratch / "serial") == 0);
    REQUIRE(with_env("4", scratch / "wide") == 0);
    CHECK(read_file(scratch.dir / "serial" / "runs.csv") ==
          read_file(scratch.dir / "wide" / "runs.csv"));
    CHECK(with_env("zero", scratch / "bad") == 2);
    CHECK(with_env("-2", scratch / "bad2") == 2);
}

TEST_CASE("stats lists the gap when a config is missing") {
    Scratch scratch("swarmx_cli_gaps");
    // records only for config_index 0 and 2: index 1 is a hole
    const std::string path = scratch / "holey.csv";
    {
        std::ofstream out(path);
        out << swarmx::kRunsCsvHeader << '\n';
        out << "star,0,0.3,0.2,0.9,50,1,1,1,1,1,1,1,0.5,0.1\n";
        out << "star,2,0.3,0.2,0.4,50,1,1,1,1,1,1,2,0.6,0.1\n";
    }
    const std::string cmd = cli + " stats --runs " + path + " --out " +
                            (scratch / "agg.csv") + " 2> " + (scratch / "err.txt");
    CHECK(WEXITSTATUS(std::system(cmd.c_str())) == 1);
    const std::string err = read_file(scratch / "err.txt");
    CHECK(err.find("missing cells") != std::string::npos);
    CHECK(err.find("1") != std::string::npos);
}

TEST_CASE("config file values are overridden by flags") {
    Scratch scratch("swarmx_cli_config");
    const std::string cfg = scratch / "campaign.cfg";
    std::ofstream(cfg) << "topology=star\nfids=1\ngrid=reduced\nbudget=5\n"
                       << "instances=1\nruns=1\nout=" << (scratch / "from_cfg") << "\n";

    REQUIRE(run_cli("run --config " + cfg) == 0);
    CHECK(count_lines(read_file(scratch.dir / "from_cfg" / "runs.csv")) == 2);

    // flag wins over the file
    REQUIRE(run_cli("run --config " + cfg + " --runs 2 --out " + (scratch / "flagged")) == 0);
    CHECK(count_lines(read_file(scratch.dir / "flagged" / "runs.csv")) == 3);
}
