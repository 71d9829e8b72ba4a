#include "swarmx/campaign.hpp"
#include "swarmx/csv.hpp"
#include "swarmx/svg_plot.hpp"
#include "swarmx/xplain.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace fs = std::filesystem;
using namespace swarmx;

namespace {

const char* const kAttributionCsvHeader =
    "fid,topology,config_index,feature,feature_value,shap_exact,shap_surrogate";
const char* const kSurrogateCsvHeader = "fid,topology,r2_train,trees,max_depth,seed";

// Flat key=value campaign config. Keys mirror the long option names; lines
// starting with '#' and blank lines are ignored.
std::vector<std::pair<std::string, std::string>> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);

    const auto trim = [](std::string s) {
        const auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
        while (!s.empty() && is_space(s.front())) s.erase(s.begin());
        while (!s.empty() && is_space(s.back())) s.pop_back();
        return s;
    };

    std::vector<std::pair<std::string, std::string>> pairs;
    std::string line;
    while (std::getline(in, line)) {
        const std::string trimmed = trim(line);
        if (trimmed.empty() || trimmed.front() == '#') continue;
        const std::size_t eq = trimmed.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line is not key=value: '" + trimmed + "'");
        }
        pairs.emplace_back(trim(trimmed.substr(0, eq)), trim(trimmed.substr(eq + 1)));
    }
    return pairs;
}

// Appends config-file options that were not already given on the command
// line, so explicit flags always win.
std::vector<std::string> merge_config_args(std::vector<std::string> args) {
    const auto cfg = std::find(args.begin(), args.end(), "--config");
    if (cfg == args.end()) return args;
    if (cfg + 1 == args.end()) {
        throw std::invalid_argument("--config requires a file path");
    }
    for (const auto& [key, value] : parse_config_file(*(cfg + 1))) {
        const std::string flag = "--" + key;
        if (std::find(args.begin(), args.end(), flag) == args.end()) {
            args.push_back(flag);
            args.push_back(value);
        }
    }
    return args;
}

int workers_from_env() {
    const char* env = std::getenv("SWARMX_WORKERS");
    if (env == nullptr || *env == '\0') return 0;
    try {
        const int workers = static_cast<int>(parse_int(env));
        if (workers < 1) throw std::invalid_argument("");
        return workers;
    } catch (const std::exception&) {
        throw std::invalid_argument("SWARMX_WORKERS must be a positive integer");
    }
}

struct RunOptions {
    std::string topology = "star";
    std::vector<int> fids;
    int dim = 2;
    int budget = 100;
    int instances = 5;
    int runs = 5;
    std::string grid = "full";
    std::string out_dir;
};

int cmd_run(const RunOptions& opt) {
    const Topology topology = topology_from_string(opt.topology);
    const ConfigGrid grid_spec =
        opt.grid == "reduced" ? ConfigGrid::reduced() : ConfigGrid::full();
    const std::vector<ConfigTuple> grid = enumerate_grid(grid_spec);

    CampaignSettings settings;
    settings.fids = opt.fids;
    settings.dim = opt.dim;
    settings.budget = opt.budget;
    settings.instances = opt.instances;
    settings.runs = opt.runs;
    settings.workers = workers_from_env();

    fs::create_directories(opt.out_dir);
    const auto start = std::chrono::steady_clock::now();
    const std::vector<RunRecord> records = execute_campaign(topology, grid, settings);
    const auto elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start);

    const fs::path out = fs::path(opt.out_dir) / "runs.csv";
    write_runs_csv(out.string(), records);
    std::cout << "wrote " << out.string() << " records=" << records.size()
              << " elapsed=" << elapsed.count() << "s\n";
    return 0;
}

// Rebuilds the grid implied by a record set; every config_index in
// [0, max_index] must be present.
std::vector<ConfigTuple> grid_from_records(const std::vector<RunRecord>& records) {
    int max_index = 0;
    for (const RunRecord& rec : records) max_index = std::max(max_index, rec.config_index);

    std::vector<ConfigTuple> grid(max_index + 1);
    std::vector<bool> seen(max_index + 1, false);
    for (const RunRecord& rec : records) {
        if (!seen[rec.config_index]) {
            grid[rec.config_index] = rec.config;
            seen[rec.config_index] = true;
        }
    }
    std::string gaps;
    for (int ci = 0; ci <= max_index; ++ci) {
        if (!seen[ci]) gaps += (gaps.empty() ? "" : ",") + std::to_string(ci);
    }
    if (!gaps.empty()) {
        throw std::runtime_error("missing cells for config_index " + gaps);
    }
    return grid;
}

int cmd_stats(const std::string& runs_path, const std::string& out_path) {
    const std::vector<RunRecord> records = read_runs_csv(runs_path);
    const std::vector<ConfigTuple> grid = grid_from_records(records);
    const std::vector<AggregateRow> rows = aggregate(records, grid);
    write_aggregate_csv(out_path, rows);
    std::cout << "wrote " << out_path << " rows=" << rows.size() << '\n';
    return 0;
}

struct ExplainOptions {
    std::string runs_path;
    int fid = 1;
    std::string mode = "both";
    std::string out_dir;
    int trees = 100;
    int max_depth = 8;
    int permutations = 256;
    std::uint64_t seed = kDefaultSurrogateSeed;
};

int cmd_explain(const ExplainOptions& opt) {
    const std::vector<RunRecord> all_records = read_runs_csv(opt.runs_path);

    std::set<Topology> topologies;
    for (const RunRecord& rec : all_records) {
        if (rec.fid == opt.fid) topologies.insert(rec.topology);
    }
    if (topologies.empty()) {
        throw std::runtime_error("no records for fid " + std::to_string(opt.fid));
    }

    const bool want_exact = opt.mode == "exact" || opt.mode == "both";
    const bool want_surrogate = opt.mode == "surrogate" || opt.mode == "both";
    const int workers =
        std::max(1, workers_from_env() == 0
                        ? static_cast<int>(std::thread::hardware_concurrency())
                        : workers_from_env());

    fs::create_directories(opt.out_dir);
    const fs::path attr_path =
        fs::path(opt.out_dir) / ("attr_f" + std::to_string(opt.fid) + ".csv");
    const fs::path report_path =
        fs::path(opt.out_dir) / ("surrogate_f" + std::to_string(opt.fid) + ".csv");

    std::ofstream attr(attr_path);
    if (!attr) throw std::runtime_error("cannot write file: " + attr_path.string());
    attr << kAttributionCsvHeader << '\n';
    std::ofstream report(report_path);
    if (!report) throw std::runtime_error("cannot write file: " + report_path.string());
    report << kSurrogateCsvHeader << '\n';

    for (Topology topology : topologies) {
        std::vector<RunRecord> slice;
        for (const RunRecord& rec : all_records) {
            if (rec.topology == topology) slice.push_back(rec);
        }
        const FeatureMatrix fm = build_feature_matrix(slice, opt.fid);
        if (!is_complete_factorial(fm)) {
            throw std::runtime_error("grid incomplete for fid " + std::to_string(opt.fid) +
                                     " topology " + to_string(topology));
        }
        const std::size_t n = fm.size();

        std::vector<std::array<double, kNumFeatures>> exact;
        if (want_exact) exact = shapley_exact_all(fm);

        const SurrogateModel model = fit_surrogate(fm, opt.trees, opt.max_depth, opt.seed);
        std::vector<std::array<double, kNumFeatures>> surrogate;
        if (want_surrogate) {
            surrogate.resize(n);
            std::atomic<std::size_t> next{0};
            auto work = [&] {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= n) return;
                    const auto attr_i = shapley_surrogate(model, fm, static_cast<int>(i),
                                                          opt.permutations, opt.seed);
                    for (int f = 0; f < kNumFeatures; ++f) {
                        surrogate[i][f] = attr_i[f].shap_value;
                    }
                }
            };
            std::vector<std::thread> pool;
            for (int t = 0; t < workers; ++t) pool.emplace_back(work);
            for (std::thread& t : pool) t.join();
        }

        for (std::size_t i = 0; i < n; ++i) {
            for (int f = 0; f < kNumFeatures; ++f) {
                attr << opt.fid << ',' << to_string(topology) << ',' << fm.config_index[i]
                     << ',' << kFeatureNames[f] << ',' << format_double(fm.rows[i][f])
                     << ',';
                if (want_exact) attr << format_double(exact[i][f]);
                attr << ',';
                if (want_surrogate) attr << format_double(surrogate[i][f]);
                attr << '\n';
            }
        }
        report << opt.fid << ',' << to_string(topology) << ','
               << format_double(model.r2_train()) << ',' << model.trees() << ','
               << model.max_depth() << ',' << model.seed() << '\n';
    }

    std::cout << "wrote " << attr_path.string() << " and " << report_path.string() << '\n';
    return 0;
}

int cmd_plot(const std::string& attr_path, const std::string& out_path) {
    const auto rows = read_csv_rows(attr_path, kAttributionCsvHeader);

    std::vector<Attribution> attributions;
    attributions.reserve(rows.size());
    for (const auto& cells : rows) {
        if (cells.size() != 7) throw std::runtime_error("malformed row in " + attr_path);
        Attribution a;
        a.sample_index = static_cast<int>(parse_int(cells[2]));
        a.feature = cells[3];
        feature_index(a.feature);  // validates the name
        a.feature_value = parse_double(cells[4]);
        if (!cells[5].empty()) {
            a.shap_value = parse_double(cells[5]);
        } else if (!cells[6].empty()) {
            a.shap_value = parse_double(cells[6]);
        } else {
            throw std::runtime_error("attribution row without a shap value in " + attr_path);
        }
        attributions.push_back(std::move(a));
    }

    const std::vector<SwarmPlotRow> plot_rows = swarm_plot_data(attributions);

    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write file: " + out_path);
    out << render_swarm_svg(plot_rows);
    if (!out) throw std::runtime_error("write failed: " + out_path);
    std::cout << "wrote " << out_path << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"PSO topology campaigns with AOCC scoring and Shapley attribution"};
    app.require_subcommand(1);

    RunOptions run_opt;
    CLI::App* run_cmd = app.add_subcommand("run", "execute a hyperparameter campaign");
    run_cmd->add_option("--topology", run_opt.topology, "star|ring|vonneumann")
        ->default_str("star");
    run_cmd->add_option("--fids", run_opt.fids, "function ids, comma separated")
        ->delimiter(',')
        ->required();
    run_cmd->add_option("--dim", run_opt.dim, "problem dimension");
    run_cmd->add_option("--budget", run_opt.budget, "iterations per run");
    run_cmd->add_option("--instances", run_opt.instances, "instances per function");
    run_cmd->add_option("--runs", run_opt.runs, "repetitions per instance");
    run_cmd->add_option("--grid", run_opt.grid, "full|reduced")
        ->check(CLI::IsMember({"full", "reduced"}));
    run_cmd->add_option("--out", run_opt.out_dir, "output directory")->required();
    std::string config_path;
    run_cmd->add_option("--config", config_path, "key=value config file (flags win)");

    std::string stats_runs, stats_out;
    CLI::App* stats_cmd = app.add_subcommand("stats", "aggregate a campaign CSV");
    stats_cmd->add_option("--runs", stats_runs, "runs.csv path")->required();
    stats_cmd->add_option("--out", stats_out, "aggregate CSV path")->required();

    ExplainOptions explain_opt;
    CLI::App* explain_cmd =
        app.add_subcommand("explain", "attribute AOCC to hyperparameters");
    explain_cmd->add_option("--runs", explain_opt.runs_path, "runs.csv path")->required();
    explain_cmd->add_option("--fid", explain_opt.fid, "function id")->required();
    explain_cmd->add_option("--mode", explain_opt.mode, "exact|surrogate|both")
        ->check(CLI::IsMember({"exact", "surrogate", "both"}));
    explain_cmd->add_option("--out", explain_opt.out_dir, "output directory")->required();
    explain_cmd->add_option("--trees", explain_opt.trees, "surrogate tree count");
    explain_cmd->add_option("--depth", explain_opt.max_depth, "surrogate tree depth");
    explain_cmd->add_option("--permutations", explain_opt.permutations,
                            "sampling permutations per configuration");
    explain_cmd->add_option("--seed", explain_opt.seed, "surrogate/sampling seed");

    std::string plot_attr, plot_out;
    CLI::App* plot_cmd = app.add_subcommand("plot", "render a swarm plot SVG");
    plot_cmd->add_option("--attributions", plot_attr, "attribution CSV path")->required();
    plot_cmd->add_option("--out", plot_out, "output SVG path")->required();

    try {
        std::vector<std::string> args =
            merge_config_args(std::vector<std::string>(argv + 1, argv + argc));
        std::reverse(args.begin(), args.end());  // CLI11 vector parse order
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (run_cmd->parsed()) return cmd_run(run_opt);
        if (stats_cmd->parsed()) return cmd_stats(stats_runs, stats_out);
        if (explain_cmd->parsed()) return cmd_explain(explain_opt);
        if (plot_cmd->parsed()) return cmd_plot(plot_attr, plot_out);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
