#pragma once

#include "swarmx/swarm.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace swarmx {

// One point of the hyperparameter grid, without the topology.
struct ConfigTuple {
    double c1, c2, w;
    int n, k, p, r;

    bool operator==(const ConfigTuple&) const = default;
};

Hyperparameters to_hyperparameters(const ConfigTuple& cfg, Topology topology);

// Value domains of the tunable hyperparameters. Order of the level lists is
// the enumeration order, which is part of the wire contract.
struct ConfigGrid {
    std::vector<double> c1_values;
    std::vector<double> c2_values;
    std::vector<double> w_values;
    std::vector<int> n_values;
    std::vector<int> k_values;
    std::vector<int> p_values;
    std::vector<int> r_values;

    static ConfigGrid full();
    // First level of every row; single-config grid for smoke runs.
    static ConfigGrid reduced();
};

// Cross product in lexicographic order over (c1, c2, w, n, k, p, r),
// innermost index varying fastest. The full grid has 4*4*3*3*3*2*2 = 1728
// entries.
std::vector<ConfigTuple> enumerate_grid(const ConfigGrid& grid = ConfigGrid::full());

// Stable seed for one run coordinate. The exact derivation (documented in
// rng.hpp): fold hash_combine over (topology ordinal + 1, config_index,
// fid, iid, run_index) starting from the constant 0x53574152'4d580001.
std::uint64_t derive_seed(Topology topology, int config_index, int fid, int iid,
                          int run_index);

struct RunRecord {
    Topology topology;
    int config_index;
    ConfigTuple config;
    int fid;
    int iid;
    int run_index;
    std::uint64_t seed;
    double aocc;
    double final_best;
};

struct CampaignSettings {
    std::vector<int> fids;
    int dim = 2;
    int budget = 100;
    int instances = 5;
    int runs = 5;
    int workers = 0;  // 0 = all hardware threads
};

// Runs every (config, fid, iid, run) coordinate and returns one record per
// coordinate, in coordinate order. Content is independent of the worker
// count; a failing run aborts the campaign naming its coordinate.
std::vector<RunRecord> execute_campaign(Topology topology,
                                        const std::vector<ConfigTuple>& grid,
                                        const CampaignSettings& settings);

struct AggregateRow {
    int fid;
    Topology topology;
    double single_best_mean, single_best_std;
    double avg_best_mean, avg_best_std;
    double all_mean, all_std;
};

// Per (fid, topology) statistics over AOCC:
//   single-best: config maximizing that function's per-config mean,
//   avg-best:    config maximizing the mean across every function present,
//   all:         every record of the function.
// Standard deviations use the n-1 sample convention. Requires a complete
// record set over `grid`; gaps raise std::runtime_error.
std::vector<AggregateRow> aggregate(const std::vector<RunRecord>& records,
                                    const std::vector<ConfigTuple>& grid);

// Canonical order: (topology, config_index, fid, iid, run_index).
void sort_records(std::vector<RunRecord>& records);

extern const char* const kRunsCsvHeader;
extern const char* const kAggregateCsvHeader;

// Sorts a copy of the records and writes them with round-trip float
// precision; seeds as unsigned decimals.
void write_runs_csv(const std::string& path, std::vector<RunRecord> records);
std::vector<RunRecord> read_runs_csv(const std::string& path);
void write_aggregate_csv(const std::string& path, const std::vector<AggregateRow>& rows);

} // namespace swarmx
