#include "swarmx/campaign.hpp"

#include "swarmx/csv.hpp"
#include "swarmx/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace swarmx {

namespace {

constexpr std::uint64_t kSeedBase = 0x535741524d580001ULL;

struct MeanStd {
    double mean = 0.0;
    double std = 0.0;
};

MeanStd mean_std(const std::vector<double>& xs) {
    MeanStd out;
    if (xs.empty()) return out;
    double sum = 0.0;
    for (double x : xs) sum += x;
    out.mean = sum / static_cast<double>(xs.size());
    if (xs.size() > 1) {
        double ss = 0.0;
        for (double x : xs) {
            const double d = x - out.mean;
            ss += d * d;
        }
        out.std = std::sqrt(ss / static_cast<double>(xs.size() - 1));
    }
    return out;
}

std::string coordinate_label(Topology t, int config_index, int fid, int iid, int run) {
    std::ostringstream os;
    os << "topology=" << to_string(t) << " config_index=" << config_index
       << " fid=" << fid << " iid=" << iid << " run=" << run;
    return os.str();
}

} // namespace

Hyperparameters to_hyperparameters(const ConfigTuple& cfg, Topology topology) {
    Hyperparameters hp;
    hp.topology = topology;
    hp.c1 = cfg.c1;
    hp.c2 = cfg.c2;
    hp.w = cfg.w;
    hp.n = cfg.n;
    hp.k = cfg.k;
    hp.p = cfg.p;
    hp.r = cfg.r;
    return hp;
}

ConfigGrid ConfigGrid::full() {
    return ConfigGrid{
        .c1_values = {0.3, 0.5, 0.7, 0.9},
        .c2_values = {0.2, 0.4, 0.6, 0.7},
        .w_values = {0.9, 1.2, 0.4},
        .n_values = {50, 100, 150},
        .k_values = {1, 2, 3},
        .p_values = {1, 2},
        .r_values = {1, 2},
    };
}

ConfigGrid ConfigGrid::reduced() {
    return ConfigGrid{
        .c1_values = {0.3},
        .c2_values = {0.2},
        .w_values = {0.9},
        .n_values = {50},
        .k_values = {1},
        .p_values = {1},
        .r_values = {1},
    };
}

std::vector<ConfigTuple> enumerate_grid(const ConfigGrid& grid) {
    std::vector<ConfigTuple> out;
    out.reserve(grid.c1_values.size() * grid.c2_values.size() * grid.w_values.size() *
                grid.n_values.size() * grid.k_values.size() * grid.p_values.size() *
                grid.r_values.size());
    for (double c1 : grid.c1_values)
        for (double c2 : grid.c2_values)
            for (double w : grid.w_values)
                for (int n : grid.n_values)
                    for (int k : grid.k_values)
                        for (int p : grid.p_values)
                            for (int r : grid.r_values)
                                out.push_back(ConfigTuple{c1, c2, w, n, k, p, r});
    return out;
}

std::uint64_t derive_seed(Topology topology, int config_index, int fid, int iid,
                          int run_index) {
    std::uint64_t h = hash_combine(kSeedBase, static_cast<std::uint64_t>(topology) + 1);
    h = hash_combine(h, static_cast<std::uint64_t>(config_index));
    h = hash_combine(h, static_cast<std::uint64_t>(fid));
    h = hash_combine(h, static_cast<std::uint64_t>(iid));
    h = hash_combine(h, static_cast<std::uint64_t>(run_index));
    return h;
}

std::vector<RunRecord> execute_campaign(Topology topology,
                                        const std::vector<ConfigTuple>& grid,
                                        const CampaignSettings& settings) {
    if (grid.empty()) throw std::invalid_argument("empty configuration grid");
    if (settings.fids.empty()) throw std::invalid_argument("no function ids given");
    if (settings.budget < 1) throw std::invalid_argument("budget must be >= 1");
    if (settings.instances < 1 || settings.runs < 1) {
        throw std::invalid_argument("instances and runs must be >= 1");
    }
    if (settings.dim < 1) throw std::invalid_argument("dimension must be >= 1");
    for (int fid : settings.fids) ProblemId{fid};  // rejects unsupported ids
    for (const ConfigTuple& cfg : grid) validate(to_hyperparameters(cfg, topology));

    struct Coordinate {
        int config_index, fid, iid, run;
    };
    std::vector<Coordinate> coords;
    coords.reserve(grid.size() * settings.fids.size() *
                   static_cast<std::size_t>(settings.instances) * settings.runs);
    for (int ci = 0; ci < static_cast<int>(grid.size()); ++ci)
        for (int fid : settings.fids)
            for (int iid = 1; iid <= settings.instances; ++iid)
                for (int run = 1; run <= settings.runs; ++run)
                    coords.push_back({ci, fid, iid, run});

    std::vector<RunRecord> records(coords.size());

    int workers = settings.workers;
    if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
    workers = std::min<int>(workers, static_cast<int>(coords.size()));

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::mutex error_mutex;
    std::string error_message;

    auto work = [&] {
        for (;;) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= coords.size() || failed.load()) return;
            const Coordinate& c = coords[idx];
            try {
                const ProblemInstance inst =
                    make_instance(ProblemId{c.fid}, c.iid, settings.dim);
                const Hyperparameters hp = to_hyperparameters(grid[c.config_index], topology);
                const std::uint64_t seed =
                    derive_seed(topology, c.config_index, c.fid, c.iid, c.run);
                const ConvergenceTrace trace = run(hp, inst, settings.budget, seed);
                const std::vector<double> y = log_scale_trace(trace, inst.f_opt());

                RunRecord& rec = records[idx];
                rec.topology = topology;
                rec.config_index = c.config_index;
                rec.config = grid[c.config_index];
                rec.fid = c.fid;
                rec.iid = c.iid;
                rec.run_index = c.run;
                rec.seed = seed;
                rec.aocc = aocc(y, AoccBounds{});
                rec.final_best = trace.best_so_far.back();
            } catch (const std::exception& e) {
                std::scoped_lock lock(error_mutex);
                if (!failed.exchange(true)) {
                    error_message = "run failed at " +
                                    coordinate_label(topology, c.config_index, c.fid,
                                                     c.iid, c.run) +
                                    ": " + e.what();
                }
                return;
            }
        }
    };

    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int i = 0; i < workers; ++i) pool.emplace_back(work);
        for (std::thread& t : pool) t.join();
    }

    if (failed.load()) throw std::runtime_error(error_message);
    return records;
}

void sort_records(std::vector<RunRecord>& records) {
    std::sort(records.begin(), records.end(), [](const RunRecord& a, const RunRecord& b) {
        return std::tie(a.topology, a.config_index, a.fid, a.iid, a.run_index) <
               std::tie(b.topology, b.config_index, b.fid, b.iid, b.run_index);
    });
}

std::vector<AggregateRow> aggregate(const std::vector<RunRecord>& records,
                                    const std::vector<ConfigTuple>& grid) {
    if (records.empty()) throw std::runtime_error("no records to aggregate");

    std::vector<RunRecord> sorted = records;
    sort_records(sorted);

    const int n_configs = static_cast<int>(grid.size());

    // topology -> fid -> config -> aocc values (in canonical record order)
    std::map<Topology, std::map<int, std::vector<std::vector<double>>>> cells;
    for (const RunRecord& rec : sorted) {
        if (rec.config_index < 0 || rec.config_index >= n_configs) {
            throw std::runtime_error("record config_index outside the grid");
        }
        auto& per_fid = cells[rec.topology];
        auto& per_config = per_fid[rec.fid];
        if (per_config.empty()) per_config.resize(n_configs);
        per_config[rec.config_index].push_back(rec.aocc);
    }

    // Completeness: every cell of every (topology, fid) slice must hold the
    // same number of runs.
    std::size_t cell_size = 0;
    for (const auto& [topo, per_fid] : cells) {
        for (const auto& [fid, per_config] : per_fid) {
            for (int ci = 0; ci < n_configs; ++ci) {
                const std::size_t sz = per_config[ci].size();
                if (sz == 0) {
                    throw std::runtime_error("missing cell: topology=" +
                                             std::string(to_string(topo)) +
                                             " fid=" + std::to_string(fid) +
                                             " config_index=" + std::to_string(ci));
                }
                if (cell_size == 0) cell_size = sz;
                if (sz != cell_size) {
                    throw std::runtime_error("uneven cell: topology=" +
                                             std::string(to_string(topo)) +
                                             " fid=" + std::to_string(fid) +
                                             " config_index=" + std::to_string(ci));
                }
            }
        }
    }

    std::vector<AggregateRow> rows;
    for (const auto& [topo, per_fid] : cells) {
        // avg-best: config with the highest mean over every function present.
        std::vector<double> overall_mean(n_configs, 0.0);
        for (const auto& [fid, per_config] : per_fid) {
            for (int ci = 0; ci < n_configs; ++ci) {
                overall_mean[ci] += mean_std(per_config[ci]).mean;
            }
        }
        int avg_best = 0;
        for (int ci = 1; ci < n_configs; ++ci) {
            if (overall_mean[ci] > overall_mean[avg_best]) avg_best = ci;
        }

        for (const auto& [fid, per_config] : per_fid) {
            int single_best = 0;
            double best_mean = mean_std(per_config[0]).mean;
            for (int ci = 1; ci < n_configs; ++ci) {
                const double m = mean_std(per_config[ci]).mean;
                if (m > best_mean) {
                    best_mean = m;
                    single_best = ci;
                }
            }

            std::vector<double> all;
            all.reserve(cell_size * n_configs);
            for (int ci = 0; ci < n_configs; ++ci) {
                all.insert(all.end(), per_config[ci].begin(), per_config[ci].end());
            }

            const MeanStd sb = mean_std(per_config[single_best]);
            const MeanStd ab = mean_std(per_config[avg_best]);
            const MeanStd am = mean_std(all);
            rows.push_back(AggregateRow{fid, topo, sb.mean, sb.std, ab.mean, ab.std,
                                        am.mean, am.std});
        }
    }

    std::sort(rows.begin(), rows.end(), [](const AggregateRow& a, const AggregateRow& b) {
        return std::tie(a.fid, a.topology) < std::tie(b.fid, b.topology);
    });
    return rows;
}

const char* const kRunsCsvHeader =
    "topology,config_index,c1,c2,w,n,k,p,r,fid,iid,run,seed,aocc,final_best";
const char* const kAggregateCsvHeader =
    "fid,topology,single_best_mean,single_best_std,avg_best_mean,avg_best_std,"
    "all_mean,all_std";

void write_runs_csv(const std::string& path, std::vector<RunRecord> records) {
    sort_records(records);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << kRunsCsvHeader << '\n';
    for (const RunRecord& r : records) {
        out << to_string(r.topology) << ',' << r.config_index << ','
            << format_double(r.config.c1) << ',' << format_double(r.config.c2) << ','
            << format_double(r.config.w) << ',' << r.config.n << ',' << r.config.k << ','
            << r.config.p << ',' << r.config.r << ',' << r.fid << ',' << r.iid << ','
            << r.run_index << ',' << r.seed << ',' << format_double(r.aocc) << ','
            << format_double(r.final_best) << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<RunRecord> read_runs_csv(const std::string& path) {
    const auto rows = read_csv_rows(path, kRunsCsvHeader);
    if (rows.empty()) throw std::runtime_error("no records in " + path);

    std::vector<RunRecord> records;
    records.reserve(rows.size());
    for (const auto& cells : rows) {
        if (cells.size() != 15) {
            throw std::runtime_error("malformed row in " + path);
        }
        RunRecord r;
        r.topology = topology_from_string(cells[0]);
        r.config_index = static_cast<int>(parse_int(cells[1]));
        r.config.c1 = parse_double(cells[2]);
        r.config.c2 = parse_double(cells[3]);
        r.config.w = parse_double(cells[4]);
        r.config.n = static_cast<int>(parse_int(cells[5]));
        r.config.k = static_cast<int>(parse_int(cells[6]));
        r.config.p = static_cast<int>(parse_int(cells[7]));
        r.config.r = static_cast<int>(parse_int(cells[8]));
        r.fid = static_cast<int>(parse_int(cells[9]));
        r.iid = static_cast<int>(parse_int(cells[10]));
        r.run_index = static_cast<int>(parse_int(cells[11]));
        r.seed = parse_u64(cells[12]);
        r.aocc = parse_double(cells[13]);
        r.final_best = parse_double(cells[14]);
        records.push_back(r);
    }
    return records;
}

void write_aggregate_csv(const std::string& path, const std::vector<AggregateRow>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << kAggregateCsvHeader << '\n';
    for (const AggregateRow& r : rows) {
        out << r.fid << ',' << to_string(r.topology) << ','
            << format_double(r.single_best_mean) << ',' << format_double(r.single_best_std)
            << ',' << format_double(r.avg_best_mean) << ',' << format_double(r.avg_best_std)
            << ',' << format_double(r.all_mean) << ',' << format_double(r.all_std) << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

} // namespace swarmx
