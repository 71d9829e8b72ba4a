#include "swarmx/xplain.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace swarmx {

namespace {

std::array<double, kNumFeatures> features_of(const ConfigTuple& cfg) {
    return {cfg.c1, cfg.c2, cfg.w, static_cast<double>(cfg.n),
            static_cast<double>(cfg.k), static_cast<double>(cfg.p),
            static_cast<double>(cfg.r)};
}

// Per-feature sorted distinct levels and each row's level index.
struct GridLevels {
    std::array<std::vector<double>, kNumFeatures> levels;
    std::vector<std::array<int, kNumFeatures>> row_level;
};

GridLevels grid_levels(const FeatureMatrix& fm) {
    GridLevels gl;
    for (int f = 0; f < kNumFeatures; ++f) {
        std::vector<double> vals;
        vals.reserve(fm.size());
        for (const auto& row : fm.rows) vals.push_back(row[f]);
        std::sort(vals.begin(), vals.end());
        vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
        gl.levels[f] = std::move(vals);
    }
    gl.row_level.resize(fm.size());
    for (std::size_t i = 0; i < fm.size(); ++i) {
        for (int f = 0; f < kNumFeatures; ++f) {
            const auto& lv = gl.levels[f];
            const auto it = std::lower_bound(lv.begin(), lv.end(), fm.rows[i][f]);
            gl.row_level[i][f] = static_cast<int>(it - lv.begin());
        }
    }
    return gl;
}

// A complete factorial holds every level combination exactly once.
void require_factorial(const FeatureMatrix& fm, const GridLevels& gl) {
    std::size_t expected = 1;
    for (int f = 0; f < kNumFeatures; ++f) expected *= gl.levels[f].size();
    if (expected != fm.size()) {
        throw std::invalid_argument("feature matrix is not a complete factorial grid");
    }
    std::vector<bool> seen(expected, false);
    for (std::size_t i = 0; i < fm.size(); ++i) {
        std::size_t key = 0;
        for (int f = 0; f < kNumFeatures; ++f) {
            key = key * gl.levels[f].size() + gl.row_level[i][f];
        }
        if (seen[key]) {
            throw std::invalid_argument("duplicate grid point in feature matrix");
        }
        seen[key] = true;
    }
}

// Shapley coalition weights |S|! (F-|S|-1)! / F!.
std::array<double, kNumFeatures> coalition_weights() {
    std::array<double, kNumFeatures + 1> fact{};
    fact[0] = 1.0;
    for (int i = 1; i <= kNumFeatures; ++i) fact[i] = fact[i - 1] * i;
    std::array<double, kNumFeatures> w{};
    for (int s = 0; s < kNumFeatures; ++s) {
        w[s] = fact[s] * fact[kNumFeatures - s - 1] / fact[kNumFeatures];
    }
    return w;
}

} // namespace

int feature_index(std::string_view name) {
    for (int f = 0; f < kNumFeatures; ++f) {
        if (name == kFeatureNames[f]) return f;
    }
    throw std::invalid_argument("unknown feature: " + std::string(name));
}

FeatureMatrix build_feature_matrix(const std::vector<RunRecord>& records,
                                   std::optional<int> fid_filter) {
    std::vector<RunRecord> sorted;
    sorted.reserve(records.size());
    for (const RunRecord& rec : records) {
        if (!fid_filter || rec.fid == *fid_filter) sorted.push_back(rec);
    }
    if (sorted.empty()) throw std::runtime_error("no records match the requested slice");
    sort_records(sorted);

    struct Group {
        ConfigTuple config;
        double sum = 0.0;
        std::size_t count = 0;
    };
    std::map<int, Group> groups;
    for (const RunRecord& rec : sorted) {
        auto [it, inserted] = groups.try_emplace(rec.config_index, Group{rec.config, 0.0, 0});
        if (!inserted && !(it->second.config == rec.config)) {
            throw std::runtime_error("conflicting hyperparameters for config_index " +
                                     std::to_string(rec.config_index));
        }
        it->second.sum += rec.aocc;
        it->second.count += 1;
    }

    const std::size_t expected = groups.begin()->second.count;
    FeatureMatrix fm;
    fm.rows.reserve(groups.size());
    for (const auto& [ci, group] : groups) {
        if (group.count != expected) {
            throw std::runtime_error("incomplete group for config_index " +
                                     std::to_string(ci));
        }
        fm.rows.push_back(features_of(group.config));
        fm.target.push_back(group.sum / static_cast<double>(group.count));
        fm.config_index.push_back(ci);
    }
    return fm;
}

double SurrogateModel::Tree::predict(std::span<const double> x) const {
    int idx = 0;
    while (nodes[idx].feature >= 0) {
        const Node& node = nodes[idx];
        idx = x[node.feature] <= node.threshold ? node.left : node.right;
    }
    return nodes[idx].value;
}

double SurrogateModel::predict(std::span<const double> x) const {
    if (x.size() != kNumFeatures) throw std::invalid_argument("expected 7 feature values");
    double sum = 0.0;
    for (const Tree& tree : forest_) sum += tree.predict(x);
    return sum / static_cast<double>(forest_.size());
}

namespace {

struct TreeBuilder {
    const FeatureMatrix& fm;
    int max_depth;
    std::vector<SurrogateModel::Node> nodes;

    // rows may contain duplicates (bootstrap). Returns the node index.
    int build(std::vector<int>& rows, int depth) {
        double sum = 0.0, ssq = 0.0;
        for (int r : rows) {
            sum += fm.target[r];
            ssq += fm.target[r] * fm.target[r];
        }
        const double n = static_cast<double>(rows.size());
        const double mean = sum / n;
        const double sse_here = ssq - sum * sum / n;

        const auto leaf = [&] {
            nodes.push_back({-1, 0.0, -1, -1, mean});
            return static_cast<int>(nodes.size()) - 1;
        };
        if (depth >= max_depth || rows.size() < 2 || sse_here <= 1e-15) return leaf();

        int best_feature = -1;
        double best_threshold = 0.0;
        double best_sse = sse_here;

        std::vector<std::pair<double, double>> pts;  // (feature value, target)
        for (int f = 0; f < kNumFeatures; ++f) {
            pts.clear();
            pts.reserve(rows.size());
            for (int r : rows) pts.emplace_back(fm.rows[r][f], fm.target[r]);
            std::sort(pts.begin(), pts.end());
            if (pts.front().first == pts.back().first) continue;

            double left_sum = 0.0, left_ssq = 0.0;
            for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
                left_sum += pts[i].second;
                left_ssq += pts[i].second * pts[i].second;
                if (pts[i].first == pts[i + 1].first) continue;

                const double nl = static_cast<double>(i + 1);
                const double nr = n - nl;
                const double right_sum = sum - left_sum;
                const double right_ssq = ssq - left_ssq;
                const double sse = (left_ssq - left_sum * left_sum / nl) +
                                   (right_ssq - right_sum * right_sum / nr);
                if (sse < best_sse) {
                    best_sse = sse;
                    best_feature = f;
                    best_threshold = 0.5 * (pts[i].first + pts[i + 1].first);
                }
            }
        }
        if (best_feature < 0) return leaf();

        std::vector<int> left, right;
        left.reserve(rows.size());
        right.reserve(rows.size());
        for (int r : rows) {
            (fm.rows[r][best_feature] <= best_threshold ? left : right).push_back(r);
        }
        rows.clear();
        rows.shrink_to_fit();

        nodes.push_back({best_feature, best_threshold, -1, -1, mean});
        const int self = static_cast<int>(nodes.size()) - 1;
        const int l = build(left, depth + 1);
        const int r = build(right, depth + 1);
        nodes[self].left = l;
        nodes[self].right = r;
        return self;
    }
};

} // namespace

SurrogateModel fit_surrogate(const FeatureMatrix& fm, int trees, int max_depth,
                             std::uint64_t seed) {
    if (fm.size() == 0) throw std::invalid_argument("empty feature matrix");
    if (trees < 1) throw std::invalid_argument("tree count must be >= 1");
    if (max_depth < 1) throw std::invalid_argument("max depth must be >= 1");

    SurrogateModel model;
    model.max_depth_ = max_depth;
    model.seed_ = seed;
    model.forest_.resize(trees);

    const std::size_t m = fm.size();
    for (int t = 0; t < trees; ++t) {
        Rng rng(hash_combine(seed, static_cast<std::uint64_t>(t)));
        std::vector<int> sample(m);
        for (std::size_t i = 0; i < m; ++i) {
            sample[i] = static_cast<int>(rng.next_below(m));
        }
        TreeBuilder builder{fm, max_depth, {}};
        builder.build(sample, 0);
        model.forest_[t].nodes = std::move(builder.nodes);
    }

    const bool constant_target =
        std::all_of(fm.target.begin(), fm.target.end(),
                    [&](double y) { return y == fm.target.front(); });
    if (constant_target) {
        model.r2_train_ = 1.0;  // nothing left to explain
        return model;
    }

    double sse = 0.0, sst = 0.0;
    double mean = 0.0;
    for (double y : fm.target) mean += y;
    mean /= static_cast<double>(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double err = fm.target[i] - model.predict(fm.rows[i]);
        sse += err * err;
        const double dev = fm.target[i] - mean;
        sst += dev * dev;
    }
    model.r2_train_ = 1.0 - sse / sst;
    return model;
}

bool is_complete_factorial(const FeatureMatrix& fm) {
    if (fm.size() == 0) return false;
    try {
        require_factorial(fm, grid_levels(fm));
    } catch (const std::invalid_argument&) {
        return false;
    }
    return true;
}

std::vector<std::array<double, kNumFeatures>> shapley_exact_all(const FeatureMatrix& fm) {
    if (fm.size() == 0) throw std::invalid_argument("empty feature matrix");
    const GridLevels gl = grid_levels(fm);
    require_factorial(fm, gl);

    const std::size_t m = fm.size();
    constexpr int n_masks = 1 << kNumFeatures;

    // v[row][mask]: mean target over rows agreeing with `row` on the
    // coalition `mask`, i.e. the exact marginalization over the rest.
    std::vector<std::array<double, n_masks>> v(m);
    std::vector<double> group_sum;
    std::vector<std::size_t> group_count;
    std::vector<std::size_t> row_key(m);

    for (int mask = 0; mask < n_masks; ++mask) {
        std::size_t n_groups = 1;
        for (int f = 0; f < kNumFeatures; ++f) {
            if (mask & (1 << f)) n_groups *= gl.levels[f].size();
        }
        group_sum.assign(n_groups, 0.0);
        group_count.assign(n_groups, 0);
        for (std::size_t i = 0; i < m; ++i) {
            std::size_t key = 0;
            for (int f = 0; f < kNumFeatures; ++f) {
                if (mask & (1 << f)) key = key * gl.levels[f].size() + gl.row_level[i][f];
            }
            row_key[i] = key;
            group_sum[key] += fm.target[i];
            group_count[key] += 1;
        }
        for (std::size_t i = 0; i < m; ++i) {
            v[i][mask] = group_sum[row_key[i]] / static_cast<double>(group_count[row_key[i]]);
        }
    }

    const std::array<double, kNumFeatures> w = coalition_weights();
    std::vector<std::array<double, kNumFeatures>> phi(m, std::array<double, kNumFeatures>{});
    for (std::size_t i = 0; i < m; ++i) {
        for (int f = 0; f < kNumFeatures; ++f) {
            const int bit = 1 << f;
            double acc = 0.0;
            for (int mask = 0; mask < n_masks; ++mask) {
                if (mask & bit) continue;
                acc += w[std::popcount(static_cast<unsigned>(mask))] *
                       (v[i][mask | bit] - v[i][mask]);
            }
            phi[i][f] = acc;
        }
    }
    return phi;
}

std::vector<Attribution> shapley_exact_grid(const FeatureMatrix& fm, int sample_index) {
    if (sample_index < 0 || sample_index >= static_cast<int>(fm.size())) {
        throw std::invalid_argument("sample index out of range");
    }
    const auto phi = shapley_exact_all(fm);
    std::vector<Attribution> out;
    out.reserve(kNumFeatures);
    for (int f = 0; f < kNumFeatures; ++f) {
        out.push_back({sample_index, kFeatureNames[f], fm.rows[sample_index][f],
                       phi[sample_index][f]});
    }
    return out;
}

std::vector<Attribution> shapley_surrogate(const SurrogateModel& model,
                                           const FeatureMatrix& fm, int sample_index,
                                           int permutations, std::uint64_t seed) {
    if (fm.size() == 0) throw std::invalid_argument("empty feature matrix");
    if (sample_index < 0 || sample_index >= static_cast<int>(fm.size())) {
        throw std::invalid_argument("sample index out of range");
    }
    if (permutations < 1) throw std::invalid_argument("permutation count must be >= 1");

    Rng rng(hash_combine(seed, static_cast<std::uint64_t>(sample_index)));
    const std::array<double, kNumFeatures>& x = fm.rows[sample_index];

    std::array<double, kNumFeatures> phi{};
    std::array<int, kNumFeatures> order;
    std::array<double, kNumFeatures> probe;

    for (int t = 0; t < permutations; ++t) {
        std::iota(order.begin(), order.end(), 0);
        for (int i = kNumFeatures - 1; i > 0; --i) {
            const int j = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(i + 1)));
            std::swap(order[i], order[j]);
        }
        const std::size_t bg = rng.next_below(fm.size());
        probe = fm.rows[bg];

        double prev = model.predict(probe);
        for (int f : order) {
            probe[f] = x[f];
            const double cur = model.predict(probe);
            phi[f] += cur - prev;
            prev = cur;
        }
    }

    std::vector<Attribution> out;
    out.reserve(kNumFeatures);
    for (int f = 0; f < kNumFeatures; ++f) {
        out.push_back({sample_index, kFeatureNames[f], x[f],
                       phi[f] / static_cast<double>(permutations)});
    }
    return out;
}

namespace {

std::vector<SwarmPlotRow> plot_rows_with_bounds(
    const std::vector<Attribution>& attributions,
    const std::array<double, kNumFeatures>& lo,
    const std::array<double, kNumFeatures>& hi) {
    std::array<double, kNumFeatures> abs_sum{};
    std::array<std::size_t, kNumFeatures> count{};
    std::vector<int> feature_of;
    feature_of.reserve(attributions.size());
    for (const Attribution& a : attributions) {
        const int f = feature_index(a.feature);
        feature_of.push_back(f);
        abs_sum[f] += std::abs(a.shap_value);
        count[f] += 1;
    }

    std::array<int, kNumFeatures> order;
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        const double ma = count[a] ? abs_sum[a] / count[a] : 0.0;
        const double mb = count[b] ? abs_sum[b] / count[b] : 0.0;
        return ma > mb;
    });

    std::vector<SwarmPlotRow> rows;
    rows.reserve(attributions.size());
    for (int f : order) {
        if (count[f] == 0) continue;
        for (std::size_t i = 0; i < attributions.size(); ++i) {
            if (feature_of[i] != f) continue;
            const Attribution& a = attributions[i];
            const double span = hi[f] - lo[f];
            const double norm = span > 0.0 ? (a.feature_value - lo[f]) / span : 0.5;
            rows.push_back({a.feature, a.shap_value, norm});
        }
    }
    return rows;
}

} // namespace

std::vector<SwarmPlotRow> swarm_plot_data(const std::vector<Attribution>& attributions,
                                          const FeatureMatrix& fm) {
    std::array<double, kNumFeatures> lo{}, hi{};
    for (int f = 0; f < kNumFeatures; ++f) {
        lo[f] = hi[f] = fm.size() ? fm.rows[0][f] : 0.0;
        for (const auto& row : fm.rows) {
            lo[f] = std::min(lo[f], row[f]);
            hi[f] = std::max(hi[f], row[f]);
        }
    }
    return plot_rows_with_bounds(attributions, lo, hi);
}

std::vector<SwarmPlotRow> swarm_plot_data(const std::vector<Attribution>& attributions) {
    std::array<double, kNumFeatures> lo{}, hi{};
    std::array<bool, kNumFeatures> touched{};
    for (const Attribution& a : attributions) {
        const int f = feature_index(a.feature);
        if (!touched[f]) {
            lo[f] = hi[f] = a.feature_value;
            touched[f] = true;
        }
        lo[f] = std::min(lo[f], a.feature_value);
        hi[f] = std::max(hi[f], a.feature_value);
    }
    return plot_rows_with_bounds(attributions, lo, hi);
}

} // namespace swarmx
