#pragma once

#include "swarmx/campaign.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace swarmx {

inline constexpr int kNumFeatures = 7;
inline constexpr std::array<const char*, kNumFeatures> kFeatureNames = {
    "c1", "c2", "w", "n", "k", "p", "r"};

int feature_index(std::string_view name);

// One row per configuration; target = mean AOCC of that configuration over
// all runs of the selected slice.
struct FeatureMatrix {
    std::vector<std::array<double, kNumFeatures>> rows;
    std::vector<double> target;
    std::vector<int> config_index;  // provenance, parallel to rows

    std::size_t size() const { return rows.size(); }
};

// Groups records by config_index and averages AOCC over (iid, run). With a
// fid filter only that function's records enter; otherwise the mean spans
// every function present. Uneven groups raise std::runtime_error.
FeatureMatrix build_feature_matrix(const std::vector<RunRecord>& records,
                                   std::optional<int> fid_filter);

// Bagged regression trees with axis-aligned variance-reduction splits.
class SurrogateModel {
public:
    struct Node {
        int feature = -1;        // -1 marks a leaf
        double threshold = 0.0;  // go left when value <= threshold
        int left = -1;
        int right = -1;
        double value = 0.0;
    };

    struct Tree {
        std::vector<Node> nodes;
        double predict(std::span<const double> x) const;
    };

    double predict(std::span<const double> x) const;

    double r2_train() const { return r2_train_; }
    int trees() const { return static_cast<int>(forest_.size()); }
    int max_depth() const { return max_depth_; }
    std::uint64_t seed() const { return seed_; }

private:
    std::vector<Tree> forest_;
    double r2_train_ = 0.0;
    int max_depth_ = 0;
    std::uint64_t seed_ = 0;

    friend SurrogateModel fit_surrogate(const FeatureMatrix&, int, int, std::uint64_t);
};

inline constexpr std::uint64_t kDefaultSurrogateSeed = 0x5eedULL;

// Each tree fits a bootstrap resample drawn from a generator keyed on
// (seed, tree index), so the forest is reproducible for a fixed seed
// regardless of build parallelism. Training R^2 = 1 - SSE/SST over the
// training rows; a zero-variance target scores 1 by convention.
SurrogateModel fit_surrogate(const FeatureMatrix& fm, int trees = 100, int max_depth = 8,
                             std::uint64_t seed = kDefaultSurrogateSeed);

struct Attribution {
    int sample_index;
    std::string feature;
    double feature_value;
    double shap_value;
};

// True when every combination of observed per-feature levels appears
// exactly once.
bool is_complete_factorial(const FeatureMatrix& fm);

// Exact interventional Shapley values of the grid target. Coalition values
// are marginal means over the complete factorial, so the efficiency,
// dummy and symmetry axioms hold up to float rounding. Requires every
// level combination to appear exactly once.
std::vector<Attribution> shapley_exact_grid(const FeatureMatrix& fm, int sample_index);

// Batch variant: one row of 7 values per sample, feature order as in
// kFeatureNames.
std::vector<std::array<double, kNumFeatures>> shapley_exact_all(const FeatureMatrix& fm);

// Permutation-sampling Shapley values of the model prediction, background
// drawn uniformly from the grid rows. The estimate is unbiased; its Monte
// Carlo error shrinks as 1/sqrt(permutations). The generator is keyed on
// (seed, sample_index) so per-sample results are order-independent.
std::vector<Attribution> shapley_surrogate(const SurrogateModel& model,
                                           const FeatureMatrix& fm, int sample_index,
                                           int permutations = 256,
                                           std::uint64_t seed = kDefaultSurrogateSeed);

struct SwarmPlotRow {
    std::string feature;
    double shap_value;
    double normalized_feature_value;  // min-max over the feature's column
};

// Flattens attributions into plot rows ordered by descending mean |shap|
// per feature (ties by feature order). A feature with a single distinct
// value normalizes to 0.5. The one-argument form takes normalization
// bounds from the attribution values themselves, which coincides with the
// feature-matrix bounds on complete slices.
std::vector<SwarmPlotRow> swarm_plot_data(const std::vector<Attribution>& attributions,
                                          const FeatureMatrix& fm);
std::vector<SwarmPlotRow> swarm_plot_data(const std::vector<Attribution>& attributions);

} // namespace swarmx
