#pragma once

#include <array>
#include <span>
#include <vector>

namespace swarmx {

// Search box shared by the whole suite; optima are placed strictly inside.
inline constexpr double kBoxLower = -5.0;
inline constexpr double kBoxUpper = 5.0;
inline constexpr double kShiftLower = -4.0;
inline constexpr double kShiftUpper = 4.0;

enum class ModalClass { Unimodal, Multimodal, HighlyMultimodal };

// Identifier of one of the 12 supported benchmark functions.
class ProblemId {
public:
    explicit ProblemId(int fid);

    int fid() const { return fid_; }

    static bool is_supported(int fid);
    static std::span<const int> supported();

private:
    int fid_;
};

ModalClass modal_class(ProblemId pid);

struct GallagherPeak {
    std::vector<double> center;
    double height;
    double sharpness;
};

// One deterministic shifted instance of a benchmark function. The optimum
// sits at `shift` with objective value `f_opt` (always 0 here); everything
// derived from (fid, iid, dim) is reproducible bit-for-bit.
class ProblemInstance {
public:
    ProblemInstance(ProblemId pid, int dim, int iid, std::vector<double> shift,
                    double f_opt = 0.0);

    int fid() const { return pid_.fid(); }
    ProblemId pid() const { return pid_; }
    int dim() const { return dim_; }
    int iid() const { return iid_; }
    const std::vector<double>& shift() const { return shift_; }
    double f_opt() const { return f_opt_; }

    double evaluate(std::span<const double> x) const;

private:
    ProblemId pid_;
    int dim_;
    int iid_;
    std::vector<double> shift_;
    double f_opt_;
    std::vector<double> scale_;          // per-coordinate scaling (fid 2, 4, 5)
    std::vector<GallagherPeak> peaks_;   // fid 21 only

    void build_aux();
};

// Builds the instance for (pid, iid, dim): shift drawn uniformly from
// [-4, 4]^dim by a generator keyed on (fid, iid, dim), f_opt = 0.
ProblemInstance make_instance(ProblemId pid, int iid, int dim);

double evaluate(const ProblemInstance& inst, std::span<const double> x);

} // namespace swarmx
