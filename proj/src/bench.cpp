#include "swarmx/bench.hpp"

#include "swarmx/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace swarmx {

namespace {

constexpr std::array<int, 12> kSupportedFids = {1, 2, 3, 4, 5, 6, 8, 9, 12, 15, 17, 21};

// Domain-separation tags for the per-instance derivation streams.
constexpr std::uint64_t kShiftStream = 0x7368696674ULL;  // "shift"
constexpr std::uint64_t kPeaksStream = 0x7065616b73ULL;  // "peaks"

std::uint64_t instance_key(std::uint64_t stream, int fid, int iid, int dim) {
    std::uint64_t h = hash_combine(stream, static_cast<std::uint64_t>(fid));
    h = hash_combine(h, static_cast<std::uint64_t>(iid));
    h = hash_combine(h, static_cast<std::uint64_t>(dim));
    return h;
}

double rastrigin(std::span<const double> x, const double* shift, const double* scale) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    const double n = static_cast<double>(x.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double z = x[i] - shift[i];
        if (scale != nullptr) z *= scale[i];
        sum += z * z - 10.0 * std::cos(two_pi * z);
    }
    return 10.0 * n + sum;
}

double rosenbrock_shifted(std::span<const double> x, const double* shift) {
    // Classic Rosenbrock with the optimum moved from the all-ones point
    // onto the instance shift: w_i = (x_i - shift_i) + 1.
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double wi = x[i] - shift[i] + 1.0;
        const double wn = x[i + 1] - shift[i + 1] + 1.0;
        const double t1 = wi * wi - wn;
        const double t2 = wi - 1.0;
        sum += 100.0 * t1 * t1 + t2 * t2;
    }
    return sum;
}

} // namespace

ProblemId::ProblemId(int fid) : fid_(fid) {
    if (!is_supported(fid)) {
        throw std::invalid_argument("unsupported function id: " + std::to_string(fid));
    }
}

bool ProblemId::is_supported(int fid) {
    for (int f : kSupportedFids) {
        if (f == fid) return true;
    }
    return false;
}

std::span<const int> ProblemId::supported() { return kSupportedFids; }

ModalClass modal_class(ProblemId pid) {
    switch (pid.fid()) {
        case 1: case 2: case 5: case 6: case 8: case 9: case 12:
            return ModalClass::Unimodal;
        case 3: case 4: case 15:
            return ModalClass::Multimodal;
        default:
            return ModalClass::HighlyMultimodal;  // 17, 21
    }
}

ProblemInstance::ProblemInstance(ProblemId pid, int dim, int iid,
                                 std::vector<double> shift, double f_opt)
    : pid_(pid), dim_(dim), iid_(iid), shift_(std::move(shift)), f_opt_(f_opt) {
    if (dim_ < 1) throw std::invalid_argument("dimension must be >= 1");
    if (iid_ < 1) throw std::invalid_argument("instance id must be >= 1");
    if (shift_.size() != static_cast<std::size_t>(dim_)) {
        throw std::invalid_argument("shift length does not match dimension");
    }
    for (double s : shift_) {
        if (!std::isfinite(s) || s < kShiftLower || s > kShiftUpper) {
            throw std::invalid_argument("shift coordinate outside [-4, 4]");
        }
    }
    build_aux();
}

void ProblemInstance::build_aux() {
    const int fid = pid_.fid();
    const double d1 = dim_ > 1 ? static_cast<double>(dim_ - 1) : 1.0;

    if (fid == 2 || fid == 4 || fid == 5) {
        const double expo = fid == 2 ? 6.0 : (fid == 4 ? 0.5 : 1.0);
        scale_.resize(dim_);
        for (int i = 0; i < dim_; ++i) {
            scale_[i] = std::pow(10.0, expo * static_cast<double>(i) / d1);
        }
    }

    if (fid == 21) {
        // One dominant peak of height 10 at the shift plus 20 lower peaks
        // scattered inside the box; derived from its own keyed stream.
        Rng rng(instance_key(kPeaksStream, fid, iid_, dim_));
        peaks_.reserve(21);
        peaks_.push_back({shift_, 10.0, 1.0});
        for (int j = 0; j < 20; ++j) {
            GallagherPeak peak;
            peak.center.resize(dim_);
            for (int i = 0; i < dim_; ++i) peak.center[i] = rng.uniform(-4.9, 4.9);
            peak.height = 1.1 + 8.0 * static_cast<double>(j) / 19.0;
            peak.sharpness = rng.uniform(1.0, 10.0);
            peaks_.push_back(std::move(peak));
        }
    }
}

double ProblemInstance::evaluate(std::span<const double> x) const {
    if (x.size() != static_cast<std::size_t>(dim_)) {
        throw std::invalid_argument("input length does not match instance dimension");
    }
    for (double xi : x) {
        if (!std::isfinite(xi)) throw std::invalid_argument("non-finite input coordinate");
    }

    const double* s = shift_.data();
    double value = 0.0;

    switch (pid_.fid()) {
        case 1: {  // sphere
            for (std::size_t i = 0; i < x.size(); ++i) {
                const double z = x[i] - s[i];
                value += z * z;
            }
            break;
        }
        case 2: {  // ellipsoid, condition 1e6
            for (std::size_t i = 0; i < x.size(); ++i) {
                const double z = x[i] - s[i];
                value += scale_[i] * z * z;
            }
            break;
        }
        case 3:
        case 15: {
            value = rastrigin(x, s, nullptr);
            break;
        }
        case 4: {  // scaled Rastrigin
            value = rastrigin(x, s, scale_.data());
            break;
        }
        case 5: {  // linear slope away from the optimum
            for (std::size_t i = 0; i < x.size(); ++i) {
                value += scale_[i] * std::abs(x[i] - s[i]);
            }
            break;
        }
        case 6: {  // attractive sector
            double sum = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                const double z = x[i] - s[i];
                const double t = (z * s[i] > 0.0 ? 100.0 : 1.0) * z;
                sum += t * t;
            }
            value = std::pow(sum, 0.9);
            break;
        }
        case 8:
        case 9: {
            value = rosenbrock_shifted(x, s);
            break;
        }
        case 12: {  // bent cigar
            const double z0 = x[0] - s[0];
            value = z0 * z0;
            for (std::size_t i = 1; i < x.size(); ++i) {
                const double z = x[i] - s[i];
                value += 1.0e6 * z * z;
            }
            break;
        }
        case 17: {  // Schaffers F7
            if (dim_ < 2) break;
            double acc = 0.0;
            for (std::size_t i = 0; i + 1 < x.size(); ++i) {
                const double zi = x[i] - s[i];
                const double zn = x[i + 1] - s[i + 1];
                const double si = std::sqrt(zi * zi + zn * zn);
                const double root = std::sqrt(si);
                const double osc = std::sin(50.0 * std::pow(si, 0.2));
                acc += root + root * osc * osc;
            }
            const double mean = acc / static_cast<double>(dim_ - 1);
            value = mean * mean;
            break;
        }
        case 21: {  // Gaussian peaks
            double best = 0.0;
            for (const GallagherPeak& peak : peaks_) {
                double dist2 = 0.0;
                for (std::size_t i = 0; i < x.size(); ++i) {
                    const double d = x[i] - peak.center[i];
                    dist2 += d * d;
                }
                const double g = peak.height *
                                 std::exp(-peak.sharpness * dist2 / (2.0 * dim_));
                if (g > best) best = g;
            }
            const double gap = 10.0 - best;
            value = gap * gap;
            break;
        }
    }

    return value + f_opt_;
}

ProblemInstance make_instance(ProblemId pid, int iid, int dim) {
    if (iid < 1) throw std::invalid_argument("instance id must be >= 1");
    if (dim < 1) throw std::invalid_argument("dimension must be >= 1");

    Rng rng(instance_key(kShiftStream, pid.fid(), iid, dim));
    std::vector<double> shift(dim);
    for (int i = 0; i < dim; ++i) shift[i] = rng.uniform(kShiftLower, kShiftUpper);
    return ProblemInstance(pid, dim, iid, std::move(shift), 0.0);
}

double evaluate(const ProblemInstance& inst, std::span<const double> x) {
    return inst.evaluate(x);
}

} // namespace swarmx
