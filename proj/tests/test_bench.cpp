#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "swarmx/bench.hpp"
#include "swarmx/rng.hpp"

#include <cmath>
#include <limits>
#include <vector>

using namespace swarmx;

namespace {

ProblemInstance zero_shift_instance(int fid, int dim) {
    return ProblemInstance(ProblemId{fid}, dim, 1, std::vector<double>(dim, 0.0));
}

} // namespace

TEST_CASE("unsupported function ids are rejected") {
    CHECK_THROWS_AS(ProblemId{99}, std::invalid_argument);
    CHECK_THROWS_AS(ProblemId{0}, std::invalid_argument);
    CHECK_THROWS_AS(ProblemId{7}, std::invalid_argument);   // gap inside the range
    CHECK_THROWS_AS(ProblemId{-1}, std::invalid_argument);
    CHECK_NOTHROW(ProblemId{1});
    CHECK_NOTHROW(ProblemId{21});
}

TEST_CASE("modal class mapping") {
    CHECK(modal_class(ProblemId{1}) == ModalClass::Unimodal);
    CHECK(modal_class(ProblemId{3}) == ModalClass::Multimodal);
    CHECK(modal_class(ProblemId{17}) == ModalClass::HighlyMultimodal);

    for (int fid : {1, 2, 5, 6, 8, 9, 12}) {
        CHECK(modal_class(ProblemId{fid}) == ModalClass::Unimodal);
    }
    for (int fid : {3, 4, 15}) {
        CHECK(modal_class(ProblemId{fid}) == ModalClass::Multimodal);
    }
    for (int fid : {17, 21}) {
        CHECK(modal_class(ProblemId{fid}) == ModalClass::HighlyMultimodal);
    }
}

TEST_CASE("make_instance is deterministic") {
    const ProblemInstance a = make_instance(ProblemId{1}, 1, 2);
    const ProblemInstance b = make_instance(ProblemId{1}, 1, 2);
    CHECK(a.shift() == b.shift());
    CHECK(a.f_opt() == 0.0);

    // different instance ids move the optimum
    const ProblemInstance c = make_instance(ProblemId{3}, 1, 2);
    const ProblemInstance d = make_instance(ProblemId{3}, 2, 2);
    CHECK(c.shift() != d.shift());
}

TEST_CASE("make_instance validates arguments") {
    CHECK_THROWS_AS(make_instance(ProblemId{1}, 0, 2), std::invalid_argument);
    CHECK_THROWS_AS(make_instance(ProblemId{1}, 1, 0), std::invalid_argument);
}

TEST_CASE("shift coordinates stay strictly inside the box") {
    for (int fid : ProblemId::supported()) {
        for (int iid = 1; iid <= 5; ++iid) {
            const ProblemInstance inst = make_instance(ProblemId{fid}, iid, 2);
            for (double s : inst.shift()) {
                CHECK(s >= kShiftLower);
                CHECK(s <= kShiftUpper);
            }
        }
    }
}

TEST_CASE("sphere hand values") {
    const ProblemInstance inst = zero_shift_instance(1, 2);
    CHECK(evaluate(inst, std::vector<double>{0.0, 0.0}) == 0.0);
    CHECK(evaluate(inst, std::vector<double>{1.0, 2.0}) == 5.0);
}

TEST_CASE("rastrigin hand value") {
    // 10*2 + 2*(0.25 - 10*cos(pi)) = 20 + 2*10.25 = 40.5
    const ProblemInstance inst = zero_shift_instance(3, 2);
    CHECK(evaluate(inst, std::vector<double>{0.5, 0.5}) == doctest::Approx(40.5).epsilon(1e-12));
}

TEST_CASE("evaluate validates input") {
    const ProblemInstance inst = make_instance(ProblemId{1}, 1, 2);
    CHECK_THROWS_AS(evaluate(inst, std::vector<double>{1.0}), std::invalid_argument);
    CHECK_THROWS_AS(evaluate(inst, std::vector<double>{1.0, 2.0, 3.0}),
                    std::invalid_argument);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(evaluate(inst, std::vector<double>{nan, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(evaluate(inst, std::vector<double>{0.0, inf}), std::invalid_argument);
}

TEST_CASE("optimum placement: evaluate(inst, shift) == 0 for every function") {
    for (int fid : ProblemId::supported()) {
        for (int dim : {2, 5, 10}) {
            for (int iid = 1; iid <= 5; ++iid) {
                const ProblemInstance inst = make_instance(ProblemId{fid}, iid, dim);
                CAPTURE(fid);
                CAPTURE(dim);
                CAPTURE(iid);
                CHECK(evaluate(inst, inst.shift()) == 0.0);
            }
        }
    }
}

TEST_CASE("all functions are finite across the box") {
    Rng rng(20240801);
    for (int fid : ProblemId::supported()) {
        for (int dim : {2, 5}) {
            const ProblemInstance inst = make_instance(ProblemId{fid}, 1, dim);
            for (int trial = 0; trial < 200; ++trial) {
                std::vector<double> x(dim);
                for (double& xi : x) xi = rng.uniform(kBoxLower, kBoxUpper);
                const double v = evaluate(inst, x);
                CAPTURE(fid);
                CHECK(std::isfinite(v));
            }
        }
    }
}

TEST_CASE("sphere is nonnegative with a unique zero at the shift") {
    const ProblemInstance inst = make_instance(ProblemId{1}, 2, 2);
    Rng rng(7);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<double> x{rng.uniform(kBoxLower, kBoxUpper),
                              rng.uniform(kBoxLower, kBoxUpper)};
        const double v = evaluate(inst, x);
        CHECK(v >= 0.0);
        if (x != inst.shift()) CHECK(v > 0.0);
    }
    CHECK(evaluate(inst, inst.shift()) == 0.0);
}

TEST_CASE("instances reconstructed in isolation evaluate identically") {
    Rng rng(99);
    for (int fid : ProblemId::supported()) {
        const ProblemInstance a = make_instance(ProblemId{fid}, 3, 2);
        const ProblemInstance b = make_instance(ProblemId{fid}, 3, 2);
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<double> x{rng.uniform(kBoxLower, kBoxUpper),
                                  rng.uniform(kBoxLower, kBoxUpper)};
            CHECK(evaluate(a, x) == evaluate(b, x));
        }
    }
}

TEST_CASE("explicit construction validates the shift") {
    CHECK_THROWS_AS(ProblemInstance(ProblemId{1}, 2, 1, std::vector<double>{0.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(ProblemInstance(ProblemId{1}, 2, 1, std::vector<double>{4.5, 0.0}),
                    std::invalid_argument);
}
