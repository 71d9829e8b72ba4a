#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "swarmx/rng.hpp"
#include "swarmx/topology.hpp"

#include <cstdint>
#include <vector>

using namespace swarmx;

namespace {

// Independent oracle: count lattice paths (0,0) -> (m,q) with east, north
// and diagonal steps by plain recursion over moves, no memoization.
std::int64_t count_paths(int m, int q) {
    if (m == 0 && q == 0) return 1;
    std::int64_t paths = 0;
    if (m > 0) paths += count_paths(m - 1, q);
    if (q > 0) paths += count_paths(m, q - 1);
    if (m > 0 && q > 0) paths += count_paths(m - 1, q - 1);
    return paths;
}

std::vector<std::vector<double>> random_positions(Rng& rng, int n, int dim) {
    std::vector<std::vector<double>> positions(n, std::vector<double>(dim));
    for (auto& pos : positions) {
        for (double& x : pos) x = rng.uniform(-5.0, 5.0);
    }
    return positions;
}

} // namespace

TEST_CASE("star topology connects everyone") {
    const NeighborhoodAssignment na = neighbors_star(3);
    const std::vector<int> all{0, 1, 2};
    REQUIRE(na.size() == 3);
    for (const auto& set : na.neighbors) CHECK(set == all);

    const NeighborhoodAssignment na2 = neighbors_star(2);
    CHECK(na2.neighbors[0] == std::vector<int>{0, 1});
    CHECK(na2.neighbors[1] == std::vector<int>{0, 1});
}

TEST_CASE("ring picks nearest by distance, ties by lower index") {
    // pairwise distances: d(0,1)=1, d(0,2)=10, d(1,2)=9
    const std::vector<std::vector<double>> positions{{0, 0}, {1, 0}, {10, 0}};
    const NeighborhoodAssignment na = neighbors_ring(positions, 1, 2);
    CHECK(na.neighbors[0] == std::vector<int>{0, 1});
    CHECK(na.neighbors[1] == std::vector<int>{0, 1});
    CHECK(na.neighbors[2] == std::vector<int>{1, 2});
}

TEST_CASE("ring norm order changes the neighbor choice") {
    // particle 0 vs 1: L1 = 2, L2 = sqrt(2); particle 0 vs 2: both norms 1.5
    const std::vector<std::vector<double>> positions{{0, 0}, {1, 1}, {1.5, 0}};
    const NeighborhoodAssignment l1 = neighbors_ring(positions, 1, 1);
    const NeighborhoodAssignment l2 = neighbors_ring(positions, 1, 2);
    CHECK(l1.neighbors[0] == std::vector<int>{0, 2});
    CHECK(l2.neighbors[0] == std::vector<int>{0, 1});
}

TEST_CASE("ring with k=n-1 equals star") {
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_below(8));
        const auto positions = random_positions(rng, n, 2);
        for (int p : {1, 2}) {
            CHECK(neighbors_ring(positions, n - 1, p) == neighbors_star(n));
        }
    }
}

TEST_CASE("ring rejects k out of range") {
    const std::vector<std::vector<double>> positions{{0, 0}, {1, 0}, {2, 0}};
    CHECK_THROWS_AS(neighbors_ring(positions, 3, 2), std::invalid_argument);
    CHECK_THROWS_AS(neighbors_ring(positions, 0, 2), std::invalid_argument);
}

TEST_CASE("distance ties break toward the lower index") {
    // particles 1 and 2 are equidistant from 0
    const std::vector<std::vector<double>> positions{{0, 0}, {1, 0}, {-1, 0}, {3, 3}};
    const NeighborhoodAssignment na = neighbors_ring(positions, 1, 2);
    CHECK(na.neighbors[0] == std::vector<int>{0, 1});
}

TEST_CASE("k-nearest neighborhoods are directed") {
    // 2 is close to the 0/1 cluster, but 0 and 1 prefer each other
    const std::vector<std::vector<double>> positions{{0, 0}, {0.1, 0}, {1, 0}};
    const NeighborhoodAssignment na = neighbors_ring(positions, 1, 2);
    CHECK(na.neighbors[2] == std::vector<int>{1, 2});
    CHECK(na.neighbors[1] == std::vector<int>{0, 1});  // 1 does not point back at 2
}

TEST_CASE("delannoy base cases and small values") {
    CHECK(delannoy(0, 5) == 1);
    CHECK(delannoy(5, 0) == 1);
    CHECK(delannoy(1, 1) == 3);
    CHECK(delannoy(2, 1) == 5);
    CHECK(delannoy(2, 2) == 13);
    CHECK(delannoy(3, 3) == 63);
    CHECK_THROWS_AS(delannoy(-1, 0), std::invalid_argument);
    CHECK_THROWS_AS(delannoy(0, -2), std::invalid_argument);
}

TEST_CASE("delannoy agrees with brute-force path counting") {
    for (int m = 0; m <= 4; ++m) {
        for (int q = 0; q <= 4; ++q) {
            CHECK(delannoy(m, q) == count_paths(m, q));
        }
    }
}

TEST_CASE("delannoy symmetry up to 10") {
    for (int m = 0; m <= 10; ++m) {
        for (int q = 0; q <= 10; ++q) {
            CHECK(delannoy(m, q) == delannoy(q, m));
        }
    }
}

TEST_CASE("von neumann neighbor counts follow delannoy") {
    Rng rng(5);
    const auto positions = random_positions(rng, 50, 2);

    // D(2,1) = 5 -> sets of 5, D(2,2) = 13 -> sets of 13
    const NeighborhoodAssignment r1 = neighbors_von_neumann(positions, 1, 2, 2);
    for (const auto& set : r1.neighbors) CHECK(set.size() == 5);

    const NeighborhoodAssignment r2 = neighbors_von_neumann(positions, 2, 2, 2);
    for (const auto& set : r2.neighbors) CHECK(set.size() == 13);

    // capped at n-1 for small swarms
    const auto small = random_positions(rng, 5, 2);
    const NeighborhoodAssignment capped = neighbors_von_neumann(small, 2, 2, 2);
    for (const auto& set : capped.neighbors) CHECK(set.size() == 5);
}

TEST_CASE("von neumann reduces to ring with the delannoy-derived k") {
    Rng rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 6 + static_cast<int>(rng.next_below(20));
        const auto positions = random_positions(rng, n, 2);
        const int r = 1 + static_cast<int>(rng.next_below(2));
        const int p = 1 + static_cast<int>(rng.next_below(2));
        const int k = static_cast<int>(std::min<std::int64_t>(delannoy(2, r) - 1, n - 1));
        CHECK(neighbors_von_neumann(positions, r, p, 2) == neighbors_ring(positions, k, p));
    }
}

TEST_CASE("every topology includes self") {
    Rng rng(23);
    const auto positions = random_positions(rng, 12, 2);
    const auto contains_self = [](const NeighborhoodAssignment& na) {
        for (int i = 0; i < na.size(); ++i) {
            bool found = false;
            for (int j : na.neighbors[i]) found |= (j == i);
            if (!found) return false;
        }
        return true;
    };
    CHECK(contains_self(neighbors_star(12)));
    CHECK(contains_self(neighbors_ring(positions, 3, 1)));
    CHECK(contains_self(neighbors_von_neumann(positions, 1, 2, 2)));
}

TEST_CASE("topology names round-trip") {
    for (Topology t : {Topology::Star, Topology::Ring, Topology::VonNeumann}) {
        CHECK(topology_from_string(to_string(t)) == t);
    }
    CHECK_THROWS_AS(topology_from_string("mesh"), std::invalid_argument);
}
