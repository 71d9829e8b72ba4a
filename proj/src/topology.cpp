#include "swarmx/topology.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace swarmx {

const char* to_string(Topology t) {
    switch (t) {
        case Topology::Star: return "star";
        case Topology::Ring: return "ring";
        case Topology::VonNeumann: return "vonneumann";
    }
    return "?";
}

Topology topology_from_string(std::string_view name) {
    if (name == "star") return Topology::Star;
    if (name == "ring") return Topology::Ring;
    if (name == "vonneumann") return Topology::VonNeumann;
    throw std::invalid_argument("unknown topology: " + std::string(name));
}

NeighborhoodAssignment neighbors_star(int n) {
    if (n < 2) throw std::invalid_argument("swarm size must be >= 2");
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    NeighborhoodAssignment na;
    na.neighbors.assign(n, all);
    return na;
}

double minkowski_distance(std::span<const double> a, std::span<const double> b, int p) {
    if (a.size() != b.size()) throw std::invalid_argument("vector length mismatch");
    if (p != 1 && p != 2) throw std::invalid_argument("Minkowski order must be 1 or 2");
    double acc = 0.0;
    if (p == 1) {
        for (std::size_t i = 0; i < a.size(); ++i) acc += std::abs(a[i] - b[i]);
        return acc;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return std::sqrt(acc);
}

NeighborhoodAssignment neighbors_ring(const std::vector<std::vector<double>>& positions,
                                      int k, int p) {
    const int n = static_cast<int>(positions.size());
    if (n < 2) throw std::invalid_argument("swarm size must be >= 2");
    if (k < 1 || k >= n) {
        throw std::invalid_argument("neighbor count k must satisfy 1 <= k <= n-1");
    }

    NeighborhoodAssignment na;
    na.neighbors.resize(n);

    std::vector<std::pair<double, int>> order;
    order.reserve(n - 1);
    for (int i = 0; i < n; ++i) {
        order.clear();
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            order.emplace_back(minkowski_distance(positions[i], positions[j], p), j);
        }
        std::sort(order.begin(), order.end());  // distance, then lower index

        std::vector<int>& set = na.neighbors[i];
        set.reserve(k + 1);
        set.push_back(i);
        for (int m = 0; m < k; ++m) set.push_back(order[m].second);
        std::sort(set.begin(), set.end());
    }
    return na;
}

std::int64_t delannoy(int m, int q) {
    if (m < 0 || q < 0) throw std::invalid_argument("Delannoy arguments must be non-negative");
    // One DP row suffices: row[j] holds D(i, j) while sweeping i upward.
    std::vector<std::int64_t> row(q + 1, 1);
    for (int i = 1; i <= m; ++i) {
        std::int64_t diag = row[0];  // D(i-1, j-1)
        for (int j = 1; j <= q; ++j) {
            const std::int64_t up = row[j];
            row[j] = row[j] + diag + row[j - 1];
            diag = up;
        }
    }
    return row[q];
}

NeighborhoodAssignment neighbors_von_neumann(const std::vector<std::vector<double>>& positions,
                                             int r, int p, int dim) {
    if (r < 1) throw std::invalid_argument("range r must be >= 1");
    const int n = static_cast<int>(positions.size());
    const std::int64_t d = delannoy(dim, r);
    const int k = static_cast<int>(std::min<std::int64_t>(d - 1, n - 1));
    return neighbors_ring(positions, k, p);
}

} // namespace swarmx
