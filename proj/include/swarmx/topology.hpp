#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace swarmx {

enum class Topology { Star, Ring, VonNeumann };

const char* to_string(Topology t);
Topology topology_from_string(std::string_view name);

// Per-particle neighbor index sets. Every set contains the particle's own
// index and is stored sorted ascending.
struct NeighborhoodAssignment {
    std::vector<std::vector<int>> neighbors;

    int size() const { return static_cast<int>(neighbors.size()); }
    bool operator==(const NeighborhoodAssignment&) const = default;
};

// Fully connected: every particle sees every particle.
NeighborhoodAssignment neighbors_star(int n);

// Each particle sees itself plus its k nearest particles by Minkowski
// p-norm over current positions. Distance ties break on lower index.
// Note the relation is directed: j in neighbors[i] does not imply
// i in neighbors[j].
NeighborhoodAssignment neighbors_ring(const std::vector<std::vector<double>>& positions,
                                      int k, int p);

// Delannoy number D(m, q): lattice paths from (0,0) to (m,q) with east,
// north and northeast steps. D(m,q) = D(m-1,q) + D(m-1,q-1) + D(m,q-1),
// D(0,.) = D(.,0) = 1.
std::int64_t delannoy(int m, int q);

// Grid-flavored neighborhood: neighbor count derived from Delannoy numbers,
// k = min(D(dim, r) - 1, n - 1), then resolved as k-nearest.
NeighborhoodAssignment neighbors_von_neumann(const std::vector<std::vector<double>>& positions,
                                             int r, int p, int dim);

double minkowski_distance(std::span<const double> a, std::span<const double> b, int p);

} // namespace swarmx
