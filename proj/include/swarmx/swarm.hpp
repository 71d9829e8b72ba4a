#pragma once

#include "swarmx/bench.hpp"
#include "swarmx/rng.hpp"
#include "swarmx/topology.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace swarmx {

struct Hyperparameters {
    Topology topology = Topology::Star;
    double c1 = 0.5;   // cognitive coefficient
    double c2 = 0.5;   // social coefficient
    double w = 0.5;    // inertia weight
    int n = 50;        // particles
    int k = 1;         // nearest-neighbor count (Ring)
    int p = 2;         // Minkowski norm order
    int r = 1;         // Delannoy range (Von Neumann)
};

// Throws std::invalid_argument on violated domain constraints.
void validate(const Hyperparameters& hp);

struct Particle {
    std::vector<double> position;
    std::vector<double> velocity;
    std::vector<double> pbest_pos;
    double pbest_val;
};

struct SwarmState {
    std::vector<Particle> particles;
    std::vector<double> gbest_pos;
    double gbest_val;
    int iteration = 0;
    Rng rng;
};

// Per-iteration global best objective values; non-increasing by construction.
struct ConvergenceTrace {
    std::vector<double> best_so_far;

    int budget() const { return static_cast<int>(best_so_far.size()); }
};

// Positions i.i.d. uniform in the box (particle by particle, coordinate by
// coordinate, in index order), velocities zero, personal bests at the
// starting points. The draw order is part of the reproducibility contract.
SwarmState init_swarm(const Hyperparameters& hp, const ProblemInstance& inst,
                      std::uint64_t seed);

// v' = w*v + c1*r1*(pbest - x) + c2*r2*(nbest - x), componentwise.
std::vector<double> velocity_update(std::span<const double> v, std::span<const double> x,
                                    std::span<const double> pbest,
                                    std::span<const double> nbest,
                                    const Hyperparameters& hp,
                                    std::span<const double> r1, std::span<const double> r2);

// x' = x + v, clamped componentwise to the search box.
std::vector<double> position_update(std::span<const double> x, std::span<const double> v);

// One synchronous iteration: neighborhood bests are taken from the
// pre-step personal bests, so the result does not depend on particle
// processing order. r1/r2 are drawn per particle, per dimension
// (r1 coordinates first, then r2).
void step(SwarmState& state, const ProblemInstance& inst, const Hyperparameters& hp,
          const NeighborhoodAssignment& neighborhood);

// init_swarm followed by exactly `budget` steps. Neighborhoods are rebuilt
// from current positions before every step.
ConvergenceTrace run(const Hyperparameters& hp, const ProblemInstance& inst,
                     int budget, std::uint64_t seed);

// The assignment `run` uses for one iteration, given current positions.
NeighborhoodAssignment assignment_for(const Hyperparameters& hp,
                                      const std::vector<std::vector<double>>& positions);

} // namespace swarmx
