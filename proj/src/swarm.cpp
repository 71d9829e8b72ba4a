#include "swarmx/swarm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace swarmx {

namespace {

inline double velocity_component(double v, double x, double pb, double nb,
                                 double w, double c1, double c2,
                                 double r1, double r2) {
    return w * v + c1 * r1 * (pb - x) + c2 * r2 * (nb - x);
}

inline double clamp_box(double t) {
    return std::clamp(t, kBoxLower, kBoxUpper);
}

// Particle with the smallest personal best; ties go to the lower index.
int best_particle(const std::vector<Particle>& particles) {
    int best = 0;
    for (int i = 1; i < static_cast<int>(particles.size()); ++i) {
        if (particles[i].pbest_val < particles[best].pbest_val) best = i;
    }
    return best;
}

} // namespace

void validate(const Hyperparameters& hp) {
    if (hp.n < 2) throw std::invalid_argument("swarm size n must be >= 2");
    if (hp.c1 < 0.0 || hp.c2 < 0.0) throw std::invalid_argument("c1 and c2 must be >= 0");
    if (hp.k < 1 || hp.k > hp.n - 1) {
        throw std::invalid_argument("neighbor count k must satisfy 1 <= k <= n-1");
    }
    if (hp.p != 1 && hp.p != 2) throw std::invalid_argument("Minkowski order p must be 1 or 2");
    if (hp.r < 1) throw std::invalid_argument("range r must be >= 1");
}

SwarmState init_swarm(const Hyperparameters& hp, const ProblemInstance& inst,
                      std::uint64_t seed) {
    validate(hp);
    const int dim = inst.dim();

    SwarmState state{.particles = {}, .gbest_pos = {}, .gbest_val = 0.0,
                     .iteration = 0, .rng = Rng(seed)};
    state.particles.resize(hp.n);

    for (Particle& particle : state.particles) {
        particle.position.resize(dim);
        for (int d = 0; d < dim; ++d) {
            particle.position[d] = state.rng.uniform(kBoxLower, kBoxUpper);
        }
        particle.velocity.assign(dim, 0.0);
        particle.pbest_pos = particle.position;
        particle.pbest_val = inst.evaluate(particle.position);
    }

    const int best = best_particle(state.particles);
    state.gbest_pos = state.particles[best].pbest_pos;
    state.gbest_val = state.particles[best].pbest_val;
    return state;
}

std::vector<double> velocity_update(std::span<const double> v, std::span<const double> x,
                                    std::span<const double> pbest,
                                    std::span<const double> nbest,
                                    const Hyperparameters& hp,
                                    std::span<const double> r1, std::span<const double> r2) {
    const std::size_t dim = v.size();
    if (x.size() != dim || pbest.size() != dim || nbest.size() != dim ||
        r1.size() != dim || r2.size() != dim) {
        throw std::invalid_argument("vector length mismatch");
    }
    std::vector<double> out(dim);
    for (std::size_t d = 0; d < dim; ++d) {
        out[d] = velocity_component(v[d], x[d], pbest[d], nbest[d],
                                    hp.w, hp.c1, hp.c2, r1[d], r2[d]);
    }
    return out;
}

std::vector<double> position_update(std::span<const double> x, std::span<const double> v) {
    if (x.size() != v.size()) throw std::invalid_argument("vector length mismatch");
    std::vector<double> out(x.size());
    for (std::size_t d = 0; d < x.size(); ++d) out[d] = clamp_box(x[d] + v[d]);
    return out;
}

void step(SwarmState& state, const ProblemInstance& inst, const Hyperparameters& hp,
          const NeighborhoodAssignment& neighborhood) {
    const int n = static_cast<int>(state.particles.size());
    const int dim = inst.dim();
    if (neighborhood.size() != n) {
        throw std::invalid_argument("neighborhood assignment does not cover the swarm");
    }

    // pbest updates are deferred to the end of the iteration, so the values
    // read during the loop are the pre-step snapshot.
    std::vector<double> new_vals(n);
    const int global_best = best_particle(state.particles);

    std::vector<double> r1(dim), r2(dim);
    for (int i = 0; i < n; ++i) {
        Particle& particle = state.particles[i];
        for (int d = 0; d < dim; ++d) r1[d] = state.rng.next_double();
        for (int d = 0; d < dim; ++d) r2[d] = state.rng.next_double();

        const std::vector<int>& set = neighborhood.neighbors[i];
        int nb = global_best;
        if (static_cast<int>(set.size()) != n) {
            nb = set[0];
            for (int j : set) {
                if (state.particles[j].pbest_val < state.particles[nb].pbest_val) nb = j;
            }
        }
        const std::vector<double>& nbest = state.particles[nb].pbest_pos;

        for (int d = 0; d < dim; ++d) {
            const double v = velocity_component(particle.velocity[d], particle.position[d],
                                                particle.pbest_pos[d], nbest[d],
                                                hp.w, hp.c1, hp.c2, r1[d], r2[d]);
            particle.velocity[d] = v;
            particle.position[d] = clamp_box(particle.position[d] + v);
        }
        new_vals[i] = inst.evaluate(particle.position);
    }

    for (int i = 0; i < n; ++i) {
        Particle& particle = state.particles[i];
        if (new_vals[i] < particle.pbest_val) {
            particle.pbest_val = new_vals[i];
            particle.pbest_pos = particle.position;
        }
    }

    const int best = best_particle(state.particles);
    state.gbest_pos = state.particles[best].pbest_pos;
    state.gbest_val = state.particles[best].pbest_val;
    state.iteration += 1;
}

NeighborhoodAssignment assignment_for(const Hyperparameters& hp,
                                      const std::vector<std::vector<double>>& positions) {
    switch (hp.topology) {
        case Topology::Star:
            return neighbors_star(static_cast<int>(positions.size()));
        case Topology::Ring:
            return neighbors_ring(positions, hp.k, hp.p);
        case Topology::VonNeumann:
            return neighbors_von_neumann(positions, hp.r, hp.p,
                                         static_cast<int>(positions.front().size()));
    }
    throw std::logic_error("unreachable");
}

ConvergenceTrace run(const Hyperparameters& hp, const ProblemInstance& inst,
                     int budget, std::uint64_t seed) {
    if (budget < 1) throw std::invalid_argument("budget must be >= 1");
    validate(hp);

    SwarmState state = init_swarm(hp, inst, seed);

    ConvergenceTrace trace;
    trace.best_so_far.reserve(budget);

    // Star neighborhoods do not depend on positions; build once.
    NeighborhoodAssignment star_na;
    if (hp.topology == Topology::Star) star_na = neighbors_star(hp.n);

    std::vector<std::vector<double>> positions;
    for (int t = 0; t < budget; ++t) {
        if (hp.topology == Topology::Star) {
            step(state, inst, hp, star_na);
        } else {
            positions.resize(state.particles.size());
            for (std::size_t i = 0; i < state.particles.size(); ++i) {
                positions[i] = state.particles[i].position;
            }
            const NeighborhoodAssignment na = assignment_for(hp, positions);
            step(state, inst, hp, na);
        }
        trace.best_so_far.push_back(state.gbest_val);
    }
    return trace;
}

} // namespace swarmx
