#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "fhd/gas_model.hpp"

namespace fhd {

enum class BoundaryKind {
    Periodic,    // domain wraps; ghosts are images of real particles
    FixedState,  // reservoir at each end holding a prescribed state
};

// One-dimensional Lagrangian particle set, stored as parallel arrays sorted by
// position. Each particle carries the primitive state (rho, u, T) of the fluid
// element it represents.
struct ParticleField {
    std::vector<double> x;
    std::vector<double> rho;
    std::vector<double> u;
    std::vector<double> T;

    double x_min = 0.0;
    double x_max = 0.0;
    double dx0 = 0.0;  // initial spacing; gap management works in units of this
    double h = 0.0;    // interaction radius for derivative stencils

    BoundaryKind boundary = BoundaryKind::Periodic;
    PrimitiveState left_state;   // used by FixedState boundaries
    PrimitiveState right_state;

    std::size_t size() const { return x.size(); }
    double length() const { return x_max - x_min; }
};

struct ManageResult {
    long added = 0;
    long removed = 0;
};

// Equispaced field of N particles covering [x_min, x_min + L), all carrying
// state0. Particles sit at cell centres: x_min + (i + 1/2) * L / N.
ParticleField init_uniform(double L, std::size_t N, const PrimitiveState& state0,
                           BoundaryKind boundary, double x_min = 0.0,
                           double h_factor = 3.0);

// Indices of particles within the interaction radius of position `pos`, sorted
// by distance (periodic distance when the field wraps). `exclude` removes one
// index from the result, typically the particle whose neighbourhood is being
// asked for. Throws InsufficientNeighborhood when fewer than 2 remain.
std::vector<std::size_t> neighbors(const ParticleField& f, double pos,
                                   std::ptrdiff_t exclude = -1);

// Keep spacing regular: adjacent pairs closer than gap_min*dx0 collapse into
// their midpoint with averaged state, and gaps wider than gap_max*dx0 get a
// midpoint particle with averaged state. Both passes repeat until no pair
// qualifies, so a second call is a no-op. Throws DegenerateField if fewer than
// 4 particles would remain.
ManageResult manage_particles(ParticleField& f, double gap_min = 0.25,
                              double gap_max = 1.5);

// Enforce the domain boundary after particles have moved. Periodic: wrap
// positions into [x_min, x_max) and restore sort order. FixedState: drop
// particles that left the domain and top up from the reservoir side until the
// gap at each wall is at most gap_max*dx0.
void apply_boundary(ParticleField& f, double gap_max = 1.5);

// Field plus ghost particles, laid out sorted so interior particle j sits at
// index ng_left + j. ghost_src holds the interior index a periodic image was
// copied from, or -1 for reservoir ghosts that belong to no real particle.
struct ExtendedField {
    std::vector<double> x;
    std::vector<double> rho;
    std::vector<double> u;
    std::vector<double> T;
    std::vector<long> ghost_src;  // parallel to the ghost portions only: left then right
    std::size_t ng_left = 0;
    std::size_t ng_right = 0;

    std::size_t size() const { return x.size(); }
    std::size_t interior() const { return x.size() - ng_left - ng_right; }
};

void build_extended(const ParticleField& f, ExtendedField& out);

void snapshot_header(std::ostream& os);
void snapshot_csv(const ParticleField& f, long step, std::ostream& os);

}  // namespace fhd
