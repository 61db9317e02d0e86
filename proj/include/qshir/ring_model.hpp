#pragma once

#include <array>

#include "qshir/quantum_state.hpp"

namespace qshir {

// Junction pairs violating unit total probability beyond this are rejected.
inline constexpr double kUnitarityTol = 1e-9;

// One tunneling junction: t tunnels with spin preserved to the opposite edge,
// p preserves the state on the same edge, f tunnels with a spin flip.
struct JunctionAmplitudes {
    Complex t{0.0, 0.0};
    Complex p{0.0, 0.0};
    Complex f{0.0, 0.0};

    double probability_sum() const;
    bool is_unitary(double tol = kUnitarityTol) const;
};

// The two junctions (a, b) of one ring.
struct JunctionPair {
    JunctionAmplitudes a;
    JunctionAmplitudes b;
};

// Edge segment lengths in nanometers: l1..l4 outer, l5..l7 inner.
struct RingGeometry {
    double l1, l2, l3, l4, l5, l6, l7;

    // Throws ValidationError unless all lengths are strictly positive and finite.
    void validate() const;
};

struct RingPhysics {
    double fermi_velocity;  // v_F > 0, nm per time unit
    double rashba;          // Rashba coupling alpha, nm per time unit
    double energy;          // kinetic energy E
    double gate_term;       // e*V_g
};

struct RingConfig {
    JunctionPair junctions;
    RingGeometry geometry;
    RingPhysics physics;
};

// Geometric phases K * (length sums), radians.
struct PhaseSet {
    double phi12, phi15, phi34, phi47;
    double phi136, phi146, phi167, phi246, phi456;
};

// Per spin-pair effective path lengths, nanometers.
struct EffectivePathLengths {
    double up_up, up_down, down_up, down_down;
};

// 6x2 reduced scattering matrix, rows in the fixed order
// (D1 up, D1 down, D2 up, D2 down, flip-flip up, flip-flip down),
// columns indexed by source spin (up, down).
struct ReducedSMatrix {
    std::array<std::array<Complex, 2>, 6> rows;

    double column_squared_norm(std::size_t col) const;
};

// Two-particle amplitudes over modes (1, 2) of one ring. Unnormalized until
// normalize_amplitudes is applied; norm_factor records the applied scale.
struct RingAmplitudes {
    Complex up_up, down_down, down_up, up_down;
    double norm_factor = 1.0;

    double squared_sum() const;
};

// sqrt(v_F^2 + alpha^2): Rashba coupling absorbed into the Fermi velocity.
double modified_fermi_velocity(const RingPhysics& physics);

// K = (E + e*V_g) / v_alpha.
double edge_momentum(const RingPhysics& physics);

PhaseSet geometric_phases(double momentum, const RingGeometry& geom);

EffectivePathLengths effective_path_lengths(const RingGeometry& geom);

// Consistency self-check: the six identities tying K * effective path lengths
// to geometric phase sums must hold for any input.
bool verify_phase_identities(double momentum, const RingGeometry& geom,
                             double tol = kAlgebraTol);

// Throws UnitarityError if either junction violates unit total probability.
ReducedSMatrix reduced_scattering_matrix(const JunctionPair& junctions,
                                         const PhaseSet& phases);

RingAmplitudes two_particle_amplitudes_phase_form(const JunctionPair& junctions,
                                                  const PhaseSet& phases);

// Same amplitudes written with effective path lengths instead of phase sums.
// Agrees with the phase form to within kAlgebraTol; kept as an independent
// route for the formulation-equivalence check.
RingAmplitudes two_particle_amplitudes_pathlength_form(const JunctionPair& junctions,
                                                       double momentum,
                                                       const RingGeometry& geom);

// Throws DegenerateStateError when the raw squared-norm sum is below
// kZeroThreshold (e.g. p = 1 junctions).
RingAmplitudes normalize_amplitudes(const RingAmplitudes& raw);

// Normalized two-particle state ordered (uu, ud, du, dd) over modes (1, 2).
SpinState ring_state(const RingConfig& config);
SpinState ring_state(const RingAmplitudes& normalized);

}  // namespace qshir
