#include "qshir/ring_model.hpp"

#include <cmath>

namespace qshir {

namespace {

Complex phase_factor(double phase) {
    return std::polar(1.0, -phase);
}

void require_unitary(const JunctionPair& junctions) {
    if (!junctions.a.is_unitary()) {
        throw UnitarityError("junction a violates |t|^2+|p|^2+|f|^2 = 1");
    }
    if (!junctions.b.is_unitary()) {
        throw UnitarityError("junction b violates |t|^2+|p|^2+|f|^2 = 1");
    }
}

}  // namespace

double JunctionAmplitudes::probability_sum() const {
    return std::norm(t) + std::norm(p) + std::norm(f);
}

bool JunctionAmplitudes::is_unitary(double tol) const {
    return std::abs(probability_sum() - 1.0) <= tol;
}

void RingGeometry::validate() const {
    const double lengths[] = {l1, l2, l3, l4, l5, l6, l7};
    for (int i = 0; i < 7; ++i) {
        if (!(lengths[i] > 0.0) || !std::isfinite(lengths[i])) {
            throw ValidationError("edge length l" + std::to_string(i + 1) +
                                  " must be strictly positive and finite");
        }
    }
}

double ReducedSMatrix::column_squared_norm(std::size_t col) const {
    double sum = 0.0;
    for (const auto& row : rows) {
        sum += std::norm(row[col]);
    }
    return sum;
}

double RingAmplitudes::squared_sum() const {
    return std::norm(up_up) + std::norm(down_down) + std::norm(down_up) + std::norm(up_down);
}

double modified_fermi_velocity(const RingPhysics& physics) {
    if (!(physics.fermi_velocity > 0.0)) {
        throw ValidationError("Fermi velocity must be positive");
    }
    return std::hypot(physics.fermi_velocity, physics.rashba);
}

double edge_momentum(const RingPhysics& physics) {
    return (physics.energy + physics.gate_term) / modified_fermi_velocity(physics);
}

PhaseSet geometric_phases(double momentum, const RingGeometry& geom) {
    geom.validate();
    const double k = momentum;
    return PhaseSet{
        .phi12 = k * (geom.l1 + geom.l2),
        .phi15 = k * (geom.l1 + geom.l5),
        .phi34 = k * (geom.l3 + geom.l4),
        .phi47 = k * (geom.l4 + geom.l7),
        .phi136 = k * (geom.l1 + geom.l3 + geom.l6),
        .phi146 = k * (geom.l1 + geom.l4 + geom.l6),
        .phi167 = k * (geom.l1 + geom.l6 + geom.l7),
        .phi246 = k * (geom.l2 + geom.l4 + geom.l6),
        .phi456 = k * (geom.l4 + geom.l5 + geom.l6),
    };
}

EffectivePathLengths effective_path_lengths(const RingGeometry& geom) {
    geom.validate();
    return EffectivePathLengths{
        .up_up = geom.l1 + geom.l2 + geom.l4 + geom.l5,
        .up_down = geom.l1 + geom.l2 + geom.l4 + geom.l7,
        .down_up = geom.l1 + geom.l3 + geom.l4 + geom.l5,
        .down_down = geom.l1 + geom.l3 + geom.l4 + geom.l7,
    };
}

bool verify_phase_identities(double momentum, const RingGeometry& geom, double tol) {
    const PhaseSet phi = geometric_phases(momentum, geom);
    const EffectivePathLengths len = effective_path_lengths(geom);
    const double k = momentum;
    const double l6 = geom.l6;
    const double residuals[] = {
        k * len.up_down - (phi.phi12 + phi.phi47),
        k * len.down_up - (phi.phi15 + phi.phi34),
        k * (len.up_up + l6) - (phi.phi12 + phi.phi456),
        k * (len.up_down + 2.0 * l6) - (phi.phi167 + phi.phi246),
        k * (len.down_up + 2.0 * l6) - (phi.phi136 + phi.phi456),
        k * (len.down_down + l6) - (phi.phi34 + phi.phi167),
    };
    for (double r : residuals) {
        if (std::abs(r) > tol) {
            return false;
        }
    }
    return true;
}

ReducedSMatrix reduced_scattering_matrix(const JunctionPair& junctions,
                                         const PhaseSet& phases) {
    require_unitary(junctions);
    const auto& [ja, jb] = junctions;
    ReducedSMatrix s;
    s.rows[0] = {ja.p * phase_factor(phases.phi12),
                 jb.f * std::conj(ja.t) * phase_factor(phases.phi246)};
    s.rows[1] = {std::conj(ja.f) * jb.t * phase_factor(phases.phi136),
                 std::conj(jb.p) * phase_factor(phases.phi34)};
    s.rows[2] = {-ja.t * phase_factor(phases.phi15),
                 jb.f * std::conj(ja.p) * phase_factor(phases.phi456)};
    s.rows[3] = {-std::conj(ja.f) * jb.p * phase_factor(phases.phi167),
                 std::conj(jb.t) * phase_factor(phases.phi47)};
    s.rows[4] = {-std::conj(ja.f) * jb.f * phase_factor(phases.phi146), Complex{0.0, 0.0}};
    s.rows[5] = {Complex{0.0, 0.0}, -std::conj(ja.f) * jb.f * phase_factor(phases.phi146)};
    return s;
}

RingAmplitudes two_particle_amplitudes_phase_form(const JunctionPair& junctions,
                                                  const PhaseSet& phases) {
    require_unitary(junctions);
    const auto& [ja, jb] = junctions;
    const double pa2 = std::norm(ja.p);
    const double ta2 = std::norm(ja.t);
    const double pb2 = std::norm(jb.p);
    const double tb2 = std::norm(jb.t);
    RingAmplitudes amp;
    amp.up_up = jb.f * (pa2 + ta2) * phase_factor(phases.phi12 + phases.phi456);
    amp.down_down = std::conj(ja.f) * (pb2 + tb2) * phase_factor(phases.phi34 + phases.phi167);
    amp.down_up = std::conj(jb.p) * ja.t * phase_factor(phases.phi15 + phases.phi34) +
                  std::conj(ja.f) * jb.f * std::conj(ja.p) * jb.t *
                      phase_factor(phases.phi136 + phases.phi456);
    amp.up_down = ja.p * std::conj(jb.t) * phase_factor(phases.phi12 + phases.phi47) +
                  std::conj(ja.f) * jb.f * jb.p * std::conj(ja.t) *
                      phase_factor(phases.phi167 + phases.phi246);
    amp.norm_factor = 1.0;
    return amp;
}

RingAmplitudes two_particle_amplitudes_pathlength_form(const JunctionPair& junctions,
                                                       double momentum,
                                                       const RingGeometry& geom) {
    require_unitary(junctions);
    const auto& [ja, jb] = junctions;
    const EffectivePathLengths len = effective_path_lengths(geom);
    const double k = momentum;
    const double l6 = geom.l6;
    const double pa2 = std::norm(ja.p);
    const double ta2 = std::norm(ja.t);
    const double pb2 = std::norm(jb.p);
    const double tb2 = std::norm(jb.t);
    RingAmplitudes amp;
    amp.up_up = jb.f * (pa2 + ta2) * phase_factor(k * (len.up_up + l6));
    amp.down_down = std::conj(ja.f) * (pb2 + tb2) * phase_factor(k * (len.down_down + l6));
    amp.down_up = std::conj(jb.p) * ja.t * phase_factor(k * len.down_up) +
                  std::conj(ja.f) * jb.f * std::conj(ja.p) * jb.t *
                      phase_factor(k * (len.down_up + 2.0 * l6));
    amp.up_down = ja.p * std::conj(jb.t) * phase_factor(k * len.up_down) +
                  std::conj(ja.f) * jb.f * jb.p * std::conj(ja.t) *
                      phase_factor(k * (len.up_down + 2.0 * l6));
    amp.norm_factor = 1.0;
    return amp;
}

RingAmplitudes normalize_amplitudes(const RingAmplitudes& raw) {
    const double sum = raw.squared_sum();
    if (sum < kZeroThreshold) {
        throw DegenerateStateError(
            "two-particle amplitudes vanish; no coincidence reaches the detector pair");
    }
    const double scale = 1.0 / std::sqrt(sum);
    RingAmplitudes out;
    out.up_up = raw.up_up * scale;
    out.down_down = raw.down_down * scale;
    out.down_up = raw.down_up * scale;
    out.up_down = raw.up_down * scale;
    out.norm_factor = raw.norm_factor * scale;
    return out;
}

SpinState ring_state(const RingAmplitudes& normalized) {
    return SpinState({normalized.up_up, normalized.up_down,
                      normalized.down_up, normalized.down_down});
}

SpinState ring_state(const RingConfig& config) {
    const double k = edge_momentum(config.physics);
    const PhaseSet phases = geometric_phases(k, config.geometry);
    const RingAmplitudes amp =
        normalize_amplitudes(two_particle_amplitudes_phase_form(config.junctions, phases));
    return ring_state(amp);
}

}  // namespace qshir
