#include "qshir/protocol.hpp"

#include <cmath>
#include <numbers>

namespace qshir {

namespace {

constexpr double kInvSqrt2 = 0.7071067811865476;

bool close(Complex a, Complex b, double tol) {
    return std::abs(a - b) <= tol;
}

SpinState apply_standard_correction(const SpinState& state, BellLabel label) {
    const Complex a = state[0];
    const Complex b = state[1];
    switch (label) {
        case BellLabel::PhiPlus: return SpinState({a, b});
        case BellLabel::PhiMinus: return SpinState({a, -b});
        case BellLabel::PsiPlus: return SpinState({b, a});
        case BellLabel::PsiMinus: return SpinState({b, -a});
    }
    throw std::logic_error("unreachable");
}

}  // namespace

std::string to_string(BellLabel label) {
    switch (label) {
        case BellLabel::PhiPlus: return "phi_plus";
        case BellLabel::PhiMinus: return "phi_minus";
        case BellLabel::PsiPlus: return "psi_plus";
        case BellLabel::PsiMinus: return "psi_minus";
    }
    throw std::logic_error("unreachable");
}

std::string to_string(QubitChoice choice) {
    return choice == QubitChoice::Up ? "up" : "down";
}

std::string to_string(CorrectionMode mode) {
    return mode == CorrectionMode::Constraint ? "constraint" : "unitary";
}

QubitResult generate_qubit(const RingAmplitudes& ring_a, QubitChoice choice) {
    const Complex up = choice == QubitChoice::Up ? ring_a.up_up : ring_a.up_down;
    const Complex down = choice == QubitChoice::Up ? ring_a.down_up : ring_a.down_down;
    const double probability = std::norm(up) + std::norm(down);
    if (probability < kZeroThreshold) {
        throw DegenerateStateError("the selected D2A outcome has zero probability");
    }
    return QubitResult{SpinState({up, down}).normalized(), probability};
}

SpinState total_state(const SpinState& qubit, const SpinState& channel) {
    if (qubit.num_spins() != 1 || channel.num_spins() != 2) {
        throw DimensionError("total_state expects a 1-spin qubit and a 2-spin channel");
    }
    return tensor(qubit, channel);
}

SpinState bell_state(BellLabel label) {
    switch (label) {
        case BellLabel::PhiPlus: return SpinState({kInvSqrt2, 0.0, 0.0, kInvSqrt2});
        case BellLabel::PhiMinus: return SpinState({kInvSqrt2, 0.0, 0.0, -kInvSqrt2});
        case BellLabel::PsiPlus: return SpinState({0.0, kInvSqrt2, kInvSqrt2, 0.0});
        case BellLabel::PsiMinus: return SpinState({0.0, kInvSqrt2, -kInvSqrt2, 0.0});
    }
    throw std::logic_error("unreachable");
}

std::array<SpinState, 4> bell_basis() {
    return {bell_state(BellLabel::PhiPlus), bell_state(BellLabel::PhiMinus),
            bell_state(BellLabel::PsiPlus), bell_state(BellLabel::PsiMinus)};
}

SpinState coincidence_frame(BellLabel label) {
    // Table of coincidence labels resolves to the same four Bell states.
    return bell_state(label);
}

std::array<BellOutcome, 4> bell_measure(const SpinState& total) {
    if (total.num_spins() != 3) {
        throw DimensionError("bell_measure expects the 3-spin total state");
    }
    static constexpr std::size_t kJointModes[] = {0, 1};
    std::array<BellOutcome, 4> outcomes = {
        BellOutcome{BellLabel::PhiPlus, 0.0, SpinState({0.0, 0.0})},
        BellOutcome{BellLabel::PhiMinus, 0.0, SpinState({0.0, 0.0})},
        BellOutcome{BellLabel::PsiPlus, 0.0, SpinState({0.0, 0.0})},
        BellOutcome{BellLabel::PsiMinus, 0.0, SpinState({0.0, 0.0})},
    };
    for (auto& outcome : outcomes) {
        ProjectionResult r = project(total, bell_state(outcome.label), kJointModes);
        outcome.probability = r.probability;
        outcome.bob_raw = std::move(r.residual);
    }
    return outcomes;
}

std::size_t sample_outcome(const std::array<BellOutcome, 4>& outcomes, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double u = unit(rng);
    double cumulative = 0.0;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        cumulative += outcomes[i].probability;
        if (u < cumulative) {
            return i;
        }
    }
    return outcomes.size() - 1;
}

FeedForwardConstraints feed_forward_constraints(BellLabel label) {
    switch (label) {
        case BellLabel::PhiPlus:
            return {PairRule::ConjugatePlus, PairRule::Zero, Congruence::CG1};
        case BellLabel::PhiMinus:
            return {PairRule::ConjugateMinus, PairRule::Zero, Congruence::CG1};
        case BellLabel::PsiPlus:
            return {PairRule::Zero, PairRule::ConjugatePlus, Congruence::CG2};
        case BellLabel::PsiMinus:
            return {PairRule::Zero, PairRule::ConjugateMinus, Congruence::CG2};
    }
    throw std::logic_error("unreachable");
}

bool check_constraints(const JunctionPair& ring_b, BellLabel label, double tol) {
    if (!ring_b.a.is_unitary() || !ring_b.b.is_unitary()) {
        return false;
    }
    const FeedForwardConstraints rules = feed_forward_constraints(label);
    if (!close(ring_b.a.t, std::conj(ring_b.b.t), tol)) {
        return false;
    }
    if (rules.preserve == PairRule::Zero) {
        // Phi rows: preserving amplitudes vanish, flip amplitudes conjugate-paired.
        if (std::abs(ring_b.a.p) > tol || std::abs(ring_b.b.p) > tol) {
            return false;
        }
        const Complex target = rules.flip == PairRule::ConjugatePlus
                                   ? std::conj(ring_b.a.f)
                                   : -std::conj(ring_b.a.f);
        return close(ring_b.b.f, target, tol);
    }
    // Psi rows: flip amplitudes vanish, preserving amplitudes conjugate-paired.
    if (std::abs(ring_b.a.f) > tol || std::abs(ring_b.b.f) > tol) {
        return false;
    }
    const Complex target = rules.preserve == PairRule::ConjugatePlus
                               ? std::conj(ring_b.a.p)
                               : -std::conj(ring_b.a.p);
    return close(ring_b.b.p, target, tol);
}

bool check_congruence(const PhaseSet& phases, Congruence which, double tol) {
    double lhs, rhs;
    if (which == Congruence::CG1) {
        lhs = phases.phi12 + phases.phi456;
        rhs = phases.phi34 + phases.phi167;
    } else {
        lhs = phases.phi15 + phases.phi34;
        rhs = phases.phi12 + phases.phi47;
    }
    // Minimum distance over integer wraps of 2pi.
    return std::abs(std::remainder(lhs - rhs, 2.0 * std::numbers::pi)) <= tol;
}

SpinState bob_final_state(const BellOutcome& outcome, const JunctionPair& ring_b,
                          const PhaseSet& phases_b, CorrectionMode mode, double tol) {
    if (outcome.probability < kZeroThreshold) {
        throw ZeroProbabilityError("Bell outcome " + to_string(outcome.label) +
                                   " has zero probability");
    }
    if (mode == CorrectionMode::Constraint) {
        if (!check_constraints(ring_b, outcome.label, tol)) {
            throw ConstraintViolationError("ring-B junctions violate the Table-1 row for " +
                                           to_string(outcome.label));
        }
        const Congruence cg = feed_forward_constraints(outcome.label).congruence;
        if (!check_congruence(phases_b, cg, tol)) {
            throw ConstraintViolationError("ring-B phases violate the congruence for " +
                                           to_string(outcome.label));
        }
        return outcome.bob_raw.normalized();
    }
    return apply_standard_correction(outcome.bob_raw.normalized(), outcome.label);
}

ProtocolReport run_protocol(const RingConfig& config_a, const RingConfig& config_b,
                            QubitChoice choice, CorrectionMode mode, double tol) {
    const double ka = edge_momentum(config_a.physics);
    const PhaseSet phases_a = geometric_phases(ka, config_a.geometry);
    RingAmplitudes amps_a;
    try {
        amps_a = normalize_amplitudes(
            two_particle_amplitudes_phase_form(config_a.junctions, phases_a));
    } catch (const DegenerateStateError&) {
        throw DegenerateStateError("ring A produces no two-particle coincidence state");
    }

    const double kb = edge_momentum(config_b.physics);
    const PhaseSet phases_b = geometric_phases(kb, config_b.geometry);
    RingAmplitudes amps_b;
    try {
        amps_b = normalize_amplitudes(
            two_particle_amplitudes_phase_form(config_b.junctions, phases_b));
    } catch (const DegenerateStateError&) {
        throw DegenerateStateError("ring B produces no two-particle coincidence state");
    }

    QubitResult qubit = generate_qubit(amps_a, choice);
    SpinState channel = ring_state(amps_b);
    const double channel_conc = concurrence(channel);
    const std::array<BellOutcome, 4> measured = bell_measure(total_state(qubit.state, channel));

    std::array<OutcomeRecord, 4> records = {
        OutcomeRecord{BellLabel::PhiPlus, 0.0, false, false, SpinState({0.0, 0.0}), 0.0},
        OutcomeRecord{BellLabel::PhiMinus, 0.0, false, false, SpinState({0.0, 0.0}), 0.0},
        OutcomeRecord{BellLabel::PsiPlus, 0.0, false, false, SpinState({0.0, 0.0}), 0.0},
        OutcomeRecord{BellLabel::PsiMinus, 0.0, false, false, SpinState({0.0, 0.0}), 0.0},
    };
    for (std::size_t i = 0; i < measured.size(); ++i) {
        const BellOutcome& outcome = measured[i];
        OutcomeRecord& rec = records[i];
        rec.label = outcome.label;
        rec.probability = outcome.probability;
        rec.constraints_ok = check_constraints(config_b.junctions, outcome.label, tol);
        rec.congruence_ok =
            check_congruence(phases_b, feed_forward_constraints(outcome.label).congruence, tol);
        if (outcome.probability < kZeroThreshold) {
            // Zero branch: keep the raw (zero) state, exclude from fidelity.
            rec.bob_final = outcome.bob_raw;
            rec.fidelity = 0.0;
            continue;
        }
        // A violated row still yields a state; the report carries the
        // degraded fidelity instead of failing.
        rec.bob_final = mode == CorrectionMode::Constraint
                            ? outcome.bob_raw.normalized()
                            : apply_standard_correction(outcome.bob_raw.normalized(),
                                                        outcome.label);
        rec.fidelity = fidelity(rec.bob_final, qubit.state);
    }

    return ProtocolReport{choice, mode,    std::move(qubit), std::move(channel),
                          channel_conc, std::move(records)};
}

}  // namespace qshir
