#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>

#include "qshir/ring_model.hpp"

namespace qshir {

// Default tolerance for Table-1 constraint and congruence checks.
inline constexpr double kConstraintTol = 1e-9;

// Which detector D2A outcome filters the ring-A qubit.
enum class QubitChoice { Up, Down };

enum class BellLabel { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

inline constexpr std::array<BellLabel, 4> kBellLabels = {
    BellLabel::PhiPlus, BellLabel::PhiMinus, BellLabel::PsiPlus, BellLabel::PsiMinus};

std::string to_string(BellLabel label);
std::string to_string(QubitChoice choice);

enum class Congruence { CG1, CG2 };

enum class CorrectionMode { Constraint, Unitary };

std::string to_string(CorrectionMode mode);

// A rule tying a ring-B amplitude pair to the a-junction value: zeroed, or
// equal to plus/minus its conjugate.
enum class PairRule { Zero, ConjugatePlus, ConjugateMinus };

// One row of the feed-forward table: how Bob must set the ring-B junctions
// for a given Bell outcome. The tunnel rule t_a = conj(t_b) holds for every row.
struct FeedForwardConstraints {
    PairRule flip;
    PairRule preserve;
    Congruence congruence;
};

struct BellOutcome {
    BellLabel label;
    double probability;
    SpinState bob_raw;  // unnormalized post-measurement state on mode 2B
};

struct QubitResult {
    SpinState state;    // normalized single-spin qubit on mode 1A
    double probability;  // probability of the chosen D2A outcome
};

struct OutcomeRecord {
    BellLabel label;
    double probability;
    bool constraints_ok;
    bool congruence_ok;
    SpinState bob_final;
    double fidelity;  // vs the input qubit; 0 on zero-probability branches
};

struct ProtocolReport {
    QubitChoice choice;
    CorrectionMode mode;
    QubitResult qubit;
    SpinState channel;
    double channel_concurrence;
    std::array<OutcomeRecord, 4> outcomes;
};

// Filters the ring-A two-particle state on the chosen D2A outcome.
// Throws DegenerateStateError when the selected column vanishes.
QubitResult generate_qubit(const RingAmplitudes& ring_a, QubitChoice choice);

// 8-amplitude state ordered (1A, 1B, 2B).
SpinState total_state(const SpinState& qubit, const SpinState& channel);

SpinState bell_state(BellLabel label);
std::array<SpinState, 4> bell_basis();

// Computational-basis expansion of each coincidence-frame label; identical to
// the Bell state it names.
SpinState coincidence_frame(BellLabel label);

// Projects modes (1A, 1B) onto each Bell state. Deterministic: returns all
// four branches with probabilities summing to 1.
std::array<BellOutcome, 4> bell_measure(const SpinState& total);

// Draws one outcome index from the four branch probabilities.
std::size_t sample_outcome(const std::array<BellOutcome, 4>& outcomes, std::mt19937_64& rng);

FeedForwardConstraints feed_forward_constraints(BellLabel label);

// True iff the ring-B junction pair satisfies the outcome's Table-1 row.
bool check_constraints(const JunctionPair& ring_b, BellLabel label,
                       double tol = kConstraintTol);

// CG1: phi12 + phi456 == phi34 + phi167 (mod 2pi)
// CG2: phi15 + phi34 == phi12 + phi47  (mod 2pi)
bool check_congruence(const PhaseSet& phases, Congruence which,
                      double tol = kConstraintTol);

// Constraint mode: asserts the Table-1 row and congruence hold, then
// renormalizes the raw state (the junction-adjustment reading).
// Unitary mode: applies the standard teleportation correction for the outcome,
// assuming an ideal Phi+ channel.
SpinState bob_final_state(const BellOutcome& outcome, const JunctionPair& ring_b,
                          const PhaseSet& phases_b, CorrectionMode mode,
                          double tol = kConstraintTol);

// End to end: ring states, qubit, Bell measurement, constraint evaluation and
// per-outcome fidelity. Constraint violations are reported, not thrown.
ProtocolReport run_protocol(const RingConfig& config_a, const RingConfig& config_b,
                            QubitChoice choice, CorrectionMode mode,
                            double tol = kConstraintTol);

}  // namespace qshir
