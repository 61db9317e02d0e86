#include "qshir/oracle.hpp"

#include <cmath>

namespace qshir {
namespace oracle {

namespace {

constexpr double kInvSqrt2 = 0.7071067811865476;

// Bell vectors over the (1A, 1B) pair, written out longhand.
std::array<Complex, 4> bell_vector(BellLabel label) {
    switch (label) {
        case BellLabel::PhiPlus: return {kInvSqrt2, 0.0, 0.0, kInvSqrt2};
        case BellLabel::PhiMinus: return {kInvSqrt2, 0.0, 0.0, -kInvSqrt2};
        case BellLabel::PsiPlus: return {0.0, kInvSqrt2, kInvSqrt2, 0.0};
        case BellLabel::PsiMinus: return {0.0, kInvSqrt2, -kInvSqrt2, 0.0};
    }
    throw std::logic_error("unreachable");
}

std::array<Complex, 2> correct(const std::array<Complex, 2>& raw, BellLabel label) {
    switch (label) {
        case BellLabel::PhiPlus: return {raw[0], raw[1]};
        case BellLabel::PhiMinus: return {raw[0], -raw[1]};
        case BellLabel::PsiPlus: return {raw[1], raw[0]};
        case BellLabel::PsiMinus: return {raw[1], -raw[0]};
    }
    throw std::logic_error("unreachable");
}

}  // namespace

std::array<OracleRecord, 4> textbook_teleport(const SpinState& qubit,
                                              const SpinState& channel) {
    if (qubit.num_spins() != 1 || channel.num_spins() != 2) {
        throw DimensionError("textbook_teleport expects a qubit and a 2-spin channel");
    }
    if (!qubit.is_normalized(1e-9) || !channel.is_normalized(1e-9)) {
        throw NotNormalizedError("textbook_teleport requires normalized inputs");
    }

    // total[i*4 + j*2 + s] = qubit[i] * channel[j*2 + s], ordered (1A, 1B, 2B).
    std::array<Complex, 8> total;
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            for (std::size_t s = 0; s < 2; ++s) {
                total[i * 4 + j * 2 + s] = qubit[i] * channel[j * 2 + s];
            }
        }
    }

    std::array<OracleRecord, 4> records = {
        OracleRecord{BellLabel::PhiPlus, 0.0, SpinState({0.0, 0.0})},
        OracleRecord{BellLabel::PhiMinus, 0.0, SpinState({0.0, 0.0})},
        OracleRecord{BellLabel::PsiPlus, 0.0, SpinState({0.0, 0.0})},
        OracleRecord{BellLabel::PsiMinus, 0.0, SpinState({0.0, 0.0})},
    };
    for (auto& rec : records) {
        const std::array<Complex, 4> bell = bell_vector(rec.label);
        std::array<Complex, 2> raw = {Complex{0.0, 0.0}, Complex{0.0, 0.0}};
        for (std::size_t i = 0; i < 2; ++i) {
            for (std::size_t j = 0; j < 2; ++j) {
                for (std::size_t s = 0; s < 2; ++s) {
                    raw[s] += std::conj(bell[i * 2 + j]) * total[i * 4 + j * 2 + s];
                }
            }
        }
        rec.probability = std::norm(raw[0]) + std::norm(raw[1]);
        const std::array<Complex, 2> corrected = correct(raw, rec.label);
        rec.corrected = SpinState({corrected[0], corrected[1]});
    }
    return records;
}

bool compare_runs(const ProtocolReport& report,
                  const std::array<OracleRecord, 4>& records, double tol) {
    for (std::size_t i = 0; i < records.size(); ++i) {
        const OutcomeRecord& proto = report.outcomes[i];
        const OracleRecord& ref = records[i];
        if (proto.label != ref.label) {
            return false;
        }
        if (std::abs(proto.probability - ref.probability) > tol) {
            return false;
        }
        if (proto.probability < kZeroThreshold || ref.probability < kZeroThreshold) {
            continue;  // vacuous branch
        }
        if (report.mode == CorrectionMode::Constraint && !proto.constraints_ok) {
            continue;  // protocol made no success claim on this branch
        }
        if (fidelity(proto.bob_final, ref.corrected.normalized()) < 1.0 - tol) {
            return false;
        }
    }
    return true;
}

}  // namespace oracle
}  // namespace qshir
