#pragma once

#include <array>

#include "qshir/protocol.hpp"

namespace qshir {
namespace oracle {

struct OracleRecord {
    BellLabel label;
    double probability;
    SpinState corrected;  // unnormalized Bob state after the standard correction
};

// Brute-force textbook teleportation: expands the full 8-amplitude state,
// projects each Bell state by explicit inner products, then applies the fixed
// Pauli-style correction for the outcome. Shares only the quantum-state
// module with the implementation it checks.
std::array<OracleRecord, 4> textbook_teleport(const SpinState& qubit,
                                              const SpinState& channel);

// True iff probabilities agree within tol and, on every branch where a state
// comparison is meaningful (probability above the zero threshold and, in
// constraint mode, the Table-1 row satisfied), the corrected states match to
// fidelity 1 within tol.
bool compare_runs(const ProtocolReport& report,
                  const std::array<OracleRecord, 4>& records, double tol);

}  // namespace oracle
}  // namespace qshir
