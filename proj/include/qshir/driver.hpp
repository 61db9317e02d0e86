#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "qshir/config.hpp"
#include "qshir/oracle.hpp"

namespace qshir {

// Exit codes shared by the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitValidation = 3;
inline constexpr int kExitDegenerate = 4;

// Runs the protocol once, writes <stem>.run.json under out_dir and prints the
// four-row outcome table. Degenerate configurations propagate as
// DegenerateStateError.
void cmd_run(const RunConfig& config, const std::filesystem::path& out_dir,
             const std::string& stem, std::ostream& out, double tol = kConstraintTol);

// Evaluates every sweep point (in parallel, output ordered by index) and
// writes <stem>.sweep.csv under out_dir.
void cmd_sweep(const RunConfig& config, const std::filesystem::path& out_dir,
               const std::string& stem, std::ostream& out, double tol = kConstraintTol);

// Runs the five invariant suites on seeded random inputs; returns kExitOk when
// all pass.
int cmd_selfcheck(std::uint64_t seed, std::ostream& out);

// JSON report body for one protocol run (exposed for tests).
std::string render_run_report(const RunConfig& config, const ProtocolReport& report);

// CSV body for a sweep (exposed for tests).
std::string render_sweep_csv(const RunConfig& config, double tol = kConstraintTol);

}  // namespace qshir
