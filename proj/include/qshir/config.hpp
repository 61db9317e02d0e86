#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "qshir/protocol.hpp"

namespace qshir {

struct SweepSpec {
    std::string parameter;  // dotted path of a real-valued scalar leaf
    double start;
    double stop;
    int steps;  // >= 2
};

struct RunConfig {
    RingConfig ring_a;
    RingConfig ring_b;
    QubitChoice choice = QubitChoice::Up;
    CorrectionMode mode = CorrectionMode::Constraint;
    std::uint64_t seed = 42;
    std::optional<SweepSpec> sweep;
};

// Symmetric-beamsplitter junctions on a circular-symmetric geometry derived
// from the default 130 nm / 230 nm radii, zero Rashba and zero net energy.
RunConfig default_config();

// Flat line-oriented key-value format with dotted keys; complex values as
// [re, im]. Unknown keys raise ParseError with line context; violated
// invariants raise ValidationError naming the offender.
RunConfig load_config(const std::filesystem::path& path);
RunConfig parse_config(const std::string& text);

// Re-validates the invariants load_config enforces (junction unitarity at
// kUnitarityTol, positive lengths and velocities, sweep steps >= 2).
void validate_config(const RunConfig& config);

// Assigns a sweepable leaf addressed by dotted path. Real scalars directly;
// complex junction entries via the `.phase` / `.mag` suffixes.
void sweep_set(RunConfig& config, const std::string& path, double value);

}  // namespace qshir
