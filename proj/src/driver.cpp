#include "qshir/driver.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <iomanip>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace qshir {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kInvSqrt2 = 0.7071067811865476;

std::string num15(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

ordered_json to_json(Complex c) {
    return ordered_json::array({c.real(), c.imag()});
}

ordered_json to_json(const SpinState& state) {
    ordered_json amps = ordered_json::array();
    for (const Complex& a : state.amplitudes()) {
        amps.push_back(to_json(a));
    }
    return amps;
}

void echo_ring(ordered_json& echo, const std::string& prefix, const RingConfig& ring) {
    echo[prefix + ".junction_a.t"] = to_json(ring.junctions.a.t);
    echo[prefix + ".junction_a.p"] = to_json(ring.junctions.a.p);
    echo[prefix + ".junction_a.f"] = to_json(ring.junctions.a.f);
    echo[prefix + ".junction_b.t"] = to_json(ring.junctions.b.t);
    echo[prefix + ".junction_b.p"] = to_json(ring.junctions.b.p);
    echo[prefix + ".junction_b.f"] = to_json(ring.junctions.b.f);
    echo[prefix + ".l1"] = ring.geometry.l1;
    echo[prefix + ".l2"] = ring.geometry.l2;
    echo[prefix + ".l3"] = ring.geometry.l3;
    echo[prefix + ".l4"] = ring.geometry.l4;
    echo[prefix + ".l5"] = ring.geometry.l5;
    echo[prefix + ".l6"] = ring.geometry.l6;
    echo[prefix + ".l7"] = ring.geometry.l7;
    echo[prefix + ".v_f"] = ring.physics.fermi_velocity;
    echo[prefix + ".alpha"] = ring.physics.rashba;
    echo[prefix + ".energy"] = ring.physics.energy;
    echo[prefix + ".gate"] = ring.physics.gate_term;
}

std::string rule_text(PairRule rule, const std::string& symbol) {
    switch (rule) {
        case PairRule::Zero: return symbol + "_a = " + symbol + "_b = 0";
        case PairRule::ConjugatePlus: return symbol + "_b = +conj(" + symbol + "_a)";
        case PairRule::ConjugateMinus: return symbol + "_b = -conj(" + symbol + "_a)";
    }
    throw std::logic_error("unreachable");
}

std::mt19937_64 seeded_rng(std::uint64_t seed) { return std::mt19937_64{seed}; }

Complex random_complex(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double re = gauss(rng);
    const double im = gauss(rng);
    return Complex{re, im};
}

JunctionAmplitudes random_junction(std::mt19937_64& rng) {
    JunctionAmplitudes j{random_complex(rng), random_complex(rng), random_complex(rng)};
    const double scale = 1.0 / std::sqrt(j.probability_sum());
    j.t *= scale;
    j.p *= scale;
    j.f *= scale;
    return j;
}

RingGeometry random_geometry(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> length(0.1, 10.0);
    return RingGeometry{length(rng), length(rng), length(rng), length(rng),
                        length(rng), length(rng), length(rng)};
}

double random_momentum(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> k(-2.0, 2.0);
    return k(rng);
}

SpinState random_state(std::mt19937_64& rng, std::size_t num_spins) {
    std::vector<Complex> amps(std::size_t{1} << num_spins);
    for (Complex& a : amps) {
        a = random_complex(rng);
    }
    return SpinState(std::move(amps)).normalized();
}

bool suite_unitarity(std::mt19937_64& rng, int samples) {
    for (int i = 0; i < samples; ++i) {
        const JunctionPair pair{random_junction(rng), random_junction(rng)};
        const PhaseSet phases = geometric_phases(random_momentum(rng), random_geometry(rng));
        const ReducedSMatrix s = reduced_scattering_matrix(pair, phases);
        for (std::size_t col = 0; col < 2; ++col) {
            if (std::abs(s.column_squared_norm(col) - 1.0) > kAlgebraTol) {
                return false;
            }
        }
    }
    return true;
}

bool suite_phase_identities(std::mt19937_64& rng, int samples) {
    for (int i = 0; i < samples; ++i) {
        if (!verify_phase_identities(random_momentum(rng), random_geometry(rng))) {
            return false;
        }
    }
    return true;
}

bool suite_formulation_equivalence(std::mt19937_64& rng, int samples) {
    for (int i = 0; i < samples; ++i) {
        const JunctionPair pair{random_junction(rng), random_junction(rng)};
        const double k = random_momentum(rng);
        const RingGeometry geom = random_geometry(rng);
        const RingAmplitudes lhs =
            two_particle_amplitudes_phase_form(pair, geometric_phases(k, geom));
        const RingAmplitudes rhs = two_particle_amplitudes_pathlength_form(pair, k, geom);
        if (std::abs(lhs.up_up - rhs.up_up) > kAlgebraTol ||
            std::abs(lhs.down_down - rhs.down_down) > kAlgebraTol ||
            std::abs(lhs.down_up - rhs.down_up) > kAlgebraTol ||
            std::abs(lhs.up_down - rhs.up_down) > kAlgebraTol) {
            return false;
        }
    }
    return true;
}

bool suite_oracle(std::mt19937_64& rng, int samples) {
    const SpinState phi_plus({kInvSqrt2, 0.0, 0.0, kInvSqrt2});
    const JunctionPair dummy{{Complex{kInvSqrt2, 0.0}, {}, Complex{kInvSqrt2, 0.0}},
                             {Complex{kInvSqrt2, 0.0}, {}, Complex{kInvSqrt2, 0.0}}};
    const PhaseSet zero{};
    for (int i = 0; i < samples; ++i) {
        const SpinState qubit = random_state(rng, 1);
        const auto outcomes = bell_measure(total_state(qubit, phi_plus));
        const auto reference = oracle::textbook_teleport(qubit, phi_plus);
        for (std::size_t b = 0; b < 4; ++b) {
            if (std::abs(outcomes[b].probability - reference[b].probability) > kAlgebraTol) {
                return false;
            }
            const SpinState corrected =
                bob_final_state(outcomes[b], dummy, zero, CorrectionMode::Unitary);
            if (fidelity(corrected, reference[b].corrected.normalized()) <
                1.0 - kAlgebraTol) {
                return false;
            }
        }
    }
    return true;
}

bool suite_no_signaling(std::mt19937_64& rng, int samples) {
    static constexpr std::size_t kBobMode[] = {2};
    for (int i = 0; i < samples; ++i) {
        const SpinState channel = random_state(rng, 2);
        const DensityMatrix rho1 =
            reduced_density(total_state(random_state(rng, 1), channel), kBobMode);
        const DensityMatrix rho2 =
            reduced_density(total_state(random_state(rng, 1), channel), kBobMode);
        if (trace_distance(rho1, rho2) > kAlgebraTol) {
            return false;
        }
    }
    return true;
}

struct SweepPointRows {
    std::vector<std::string> rows;
};

SweepPointRows evaluate_sweep_point(const RunConfig& base, double value, double tol) {
    const std::string& param = base.sweep->parameter;
    SweepPointRows point;
    RunConfig config = base;
    std::string status = "ok";
    std::optional<ProtocolReport> report;
    try {
        sweep_set(config, param, value);
        if (!config.ring_a.junctions.a.is_unitary() || !config.ring_a.junctions.b.is_unitary() ||
            !config.ring_b.junctions.a.is_unitary() || !config.ring_b.junctions.b.is_unitary()) {
            status = "error";
        } else {
            report = run_protocol(config.ring_a, config.ring_b, config.choice, config.mode, tol);
        }
    } catch (const DegenerateStateError&) {
        status = "degenerate";
    } catch (const std::exception&) {
        status = "error";
    }
    for (std::size_t b = 0; b < 4; ++b) {
        const BellLabel label = kBellLabels[b];
        std::ostringstream row;
        row << param << ',' << num15(value) << ',' << to_string(label) << ',';
        if (report) {
            const OutcomeRecord& rec = report->outcomes[b];
            row << num15(rec.probability) << ',' << num15(rec.fidelity) << ','
                << num15(report->channel_concurrence);
        } else {
            row << num15(0.0) << ',' << num15(0.0) << ',' << num15(0.0);
        }
        row << ',' << status;
        point.rows.push_back(row.str());
    }
    return point;
}

}  // namespace

std::string render_run_report(const RunConfig& config, const ProtocolReport& report) {
    ordered_json doc;
    ordered_json echo;
    echo_ring(echo, "ring_a", config.ring_a);
    echo_ring(echo, "ring_b", config.ring_b);
    echo["qubit_choice"] = to_string(config.choice);
    echo["mode"] = to_string(config.mode);
    echo["seed"] = config.seed;
    doc["config_echo"] = std::move(echo);
    doc["mode"] = to_string(report.mode);
    doc["qubit"] = {
        {"choice", to_string(report.choice)},
        {"probability", report.qubit.probability},
        {"amplitudes", to_json(report.qubit.state)},
    };
    doc["channel"] = {
        {"amplitudes", to_json(report.channel)},
        {"concurrence", report.channel_concurrence},
    };
    ordered_json outcomes = ordered_json::array();
    for (const OutcomeRecord& rec : report.outcomes) {
        outcomes.push_back({
            {"label", to_string(rec.label)},
            {"probability", rec.probability},
            {"constraints_ok", rec.constraints_ok},
            {"congruence_ok", rec.congruence_ok},
            {"fidelity", rec.fidelity},
            {"bob_final", to_json(rec.bob_final)},
        });
    }
    doc["outcomes"] = std::move(outcomes);
    ordered_json table;
    for (std::size_t b = 0; b < 4; ++b) {
        const FeedForwardConstraints rules = feed_forward_constraints(kBellLabels[b]);
        table[to_string(kBellLabels[b])] = {
            {"flipping", rule_text(rules.flip, "f")},
            {"tunneling", "t_a = conj(t_b)"},
            {"preserving", rule_text(rules.preserve, "p")},
            {"congruence", rules.congruence == Congruence::CG1 ? "CG1" : "CG2"},
            {"constraints_ok", report.outcomes[b].constraints_ok},
            {"congruence_ok", report.outcomes[b].congruence_ok},
        };
    }
    doc["table1_constraints"] = std::move(table);
    return doc.dump(2) + "\n";
}

void cmd_run(const RunConfig& config, const std::filesystem::path& out_dir,
             const std::string& stem, std::ostream& out, double tol) {
    const ProtocolReport report =
        run_protocol(config.ring_a, config.ring_b, config.choice, config.mode, tol);

    std::filesystem::create_directories(out_dir);
    const std::filesystem::path json_path = out_dir / (stem + ".run.json");
    std::ofstream json_file(json_path, std::ios::binary);
    json_file << render_run_report(config, report);

    out << "qubit choice " << to_string(report.choice) << " (p = "
        << num15(report.qubit.probability) << "), channel concurrence "
        << num15(report.channel_concurrence) << ", mode " << to_string(report.mode) << "\n";
    out << "outcome     probability     constraints  congruence  fidelity\n";
    for (const OutcomeRecord& rec : report.outcomes) {
        out << std::left << std::setw(12) << to_string(rec.label) << std::right
            << std::fixed << std::setprecision(12) << std::setw(14) << rec.probability
            << "  " << std::setw(11) << (rec.constraints_ok ? "yes" : "no")
            << "  " << std::setw(10) << (rec.congruence_ok ? "yes" : "no")
            << "  " << std::setw(14) << rec.fidelity << "\n";
        out.unsetf(std::ios::floatfield);
    }
    out << "report written to " << json_path.string() << "\n";
}

std::string render_sweep_csv(const RunConfig& config, double tol) {
    if (!config.sweep) {
        throw ValidationError("sweep command requires a sweep section in the config");
    }
    const SweepSpec& sweep = *config.sweep;
    const int steps = sweep.steps;
    std::vector<std::future<SweepPointRows>> futures;
    futures.reserve(steps);
    for (int i = 0; i < steps; ++i) {
        const double value =
            sweep.start + (sweep.stop - sweep.start) * static_cast<double>(i) /
                              static_cast<double>(steps - 1);
        futures.push_back(std::async(std::launch::async, evaluate_sweep_point, config, value,
                                     tol));
    }
    std::ostringstream csv;
    csv << "param,value,outcome,probability,fidelity,concurrence,status\n";
    for (auto& future : futures) {
        for (const std::string& row : future.get().rows) {
            csv << row << "\n";
        }
    }
    return csv.str();
}

void cmd_sweep(const RunConfig& config, const std::filesystem::path& out_dir,
               const std::string& stem, std::ostream& out, double tol) {
    const std::string csv = render_sweep_csv(config, tol);
    std::filesystem::create_directories(out_dir);
    const std::filesystem::path csv_path = out_dir / (stem + ".sweep.csv");
    std::ofstream csv_file(csv_path, std::ios::binary);
    csv_file << csv;
    out << "sweep of " << config.sweep->parameter << " over " << config.sweep->steps
        << " points written to " << csv_path.string() << "\n";
}

int cmd_selfcheck(std::uint64_t seed, std::ostream& out) {
    struct Suite {
        const char* name;
        bool (*run)(std::mt19937_64&, int);
        int samples;
    };
    const Suite suites[] = {
        {"unitarity", suite_unitarity, 1000},
        {"phase-identities", suite_phase_identities, 1000},
        {"formulation-equivalence", suite_formulation_equivalence, 1000},
        {"oracle-comparison", suite_oracle, 1000},
        {"no-signaling", suite_no_signaling, 200},
    };
    bool all_ok = true;
    for (const Suite& suite : suites) {
        std::mt19937_64 rng = seeded_rng(seed);
        const bool ok = suite.run(rng, suite.samples);
        all_ok = all_ok && ok;
        out << (ok ? "PASS" : "FAIL") << " " << suite.name << " (" << suite.samples
            << " samples)\n";
    }
    return all_ok ? kExitOk : kExitFailure;
}

}  // namespace qshir
