#include "qshir/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

namespace qshir {

namespace {

constexpr double kInvSqrt2 = 0.7071067811865476;

std::string trim(const std::string& s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return s.substr(begin, end - begin);
}

double parse_real(const std::string& value, int line) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) {
            throw std::invalid_argument(value);
        }
        return v;
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line) + ": expected a real number, got '" +
                         value + "'");
    }
}

Complex parse_complex(const std::string& value, int line) {
    const std::string v = trim(value);
    if (v.size() < 2 || v.front() != '[' || v.back() != ']') {
        throw ParseError("line " + std::to_string(line) +
                         ": expected a complex value as [re, im], got '" + value + "'");
    }
    const std::string inner = v.substr(1, v.size() - 2);
    const std::size_t comma = inner.find(',');
    if (comma == std::string::npos) {
        throw ParseError("line " + std::to_string(line) + ": complex value needs two parts");
    }
    return Complex{parse_real(trim(inner.substr(0, comma)), line),
                   parse_real(trim(inner.substr(comma + 1)), line)};
}

struct RawEntry {
    std::string value;
    int line;
};

using RawMap = std::map<std::string, RawEntry>;

RawMap tokenize(const std::string& text) {
    RawMap entries;
    std::istringstream in(text);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') {
            continue;
        }
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ParseError("line " + std::to_string(number) + ": expected 'key = value'");
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) {
            throw ParseError("line " + std::to_string(number) + ": empty key");
        }
        entries[key] = RawEntry{value, number};
    }
    return entries;
}

class Assigner {
public:
    explicit Assigner(RawMap entries) : entries_(std::move(entries)) {}

    void real(const std::string& key, double& target) {
        if (auto it = entries_.find(key); it != entries_.end()) {
            target = parse_real(it->second.value, it->second.line);
            entries_.erase(it);
        }
    }

    void complex(const std::string& key, Complex& target) {
        if (auto it = entries_.find(key); it != entries_.end()) {
            target = parse_complex(it->second.value, it->second.line);
            entries_.erase(it);
        }
    }

    void word(const std::string& key, std::string& target) {
        if (auto it = entries_.find(key); it != entries_.end()) {
            target = it->second.value;
            entries_.erase(it);
        }
    }

    bool has(const std::string& key) const { return entries_.contains(key); }

    void finish() const {
        if (!entries_.empty()) {
            const auto& [key, entry] = *entries_.begin();
            throw ParseError("line " + std::to_string(entry.line) + ": unknown key '" + key +
                             "'");
        }
    }

private:
    RawMap entries_;
};

void assign_ring(Assigner& in, const std::string& prefix, RingConfig& ring) {
    for (const auto& [name, junction] :
         {std::pair{std::string("junction_a"), &ring.junctions.a},
          std::pair{std::string("junction_b"), &ring.junctions.b}}) {
        in.complex(prefix + "." + name + ".t", junction->t);
        in.complex(prefix + "." + name + ".p", junction->p);
        in.complex(prefix + "." + name + ".f", junction->f);
    }
    in.real(prefix + ".l1", ring.geometry.l1);
    in.real(prefix + ".l2", ring.geometry.l2);
    in.real(prefix + ".l3", ring.geometry.l3);
    in.real(prefix + ".l4", ring.geometry.l4);
    in.real(prefix + ".l5", ring.geometry.l5);
    in.real(prefix + ".l6", ring.geometry.l6);
    in.real(prefix + ".l7", ring.geometry.l7);
    in.real(prefix + ".v_f", ring.physics.fermi_velocity);
    in.real(prefix + ".alpha", ring.physics.rashba);
    in.real(prefix + ".energy", ring.physics.energy);
    in.real(prefix + ".gate", ring.physics.gate_term);
}

void validate_ring(const std::string& prefix, const RingConfig& ring) {
    if (!ring.junctions.a.is_unitary()) {
        throw ValidationError(prefix + ".junction_a violates |t|^2+|p|^2+|f|^2 = 1 (got " +
                              std::to_string(ring.junctions.a.probability_sum()) + ")");
    }
    if (!ring.junctions.b.is_unitary()) {
        throw ValidationError(prefix + ".junction_b violates |t|^2+|p|^2+|f|^2 = 1 (got " +
                              std::to_string(ring.junctions.b.probability_sum()) + ")");
    }
    try {
        ring.geometry.validate();
    } catch (const ValidationError& e) {
        throw ValidationError(prefix + ": " + e.what());
    }
    if (!(ring.physics.fermi_velocity > 0.0)) {
        throw ValidationError(prefix + ".v_f must be strictly positive");
    }
}

// path pieces for sweep_set
JunctionAmplitudes* junction_at(RingConfig& ring, const std::string& name) {
    if (name == "junction_a") return &ring.junctions.a;
    if (name == "junction_b") return &ring.junctions.b;
    return nullptr;
}

double* real_leaf(RingConfig& ring, const std::string& name) {
    if (name == "l1") return &ring.geometry.l1;
    if (name == "l2") return &ring.geometry.l2;
    if (name == "l3") return &ring.geometry.l3;
    if (name == "l4") return &ring.geometry.l4;
    if (name == "l5") return &ring.geometry.l5;
    if (name == "l6") return &ring.geometry.l6;
    if (name == "l7") return &ring.geometry.l7;
    if (name == "v_f") return &ring.physics.fermi_velocity;
    if (name == "alpha") return &ring.physics.rashba;
    if (name == "energy") return &ring.physics.energy;
    if (name == "gate") return &ring.physics.gate_term;
    return nullptr;
}

std::vector<std::string> split_path(const std::string& path) {
    std::vector<std::string> parts;
    std::size_t begin = 0;
    while (begin <= path.size()) {
        const std::size_t dot = path.find('.', begin);
        if (dot == std::string::npos) {
            parts.push_back(path.substr(begin));
            break;
        }
        parts.push_back(path.substr(begin, dot - begin));
        begin = dot + 1;
    }
    return parts;
}

}  // namespace

RunConfig default_config() {
    // Circular-symmetric split of the 230 nm outer and 130 nm inner radii:
    // four equal outer arcs, three equal inner arcs (l2 = l3, l5 = l7).
    const double outer = 2.0 * std::numbers::pi * 230.0 / 4.0;
    const double inner = 2.0 * std::numbers::pi * 130.0 / 3.0;
    RunConfig config;
    const JunctionAmplitudes symmetric{Complex{kInvSqrt2, 0.0}, Complex{0.0, 0.0},
                                       Complex{kInvSqrt2, 0.0}};
    for (RingConfig* ring : {&config.ring_a, &config.ring_b}) {
        ring->junctions = {symmetric, symmetric};
        ring->geometry = {outer, outer, outer, outer, inner, inner, inner};
        ring->physics = {1.0, 0.0, 0.0, 0.0};
    }
    return config;
}

RunConfig parse_config(const std::string& text) {
    Assigner in(tokenize(text));
    RunConfig config = default_config();

    assign_ring(in, "ring_a", config.ring_a);
    assign_ring(in, "ring_b", config.ring_b);

    std::string choice = "up";
    in.word("qubit_choice", choice);
    if (choice == "up") {
        config.choice = QubitChoice::Up;
    } else if (choice == "down") {
        config.choice = QubitChoice::Down;
    } else {
        throw ValidationError("qubit_choice must be 'up' or 'down', got '" + choice + "'");
    }

    std::string mode = "constraint";
    in.word("mode", mode);
    if (mode == "constraint") {
        config.mode = CorrectionMode::Constraint;
    } else if (mode == "unitary") {
        config.mode = CorrectionMode::Unitary;
    } else {
        throw ValidationError("mode must be 'constraint' or 'unitary', got '" + mode + "'");
    }

    double seed = static_cast<double>(config.seed);
    in.real("seed", seed);
    config.seed = static_cast<std::uint64_t>(seed);

    if (in.has("sweep.parameter") || in.has("sweep.start") || in.has("sweep.stop") ||
        in.has("sweep.steps")) {
        SweepSpec sweep{"", 0.0, 0.0, 0};
        in.word("sweep.parameter", sweep.parameter);
        in.real("sweep.start", sweep.start);
        in.real("sweep.stop", sweep.stop);
        double steps = 0.0;
        in.real("sweep.steps", steps);
        sweep.steps = static_cast<int>(steps);
        config.sweep = sweep;
    }

    in.finish();
    validate_config(config);
    return config;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream file(path);
    if (!file) {
        throw ParseError("cannot open config file: " + path.string());
    }
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return parse_config(buffer.str());
}

void validate_config(const RunConfig& config) {
    validate_ring("ring_a", config.ring_a);
    validate_ring("ring_b", config.ring_b);
    if (config.sweep) {
        if (config.sweep->parameter.empty()) {
            throw ValidationError("sweep.parameter is required when a sweep is present");
        }
        if (config.sweep->steps < 2) {
            throw ValidationError("sweep.steps must be at least 2");
        }
        // Reject unknown sweep paths up front.
        RunConfig probe = config;
        sweep_set(probe, config.sweep->parameter, config.sweep->start);
    }
}

void sweep_set(RunConfig& config, const std::string& path, double value) {
    const std::vector<std::string> parts = split_path(path);
    if (parts.size() >= 2 && (parts[0] == "ring_a" || parts[0] == "ring_b")) {
        RingConfig& ring = parts[0] == "ring_a" ? config.ring_a : config.ring_b;
        if (parts.size() == 2) {
            if (double* leaf = real_leaf(ring, parts[1])) {
                *leaf = value;
                return;
            }
        } else if (parts.size() == 4) {
            if (JunctionAmplitudes* junction = junction_at(ring, parts[1])) {
                Complex* entry = nullptr;
                if (parts[2] == "t") entry = &junction->t;
                if (parts[2] == "p") entry = &junction->p;
                if (parts[2] == "f") entry = &junction->f;
                if (entry != nullptr) {
                    if (parts[3] == "phase") {
                        *entry = std::polar(std::abs(*entry), value);
                        return;
                    }
                    if (parts[3] == "mag") {
                        const double arg = std::arg(*entry);
                        *entry = std::polar(value, arg);
                        return;
                    }
                }
            }
        }
    }
    throw ValidationError("'" + path + "' is not a sweepable parameter");
}

}  // namespace qshir
