#include "qshir/quantum_state.hpp"

#include <algorithm>
#include <cmath>

namespace qshir {

namespace {

std::size_t spins_for_size(std::size_t size) {
    switch (size) {
        case 2: return 1;
        case 4: return 2;
        case 8: return 3;
        default:
            throw DimensionError("amplitude vector length must be 2, 4 or 8, got " +
                                 std::to_string(size));
    }
}

void check_subsystem_list(std::span<const std::size_t> subs, std::size_t num_spins) {
    if (subs.empty()) {
        throw DimensionError("subsystem list is empty");
    }
    for (std::size_t i = 0; i < subs.size(); ++i) {
        if (subs[i] >= num_spins) {
            throw DimensionError("subsystem index out of range");
        }
        if (i > 0 && subs[i] <= subs[i - 1]) {
            throw DimensionError("subsystem indices must be strictly increasing");
        }
    }
}

}  // namespace

SpinState::SpinState(std::vector<Complex> amplitudes)
    : amps_(std::move(amplitudes)), num_spins_(spins_for_size(amps_.size())) {}

SpinState SpinState::basis(std::size_t num_spins, std::size_t index) {
    std::vector<Complex> amps(std::size_t{1} << num_spins, Complex{0.0, 0.0});
    amps.at(index) = Complex{1.0, 0.0};
    return SpinState(std::move(amps));
}

double SpinState::squared_norm() const {
    double sum = 0.0;
    for (const Complex& a : amps_) {
        sum += std::norm(a);
    }
    return sum;
}

bool SpinState::is_normalized(double tol) const {
    return std::abs(squared_norm() - 1.0) <= tol;
}

SpinState SpinState::normalized() const {
    const double n2 = squared_norm();
    if (n2 < kZeroThreshold) {
        throw DegenerateStateError("cannot normalize a zero state");
    }
    return scaled(Complex{1.0 / std::sqrt(n2), 0.0});
}

SpinState SpinState::scaled(Complex factor) const {
    std::vector<Complex> amps(amps_);
    for (Complex& a : amps) {
        a *= factor;
    }
    return SpinState(std::move(amps));
}

DensityMatrix::DensityMatrix(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols()) {
        throw DimensionError("density matrix must be square");
    }
    const auto n = entries_.rows();
    if (n != 2 && n != 4 && n != 8) {
        throw DimensionError("density matrix dimension must be 2, 4 or 8");
    }
}

bool DensityMatrix::is_hermitian(double tol) const {
    return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

std::vector<double> DensityMatrix::eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(entries_, Eigen::EigenvaluesOnly);
    const auto& vals = solver.eigenvalues();
    return std::vector<double>(vals.data(), vals.data() + vals.size());
}

bool DensityMatrix::is_positive_semidefinite(double tol) const {
    for (double v : eigenvalues()) {
        if (v < -tol) {
            return false;
        }
    }
    return true;
}

SpinState tensor(const SpinState& a, const SpinState& b) {
    const std::size_t total = a.num_spins() + b.num_spins();
    if (total > 3) {
        throw DimensionError("tensor product would exceed 3 spins");
    }
    std::vector<Complex> amps(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            amps[i * b.size() + j] = a[i] * b[j];
        }
    }
    return SpinState(std::move(amps));
}

ProjectionResult project(const SpinState& state, const SpinState& projector,
                         std::span<const std::size_t> subsystems) {
    const std::size_t n = state.num_spins();
    check_subsystem_list(subsystems, n);
    if (subsystems.size() != projector.num_spins()) {
        throw DimensionError("projector size does not match subsystem count");
    }
    if (!projector.is_normalized(1e-9)) {
        throw NotNormalizedError("projector state must be normalized");
    }

    const std::size_t m = n - subsystems.size();
    std::vector<Complex> residual(std::size_t{1} << m, Complex{0.0, 0.0});
    for (std::size_t t = 0; t < state.size(); ++t) {
        std::size_t proj_index = 0;
        std::size_t rest_index = 0;
        std::size_t sub_pos = 0;
        for (std::size_t spin = 0; spin < n; ++spin) {
            const std::size_t bit = (t >> (n - 1 - spin)) & 1u;
            if (sub_pos < subsystems.size() && subsystems[sub_pos] == spin) {
                proj_index = (proj_index << 1) | bit;
                ++sub_pos;
            } else {
                rest_index = (rest_index << 1) | bit;
            }
        }
        residual[rest_index] += std::conj(projector[proj_index]) * state[t];
    }

    // Full projection leaves a scalar amplitude; keep a one-spin carrier only
    // when subsystems remain.
    if (m == 0) {
        throw DimensionError("projector must leave at least one subsystem");
    }
    SpinState res(std::move(residual));
    return ProjectionResult{res.squared_norm(), std::move(res)};
}

double fidelity(const SpinState& a, const SpinState& b) {
    if (a.size() != b.size()) {
        throw DimensionError("fidelity requires equal dimensions");
    }
    if (!a.is_normalized(1e-9) || !b.is_normalized(1e-9)) {
        throw NotNormalizedError("fidelity requires normalized states");
    }
    Complex overlap{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) {
        overlap += std::conj(a[i]) * b[i];
    }
    return std::norm(overlap);
}

DensityMatrix reduced_density(const SpinState& state, std::span<const std::size_t> keep) {
    const std::size_t n = state.num_spins();
    check_subsystem_list(keep, n);
    if (!state.is_normalized(1e-9)) {
        throw NotNormalizedError("reduced_density requires a normalized state");
    }
    const std::size_t k = keep.size();
    const std::size_t m = n - k;
    const std::size_t keep_dim = std::size_t{1} << k;
    const std::size_t rest_dim = std::size_t{1} << m;

    // Recombine a (kept, discarded) index pair into a full basis index.
    auto combine = [&](std::size_t kept, std::size_t rest) {
        std::size_t full = 0;
        std::size_t keep_pos = 0;
        std::size_t kept_bits_used = 0;
        std::size_t rest_bits_used = 0;
        for (std::size_t spin = 0; spin < n; ++spin) {
            std::size_t bit;
            if (keep_pos < k && keep[keep_pos] == spin) {
                bit = (kept >> (k - 1 - kept_bits_used)) & 1u;
                ++kept_bits_used;
                ++keep_pos;
            } else {
                bit = (rest >> (m - 1 - rest_bits_used)) & 1u;
                ++rest_bits_used;
            }
            full = (full << 1) | bit;
        }
        return full;
    };

    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(keep_dim, keep_dim);
    for (std::size_t r = 0; r < keep_dim; ++r) {
        for (std::size_t c = 0; c < keep_dim; ++c) {
            Complex sum{0.0, 0.0};
            for (std::size_t d = 0; d < rest_dim; ++d) {
                sum += state[combine(r, d)] * std::conj(state[combine(c, d)]);
            }
            rho(r, c) = sum;
        }
    }
    return DensityMatrix(std::move(rho));
}

double concurrence(const SpinState& state) {
    if (state.num_spins() != 2) {
        throw DimensionError("concurrence is defined for two-spin states");
    }
    if (!state.is_normalized(1e-9)) {
        throw NotNormalizedError("concurrence requires a normalized state");
    }
    return 2.0 * std::abs(state[0] * state[3] - state[1] * state[2]);
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim()) {
        throw DimensionError("trace_distance requires equal dimensions");
    }
    DensityMatrix diff(rho.entries() - sigma.entries());
    double sum = 0.0;
    for (double v : diff.eigenvalues()) {
        sum += std::abs(v);
    }
    return 0.5 * sum;
}

}  // namespace qshir
