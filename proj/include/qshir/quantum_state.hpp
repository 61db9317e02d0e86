#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qshir/errors.hpp"

namespace qshir {

using Complex = std::complex<double>;

// Tolerance for exact algebraic identities in double precision.
inline constexpr double kAlgebraTol = 1e-12;
// Eigenvalues above -kEigenTol count as nonnegative.
inline constexpr double kEigenTol = 1e-10;
// Squared norms below this are treated as the zero state.
inline constexpr double kZeroThreshold = 1e-15;

// Pure state of 1, 2 or 3 spins over the computational basis {up, down}^n.
// Index convention: up = 0, down = 1, leftmost spin most significant.
class SpinState {
public:
    explicit SpinState(std::vector<Complex> amplitudes);

    // |index> of an n-spin register.
    static SpinState basis(std::size_t num_spins, std::size_t index);

    std::size_t size() const { return amps_.size(); }
    std::size_t num_spins() const { return num_spins_; }

    const Complex& operator[](std::size_t i) const { return amps_[i]; }
    const std::vector<Complex>& amplitudes() const { return amps_; }

    double squared_norm() const;
    bool is_normalized(double tol = kAlgebraTol) const;
    bool is_zero() const { return squared_norm() < kZeroThreshold; }

    // Throws DegenerateStateError on a zero state.
    SpinState normalized() const;
    SpinState scaled(Complex factor) const;

private:
    std::vector<Complex> amps_;
    std::size_t num_spins_;
};

class DensityMatrix {
public:
    explicit DensityMatrix(Eigen::MatrixXcd entries);

    std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
    const Eigen::MatrixXcd& entries() const { return entries_; }
    Complex operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }

    double trace_real() const { return entries_.trace().real(); }
    bool is_hermitian(double tol = kAlgebraTol) const;
    bool is_positive_semidefinite(double tol = kEigenTol) const;
    std::vector<double> eigenvalues() const;

private:
    Eigen::MatrixXcd entries_;
};

struct ProjectionResult {
    double probability;
    SpinState residual;  // unnormalized post-measurement state on the kept subsystems
};

// Kronecker product; result must not exceed 3 spins.
SpinState tensor(const SpinState& a, const SpinState& b);

// Projects `state` onto `projector` acting on the listed subsystems (strictly
// increasing, 0 = leftmost). Returns the outcome probability and the
// unnormalized residual state on the remaining subsystems.
ProjectionResult project(const SpinState& state, const SpinState& projector,
                         std::span<const std::size_t> subsystems);

// |<a|b>|^2 for normalized states of equal dimension.
double fidelity(const SpinState& a, const SpinState& b);

// Partial trace keeping the listed subsystems (strictly increasing).
DensityMatrix reduced_density(const SpinState& state, std::span<const std::size_t> keep);

// 2|a00*a11 - a01*a10| for a normalized two-spin state.
double concurrence(const SpinState& state);

// (1/2)||rho - sigma||_1 via the eigenvalues of the Hermitian difference.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

}  // namespace qshir
