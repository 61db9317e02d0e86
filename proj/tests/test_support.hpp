#pragma once

// Shared random generators for property-style tests. Kept separate from the
// library's own selfcheck generators.

#include <cmath>
#include <random>

#include "qshir/ring_model.hpp"

namespace qshir::testing {

inline Complex random_complex(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double re = gauss(rng);
    const double im = gauss(rng);
    return Complex{re, im};
}

inline JunctionAmplitudes random_junction(std::mt19937_64& rng) {
    JunctionAmplitudes j{random_complex(rng), random_complex(rng), random_complex(rng)};
    const double scale = 1.0 / std::sqrt(j.probability_sum());
    j.t *= scale;
    j.p *= scale;
    j.f *= scale;
    return j;
}

inline RingGeometry random_geometry(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> length(0.1, 10.0);
    return RingGeometry{length(rng), length(rng), length(rng), length(rng),
                        length(rng), length(rng), length(rng)};
}

inline double random_momentum(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> k(-2.0, 2.0);
    return k(rng);
}

inline SpinState random_state(std::mt19937_64& rng, std::size_t num_spins) {
    std::vector<Complex> amps(std::size_t{1} << num_spins);
    for (Complex& a : amps) {
        a = random_complex(rng);
    }
    return SpinState(std::move(amps)).normalized();
}

}  // namespace qshir::testing
