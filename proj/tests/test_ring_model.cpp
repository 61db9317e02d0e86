#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qshir/ring_model.hpp"
#include "test_support.hpp"

using namespace qshir;

namespace {

constexpr double kInvSqrt2 = 0.7071067811865476;

const JunctionAmplitudes kBeamsplitter{Complex{kInvSqrt2, 0.0}, Complex{0.0, 0.0},
                                       Complex{kInvSqrt2, 0.0}};
const JunctionAmplitudes kPreserveTunnel{Complex{kInvSqrt2, 0.0}, Complex{kInvSqrt2, 0.0},
                                         Complex{0.0, 0.0}};
const JunctionAmplitudes kTransparent{Complex{0.0, 0.0}, Complex{1.0, 0.0},
                                      Complex{0.0, 0.0}};
const JunctionAmplitudes kFullTunnel{Complex{1.0, 0.0}, Complex{0.0, 0.0},
                                     Complex{0.0, 0.0}};

const RingGeometry kCounting{1, 2, 3, 4, 5, 6, 7};

double amplitude_gap(const RingAmplitudes& a, const RingAmplitudes& b) {
    return std::max({std::abs(a.up_up - b.up_up), std::abs(a.down_down - b.down_down),
                     std::abs(a.down_up - b.down_up), std::abs(a.up_down - b.up_down)});
}

}  // namespace

TEST_CASE("modified Fermi velocity") {
    CHECK(modified_fermi_velocity({3.0, 4.0, 0.0, 0.0}) == doctest::Approx(5.0));
    CHECK(modified_fermi_velocity({1.0, 0.0, 0.0, 0.0}) == doctest::Approx(1.0));
    CHECK(modified_fermi_velocity({2.0, 2.0, 0.0, 0.0}) ==
          doctest::Approx(2.0 * std::numbers::sqrt2));
    CHECK_THROWS_AS(modified_fermi_velocity({0.0, 1.0, 0.0, 0.0}), ValidationError);
}

TEST_CASE("edge momentum") {
    CHECK(edge_momentum({2.0, 0.0, 1.0, 1.0}) == doctest::Approx(1.0));
    CHECK(edge_momentum({5.0, 0.0, 1.0, -1.0}) == doctest::Approx(0.0));
    CHECK(edge_momentum({3.0, 4.0, 0.3, 0.2}) == doctest::Approx(0.1));
}

TEST_CASE("geometric phases") {
    const PhaseSet zero = geometric_phases(0.0, kCounting);
    CHECK(zero.phi12 == 0.0);
    CHECK(zero.phi456 == 0.0);

    const PhaseSet unit = geometric_phases(1.0, kCounting);
    CHECK(unit.phi12 == doctest::Approx(3.0));
    CHECK(unit.phi15 == doctest::Approx(6.0));
    CHECK(unit.phi34 == doctest::Approx(7.0));
    CHECK(unit.phi47 == doctest::Approx(11.0));
    CHECK(unit.phi136 == doctest::Approx(10.0));
    CHECK(unit.phi146 == doctest::Approx(11.0));
    CHECK(unit.phi167 == doctest::Approx(14.0));
    CHECK(unit.phi246 == doctest::Approx(12.0));
    CHECK(unit.phi456 == doctest::Approx(15.0));

    CHECK(geometric_phases(2.0, RingGeometry{9, 9, 9, 1, 2, 3, 9}).phi456 ==
          doctest::Approx(12.0));
}

TEST_CASE("effective path lengths") {
    const EffectivePathLengths uniform =
        effective_path_lengths(RingGeometry{1, 1, 1, 1, 1, 1, 1});
    CHECK(uniform.up_up == doctest::Approx(4.0));
    CHECK(uniform.down_down == doctest::Approx(4.0));

    const EffectivePathLengths counting = effective_path_lengths(kCounting);
    CHECK(counting.up_up == doctest::Approx(12.0));
    CHECK(counting.up_down == doctest::Approx(14.0));
    CHECK(counting.down_up == doctest::Approx(13.0));
    CHECK(counting.down_down == doctest::Approx(15.0));
}

TEST_CASE("phase identities hold for any geometry") {
    CHECK(verify_phase_identities(1.0, kCounting));
    CHECK(verify_phase_identities(0.0, kCounting));

    std::mt19937_64 rng(23);
    for (int i = 0; i < 1000; ++i) {
        CHECK(verify_phase_identities(std::numbers::pi, testing::random_geometry(rng)));
    }
}

TEST_CASE("reduced scattering matrix entries") {
    const PhaseSet zero{};

    const ReducedSMatrix transparent =
        reduced_scattering_matrix({kTransparent, kTransparent}, zero);
    CHECK(std::abs(transparent.rows[0][0] - Complex{1.0, 0.0}) < kAlgebraTol);
    CHECK(std::abs(transparent.rows[1][1] - Complex{1.0, 0.0}) < kAlgebraTol);
    for (std::size_t r = 0; r < 6; ++r) {
        for (std::size_t c = 0; c < 2; ++c) {
            if ((r == 0 && c == 0) || (r == 1 && c == 1)) continue;
            CHECK(std::abs(transparent.rows[r][c]) < kAlgebraTol);
        }
    }

    const ReducedSMatrix tunnel = reduced_scattering_matrix({kFullTunnel, kFullTunnel}, zero);
    CHECK(std::abs(tunnel.rows[2][0] - Complex{-1.0, 0.0}) < kAlgebraTol);
    CHECK(std::abs(tunnel.rows[3][1] - Complex{1.0, 0.0}) < kAlgebraTol);
    for (std::size_t r = 0; r < 6; ++r) {
        for (std::size_t c = 0; c < 2; ++c) {
            if ((r == 2 && c == 0) || (r == 3 && c == 1)) continue;
            CHECK(std::abs(tunnel.rows[r][c]) < kAlgebraTol);
        }
    }

    const ReducedSMatrix balanced =
        reduced_scattering_matrix({kBeamsplitter, kBeamsplitter}, zero);
    CHECK(balanced.column_squared_norm(0) == doctest::Approx(1.0).epsilon(kAlgebraTol));
    CHECK(balanced.column_squared_norm(1) == doctest::Approx(1.0).epsilon(kAlgebraTol));
    CHECK(std::abs(balanced.rows[0][1] - Complex{0.5, 0.0}) < kAlgebraTol);
}

TEST_CASE("reduced scattering matrix rejects non-unitary junctions") {
    JunctionAmplitudes broken = kBeamsplitter;
    broken.p = Complex{0.5, 0.0};
    CHECK_THROWS_AS(reduced_scattering_matrix({broken, kBeamsplitter}, PhaseSet{}),
                    UnitarityError);
}

TEST_CASE("column norms stay unit for random junctions and phases") {
    std::mt19937_64 rng(29);
    for (int i = 0; i < 1000; ++i) {
        const JunctionPair pair{testing::random_junction(rng), testing::random_junction(rng)};
        const PhaseSet phases =
            geometric_phases(testing::random_momentum(rng), testing::random_geometry(rng));
        const ReducedSMatrix s = reduced_scattering_matrix(pair, phases);
        CHECK(s.column_squared_norm(0) == doctest::Approx(1.0).epsilon(kAlgebraTol));
        CHECK(s.column_squared_norm(1) == doctest::Approx(1.0).epsilon(kAlgebraTol));
    }
}

TEST_CASE("two-particle amplitudes, phase form") {
    const PhaseSet zero{};
    const double quarter_sqrt2 = 1.0 / (2.0 * std::numbers::sqrt2);

    const RingAmplitudes phi = two_particle_amplitudes_phase_form(
        {kBeamsplitter, kBeamsplitter}, zero);
    CHECK(std::abs(phi.up_up - Complex{quarter_sqrt2, 0.0}) < kAlgebraTol);
    CHECK(std::abs(phi.down_down - Complex{quarter_sqrt2, 0.0}) < kAlgebraTol);
    CHECK(std::abs(phi.down_up) < kAlgebraTol);
    CHECK(std::abs(phi.up_down) < kAlgebraTol);

    const RingAmplitudes psi = two_particle_amplitudes_phase_form(
        {kPreserveTunnel, kPreserveTunnel}, zero);
    CHECK(std::abs(psi.up_up) < kAlgebraTol);
    CHECK(std::abs(psi.down_down) < kAlgebraTol);
    CHECK(std::abs(psi.down_up - Complex{0.5, 0.0}) < kAlgebraTol);
    CHECK(std::abs(psi.up_down - Complex{0.5, 0.0}) < kAlgebraTol);

    const RingAmplitudes dead = two_particle_amplitudes_phase_form(
        {kTransparent, kTransparent}, zero);
    CHECK(dead.squared_sum() < kZeroThreshold);
}

TEST_CASE("flip-only a-junction kills the up-up amplitude") {
    const JunctionAmplitudes flip_only{Complex{0.0, 0.0}, Complex{0.0, 0.0},
                                       Complex{1.0, 0.0}};
    const JunctionAmplitudes other{Complex{0.6, 0.0}, Complex{0.48, 0.0}, Complex{0.64, 0.0}};
    const double k = 0.7;
    const RingAmplitudes amp =
        two_particle_amplitudes_pathlength_form({flip_only, other}, k, kCounting);
    CHECK(std::abs(amp.up_up) < kAlgebraTol);
    // First term of up_down carries p_a = 0; only the second survives.
    const EffectivePathLengths len = effective_path_lengths(kCounting);
    const Complex second_term = std::conj(flip_only.f) * other.f * other.p *
                                std::conj(flip_only.t) *
                                std::polar(1.0, -k * (len.up_down + 2.0 * kCounting.l6));
    CHECK(std::abs(amp.up_down - second_term) < kAlgebraTol);
}

TEST_CASE("path-length and phase forms agree") {
    const PhaseSet zero{};
    const RingAmplitudes phase_form =
        two_particle_amplitudes_phase_form({kBeamsplitter, kBeamsplitter}, zero);
    const RingAmplitudes path_form = two_particle_amplitudes_pathlength_form(
        {kBeamsplitter, kBeamsplitter}, 0.0, kCounting);
    CHECK(amplitude_gap(phase_form, path_form) < kAlgebraTol);

    std::mt19937_64 rng(31);
    for (int i = 0; i < 1000; ++i) {
        const JunctionPair pair{testing::random_junction(rng), testing::random_junction(rng)};
        const double k = testing::random_momentum(rng);
        const RingGeometry geom = testing::random_geometry(rng);
        const RingAmplitudes lhs =
            two_particle_amplitudes_phase_form(pair, geometric_phases(k, geom));
        const RingAmplitudes rhs = two_particle_amplitudes_pathlength_form(pair, k, geom);
        CHECK(amplitude_gap(lhs, rhs) < kAlgebraTol);
    }
}

TEST_CASE("normalization") {
    RingAmplitudes raw{Complex{1.0, 0.0}, Complex{1.0, 0.0}, Complex{0.0, 0.0},
                       Complex{0.0, 0.0}, 1.0};
    const RingAmplitudes unit = normalize_amplitudes(raw);
    CHECK(std::abs(unit.up_up - Complex{kInvSqrt2, 0.0}) < kAlgebraTol);
    CHECK(std::abs(unit.down_down - Complex{kInvSqrt2, 0.0}) < kAlgebraTol);
    CHECK(unit.squared_sum() == doctest::Approx(1.0).epsilon(kAlgebraTol));

    const double quarter_sqrt2 = 1.0 / (2.0 * std::numbers::sqrt2);
    RingAmplitudes small{Complex{quarter_sqrt2, 0.0}, Complex{quarter_sqrt2, 0.0},
                         Complex{0.0, 0.0}, Complex{0.0, 0.0}, 1.0};
    const RingAmplitudes rescaled = normalize_amplitudes(small);
    CHECK(std::abs(rescaled.up_up - Complex{kInvSqrt2, 0.0}) < kAlgebraTol);
    CHECK(rescaled.norm_factor == doctest::Approx(2.0));

    RingAmplitudes zero{{}, {}, {}, {}, 1.0};
    CHECK_THROWS_AS(normalize_amplitudes(zero), DegenerateStateError);
}

TEST_CASE("ring state") {
    RingConfig config;
    config.junctions = {kBeamsplitter, kBeamsplitter};
    config.geometry = kCounting;
    config.physics = {1.0, 0.0, 0.0, 0.0};  // K = 0

    const SpinState phi = ring_state(config);
    CHECK(std::abs(phi[0] - Complex{kInvSqrt2, 0.0}) < kAlgebraTol);
    CHECK(std::abs(phi[3] - Complex{kInvSqrt2, 0.0}) < kAlgebraTol);
    CHECK(std::abs(phi[1]) < kAlgebraTol);
    CHECK(std::abs(phi[2]) < kAlgebraTol);

    config.junctions = {kPreserveTunnel, kPreserveTunnel};
    const SpinState psi = ring_state(config);
    CHECK(std::abs(psi[1] - Complex{kInvSqrt2, 0.0}) < kAlgebraTol);
    CHECK(std::abs(psi[2] - Complex{kInvSqrt2, 0.0}) < kAlgebraTol);

    config.junctions = {kTransparent, kTransparent};
    CHECK_THROWS_AS(ring_state(config), DegenerateStateError);
}

TEST_CASE("ring state norm is unit for random configurations") {
    std::mt19937_64 rng(37);
    for (int i = 0; i < 200; ++i) {
        RingConfig config;
        config.junctions = {testing::random_junction(rng), testing::random_junction(rng)};
        config.geometry = testing::random_geometry(rng);
        config.physics = {1.0, 0.0, testing::random_momentum(rng), 0.0};
        try {
            CHECK(ring_state(config).is_normalized());
        } catch (const DegenerateStateError&) {
            // legal outcome for (near-)transparent junction draws
        }
    }
}

TEST_CASE("amplitudes depend only on K times length products") {
    std::mt19937_64 rng(41);
    const double lambda = 4.0;  // power of two keeps the scaling exact
    for (int i = 0; i < 100; ++i) {
        const JunctionPair pair{testing::random_junction(rng), testing::random_junction(rng)};
        const double k = testing::random_momentum(rng);
        RingGeometry geom = testing::random_geometry(rng);
        RingGeometry scaled = geom;
        for (double* l : {&scaled.l1, &scaled.l2, &scaled.l3, &scaled.l4, &scaled.l5,
                          &scaled.l6, &scaled.l7}) {
            *l *= lambda;
        }
        const RingAmplitudes base = two_particle_amplitudes_pathlength_form(pair, k, geom);
        const RingAmplitudes rescaled =
            two_particle_amplitudes_pathlength_form(pair, k / lambda, scaled);
        CHECK(amplitude_gap(base, rescaled) == 0.0);
    }
}
