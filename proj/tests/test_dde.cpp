#include <doctest.h>

#include <cmath>

#include "wgqed/config.hpp"
#include "wgqed/dde.hpp"
#include "wgqed/lattice.hpp"
#include "wgqed/markov.hpp"
#include "wgqed/trajectory.hpp"

using namespace wgqed;

TEST_SUITE("dde") {

TEST_CASE("two-leg delay coefficient") {
    const auto spec = DdeSpec::two_leg(0.08, 0.4, 1.1, 2.0);
    const auto b = spec.delay_coefficients();
    REQUIRE(b.size() == 1);
    const Complex want = 0.5 * 0.08 * std::cos(0.4) * std::exp(Complex(0, 1.1));
    CHECK(std::abs(b[0] - want) < 1e-15);
}

TEST_CASE("phi_c = pi/2 gives a pure exponential for any delay") {
    for (double t_d : {0.5, 2.5, 10.0}) {
        const auto spec = DdeSpec::two_leg(0.08, pi / 2, 0.83, t_d);
        const auto traj = integrate(spec, 20.0);
        double worst = 0;
        for (std::size_t i = 0; i < traj.times.size(); ++i)
            worst = std::max(worst, std::abs(traj.eps[i] -
                                             Complex(std::exp(-0.04 * traj.times[i]))));
        CHECK(worst <= 1e-8);
    }
}

TEST_CASE("before the delay any phases decay at the local rate") {
    const auto spec = DdeSpec::two_leg(0.3, 0.2, pi, 4.0);
    const auto traj = integrate(spec, 3.9);
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const double t = traj.times[i];
        CHECK(std::abs(traj.eps[i] - Complex(std::exp(-0.15 * t))) < 1e-10);
    }
}

TEST_CASE("bound-state plateau at phi_wg = pi, phi_c = 0") {
    // Gamma t_d = 0.08: asymptote 1/1.04
    const auto spec = DdeSpec::two_leg(0.08, 0.0, pi, 1.0);
    const auto traj = integrate(spec, 500.0);
    CHECK(std::abs(traj.eps.back()) ==
          doctest::Approx(1.0 / 1.04).epsilon(1e-4));
}

TEST_CASE("asymptotic amplitude selection rules") {
    CHECK(asymptotic_amplitude(DdeSpec::two_leg(0.08, 0.0, pi, 1.0)) ==
          doctest::Approx(1.0 / 1.04).epsilon(1e-14));
    CHECK(asymptotic_amplitude(DdeSpec::two_leg(0.08, pi, 2 * pi, 2.0)) ==
          doctest::Approx(1.0 / 1.08).epsilon(1e-14));
    CHECK(asymptotic_amplitude(DdeSpec::two_leg(0.08, pi / 2, pi, 1.0)) == 0.0);
    CHECK(asymptotic_amplitude(DdeSpec::two_leg(0.08, 0.0, 1.3, 1.0)) == 0.0);
    // parity mismatch: phi_wg = pi wants phi_c = 0 mod 2pi, not pi
    CHECK(asymptotic_amplitude(DdeSpec::two_leg(0.08, pi, pi, 1.0)) == 0.0);
}

TEST_CASE("Laplace transform closed form") {
    const auto markov = DdeSpec::two_leg(0.08, pi / 2, 0.7, 1.0);
    const Complex s(0.3, 0.1);
    CHECK(std::abs(laplace_transform_amplitude(markov, s) - 1.0 / (s + 0.04)) < 1e-14);

    // final-value theorem reproduces the asymptote
    const auto bic = DdeSpec::two_leg(0.08, 0.0, pi, 1.0);
    const Complex tiny(1e-9, 0.0);
    CHECK(std::abs(tiny * laplace_transform_amplitude(bic, tiny)) ==
          doctest::Approx(1.0 / 1.04).epsilon(1e-6));

    // pole detection: at phi_c = 0, phi_wg = pi the denominator vanishes at s = 0
    CHECK_THROWS_AS(laplace_transform_amplitude(bic, Complex(0, 0)), NumericsError);
}

TEST_CASE("Laplace transform agrees with trajectory quadrature") {
    const auto spec = DdeSpec::two_leg(0.08, 0.6, pi, 1.0);
    const auto traj = integrate(spec, 400.0);
    const Complex s(0.05, 0.0);
    Complex integral = 0;
    const double h = traj.times[1] - traj.times[0];
    for (std::size_t i = 0; i + 1 < traj.times.size(); ++i)
        integral += 0.5 * h *
                    (std::exp(-s * traj.times[i]) * traj.eps[i] +
                     std::exp(-s * traj.times[i + 1]) * traj.eps[i + 1]);
    CHECK(std::abs(integral - laplace_transform_amplitude(spec, s)) < 1e-4);
}

TEST_CASE("fourth-order convergence in the substep count") {
    const auto spec = DdeSpec::two_leg(0.5, 0.4, 1.0, 1.0);
    const Complex ref = integrate(spec, 5.0, 800).eps.back();
    const double e1 = std::abs(integrate(spec, 5.0, 50).eps.back() - ref);
    const double e2 = std::abs(integrate(spec, 5.0, 100).eps.back() - ref);
    CHECK(e1 / e2 > 10.0);
    CHECK(e1 / e2 < 24.0);
}

TEST_CASE("amplitude never exceeds one") {
    const auto spec = DdeSpec::two_leg(0.4, 0.0, 0.0, 1.0);  // constructive feedback
    const auto traj = integrate(spec, 50.0);
    for (const auto& e : traj.eps) CHECK(std::abs(e) <= 1.0 + 1e-12);
}

TEST_CASE("solved Markov phases kill every delay coefficient") {
    for (int L = 3; L <= 5; ++L) {
        const auto pv = solve_markov_phases(L);
        DdeSpec spec;
        spec.Gamma = 0.08;
        spec.phi_wg = 1.234;
        spec.t_d = 1.0;
        spec.phases = pv.phases;
        for (const auto& b : spec.delay_coefficients()) CHECK(b == Complex(0));

        const auto traj = integrate(spec, 10.0);
        const double rate = spec.local_amplitude_rate();
        for (std::size_t i = 0; i < traj.times.size(); ++i)
            CHECK(std::abs(traj.eps[i] - Complex(std::exp(-rate * traj.times[i]))) <= 1e-12);
    }
}

TEST_CASE("dde tracks the lattice within the validity window") {
    // the delay equation is Markovian from t = 0 while the lattice has a
    // quadratic onset from the finite band, so populations differ by up to
    // about Gamma/(4J) = 2e-2 near t = 0.5; configurations with strong
    // constructive feedback (phi_wg near pi) accumulate a little more
    const auto cfg = make_two_leg_config(3, 0.9);
    const auto lat = evolve(cfg, 20.0);
    const auto dde = integrate(DdeSpec::from_config(cfg), 20.0);
    CHECK(max_population_deviation(lat, dde, lat.t_max_valid) <= 2.5e-2);

    const auto cfg2 = make_two_leg_config(2, 0.0);
    const auto lat2 = evolve(cfg2, 20.0);
    const auto dde2 = integrate(DdeSpec::from_config(cfg2), 20.0);
    CHECK(max_population_deviation(lat2, dde2, lat2.t_max_valid) <= 4e-2);
}

TEST_CASE("input validation") {
    const auto spec = DdeSpec::two_leg(0.08, 0.0, pi, 1.0);
    CHECK_THROWS_AS(integrate(spec, -1.0), ConfigError);
    CHECK_THROWS_AS(integrate(spec, 10.0, 10), ConfigError);
}

}  // TEST_SUITE
