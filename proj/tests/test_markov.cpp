#include <doctest.h>

#include <cmath>

#include "wgqed/config.hpp"
#include "wgqed/dde.hpp"
#include "wgqed/markov.hpp"

using namespace wgqed;

TEST_SUITE("markov") {

TEST_CASE("master-equation rate formula") {
    const double G = 0.08;
    CHECK(lindblad_rate(G, pi / 2, pi / 2, 1) == doctest::Approx(G).epsilon(1e-12));
    CHECK(lindblad_rate(G, pi / 2, pi / 2, 5) == doctest::Approx(G).epsilon(1e-12));
    CHECK(lindblad_rate(G, 0.0, pi / 2, 0) == doctest::Approx(2 * G).epsilon(1e-12));
    CHECK(lindblad_rate(G, 0.0, pi / 2, 2) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("rate is even in its angles and bounded") {
    const double G = 0.08;
    for (double phi : {0.3, 1.1, 2.9}) {
        CHECK(lindblad_rate(G, phi, 0.7, 3) ==
              doctest::Approx(lindblad_rate(G, -phi, 0.7, 3)).epsilon(1e-12));
        CHECK(lindblad_rate(G, phi, 0.7, 3) ==
              doctest::Approx(lindblad_rate(G, phi, -0.7, 3)).epsilon(1e-12));
        for (int d = 0; d <= 6; ++d) {
            const double r = lindblad_rate(G, phi, 0.7, d);
            CHECK(r >= -1e-15);
            CHECK(r <= 2 * G + 1e-15);
        }
    }
}

TEST_CASE("known residual vectors") {
    auto near_zero = [](const std::vector<double>& res) {
        for (double r : res) CHECK(std::abs(r) <= 1e-12);
    };
    near_zero(markov_residuals({0.0, pi / 2}));
    near_zero(markov_residuals({0.0, -pi / 4, pi / 2}));
    near_zero(markov_residuals({0.0, pi / 2, pi, pi / 2}));

    const auto bad = markov_residuals({0.0, 0.0});
    REQUIRE(bad.size() == 1);
    CHECK(bad[0] == doctest::Approx(1.0));
}

TEST_CASE("canonical solutions for small L") {
    const auto l2 = solve_markov_phases(2);
    CHECK(l2.phases[1] == doctest::Approx(pi / 2).epsilon(1e-12));

    const auto l3 = solve_markov_phases(3);
    CHECK(l3.phases[0] == 0.0);
    CHECK(l3.phases[1] == doctest::Approx(-pi / 4).epsilon(1e-12));
    CHECK(l3.phases[2] == doctest::Approx(pi / 2).epsilon(1e-12));

    const auto l4 = solve_markov_phases(4);
    CHECK(l4.phases[1] == doctest::Approx(pi / 2).epsilon(1e-12));
    CHECK(l4.phases[2] == doctest::Approx(pi).epsilon(1e-12));
    CHECK(l4.phases[3] == doctest::Approx(pi / 2).epsilon(1e-12));
}

TEST_CASE("solutions exist up to L = 8 with tiny residuals") {
    for (int L = 2; L <= 8; ++L) {
        const auto pv = solve_markov_phases(L);
        REQUIRE(pv.phases.size() == static_cast<std::size_t>(L));
        REQUIRE(pv.residuals.size() == static_cast<std::size_t>(L - 1));
        CHECK(pv.is_markovian);
        CHECK(pv.phases[0] == 0.0);
        for (double r : pv.residuals) CHECK(std::abs(r) <= 1e-12);
    }
    CHECK_THROWS_AS(solve_markov_phases(1), ConfigError);
}

TEST_CASE("markovianity deviation on the exact DDE solution") {
    const auto spec = DdeSpec::two_leg(0.08, pi / 2, 0.9, 2.0);
    const auto traj = integrate(spec, 20.0);
    CHECK(markovianity_deviation(traj, 0.04) <= 1e-8);

    // a plateaued trajectory deviates from the decaying reference by roughly
    // the asymptote itself
    const auto bic = integrate(DdeSpec::two_leg(0.08, 0.0, pi, 1.0), 200.0);
    CHECK(markovianity_deviation(bic, 0.04) >= 1.0 / 1.04 - 0.05);
}

}  // TEST_SUITE
