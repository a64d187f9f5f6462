#include <doctest.h>

#include <cmath>

#include "wgqed/bic.hpp"
#include "wgqed/hamiltonian.hpp"

using namespace wgqed;

TEST_SUITE("bic") {

TEST_CASE("existence conditions") {
    CHECK(bic_exists(2, pi / 2, 0.0) == std::pair<bool, int>{true, 1});
    CHECK(bic_exists(4, pi / 2, pi) == std::pair<bool, int>{true, 2});
    CHECK(bic_exists(2, pi / 2, 2 * pi).first);  // phases mod 2 pi
    for (int d = 1; d <= 6; ++d)
        CHECK_FALSE(bic_exists(d, pi / 2, pi / 2).first);
    CHECK_FALSE(bic_exists(1, pi / 2, 0.0).first);  // k_a d = pi/2, not a pi multiple
    CHECK_FALSE(bic_exists(2, pi / 2, pi).first);   // parity mismatch
    CHECK_FALSE(bic_exists(2, pi / 2, 0.1).first);
}

TEST_CASE("analytic state for the d=2 reference configuration") {
    const auto cfg = make_two_leg_config(2, 0.0);
    const auto bic = build_bic(cfg);
    CHECK(bic.m == 1);
    CHECK(bic.energy == 0.0);
    CHECK(bic.eps_pop == doctest::Approx(1.0 / 1.04).epsilon(1e-12));

    double field_norm = 0;
    for (const auto& c : bic.profile) field_norm += std::norm(c);
    CHECK(bic.eps_pop + field_norm == doctest::Approx(1.0).epsilon(1e-12));

    const int x1 = cfg.coupling_points[0].x;
    const int x2 = cfg.coupling_points[1].x;
    CHECK(bic.profile[x1] == Complex(0));
    CHECK(bic.profile[x2] == Complex(0));
    for (int x = 0; x < cfg.N; ++x)
        if (x < x1 || x > x2) CHECK(bic.profile[x] == Complex(0));
    // m = 1: single antinode between the legs
    CHECK(std::abs(bic.profile[x1 + 1]) > 0);
}

TEST_CASE("no bound state outside the existence set") {
    CHECK_THROWS_WITH_AS(build_bic(make_two_leg_config(2, 0.1)),
                         "no bound state at these phases", NumericsError);
}

TEST_CASE("the analytic state is an exact lattice eigenvector") {
    for (auto [d, phi_c] : {std::pair<int, double>{2, 0.0}, {4, pi}}) {
        const auto cfg = make_two_leg_config(d, phi_c);
        const auto bic = build_bic(cfg);
        const auto H = build_hamiltonian(cfg);
        Eigen::VectorXcd psi(cfg.N + 1);
        psi(0) = std::sqrt(bic.eps_pop);
        for (int x = 0; x < cfg.N; ++x) psi(1 + x) = bic.profile[x];
        CHECK((H * psi).norm() <= 1e-12);  // energy omega_a = 0
    }
}

TEST_CASE("atomic weight does not depend on phi_1") {
    SystemConfig cfg = make_two_leg_config(2, 0.0);
    for (auto& cp : cfg.coupling_points) cp.phi += 0.7;
    const auto bic = build_bic(cfg);
    CHECK(bic.eps_pop == doctest::Approx(1.0 / 1.04).epsilon(1e-12));
    // profile rotated by the global phase, magnitudes unchanged
    const auto ref = build_bic(make_two_leg_config(2, 0.0));
    for (int x = 0; x < cfg.N; ++x)
        CHECK(std::abs(bic.profile[x]) == doctest::Approx(std::abs(ref.profile[x])).epsilon(1e-12));
}

TEST_CASE("numerical verification finds the bound state") {
    const auto report = verify_bic_numerically(make_two_leg_config(2, 0.0), 1e-6);
    CHECK(report.found);
    CHECK(report.eigenvalue_error <= 1e-8);
    CHECK(report.overlap_defect <= 1e-6);
    CHECK(report.exterior_weight <= 1e-10);

    const auto d4 = verify_bic_numerically(make_two_leg_config(4, pi), 1e-6);
    CHECK(d4.found);
    CHECK(d4.overlap_defect <= 1e-6);
}

TEST_CASE("detuned phase destroys the bound state") {
    const auto report = verify_bic_numerically(make_two_leg_config(2, 0.1), 1e-6);
    CHECK_FALSE(report.found);
}

TEST_CASE("decoupled atom is the trivial bound state") {
    SystemConfig cfg = make_two_leg_config(2, 0.0);
    cfg.g = 0.0;
    const auto report = verify_bic_numerically(cfg, 1e-6);
    CHECK(report.found);
    CHECK(report.overlap_defect <= 1e-12);
}

}  // TEST_SUITE
