#include <doctest.h>

#include <cmath>

#include "wgqed/hamiltonian.hpp"

using namespace wgqed;

TEST_SUITE("hamiltonian") {

TEST_CASE("free ring dispersion, N=4") {
    SystemConfig cfg;
    cfg.N = 4;
    cfg.g = 0.0;
    cfg.coupling_points = {{0, 0.0}};
    const auto H = build_hamiltonian(cfg);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
    // atom decoupled at 0 plus lattice {-2, 0, 0, 2} = -2 cos k, k in {0, +-pi/2, pi}
    const auto& E = es.eigenvalues();
    REQUIRE(E.size() == 5);
    CHECK(E(0) == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(E(1) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(E(2) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(E(3) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(E(4) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("atom row carries conjugated coupling phases") {
    const auto cfg = make_two_leg_config(2, pi / 2);
    const auto H = build_hamiltonian(cfg);
    const int x1 = cfg.coupling_points[0].x;
    const int x2 = cfg.coupling_points[1].x;
    CHECK(std::abs(H(0, 1 + x1) - Complex(0.2, 0.0)) < 1e-15);
    CHECK(std::abs(H(0, 1 + x2) - Complex(0.0, -0.2)) < 1e-12);
}

TEST_CASE("exactly Hermitian") {
    const auto cfg = make_multi_leg_config(3, {0.0, 0.7, -1.2});
    const auto H = build_hamiltonian(cfg);
    CHECK((H - H.adjoint()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("momentum-space coupling symmetry and chirality") {
    // real couplings: time-reversal symmetric, |g_k| = |g_{-k}|
    const auto sym = make_two_leg_config(3, 0.0, 88);
    for (double k : brillouin_grid(88))
        CHECK(std::abs(coupling_in_momentum_space(sym, k)) ==
              doctest::Approx(std::abs(coupling_in_momentum_space(sym, -k))).epsilon(1e-12));

    // complex phase breaks the symmetry at the resonant momentum
    const auto chi = make_two_leg_config(3, pi / 6, 88);
    const double k_a = pi / 2;
    CHECK(std::abs(coupling_in_momentum_space(chi, k_a)) >
          std::abs(coupling_in_momentum_space(chi, -k_a)));
}

TEST_CASE("one propagation direction decouples at d=1, phi_c=pi/2") {
    // g_k = g/sqrt(N) e^{i k x_1} (1 + e^{i(pi/2 + k)}) vanishes at k = +pi/2
    const auto cfg = make_two_leg_config(1, pi / 2, 88);
    const double k_a = pi / 2;
    CHECK(std::abs(coupling_in_momentum_space(cfg, k_a)) < 1e-14);
    CHECK(std::abs(coupling_in_momentum_space(cfg, -k_a)) ==
          doctest::Approx(2.0 * 0.2 / std::sqrt(88.0)).epsilon(1e-12));
}

TEST_CASE("Parseval: sum |g_k|^2 = L g^2") {
    const auto cfg = make_multi_leg_config(2, {0.0, 0.9, 2.1}, 88);
    double total = 0;
    for (double k : brillouin_grid(88))
        total += std::norm(coupling_in_momentum_space(cfg, k));
    CHECK(total == doctest::Approx(3 * 0.2 * 0.2).epsilon(1e-12));
}

}  // TEST_SUITE
