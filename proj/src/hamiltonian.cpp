#include "wgqed/hamiltonian.hpp"

#include <cmath>

namespace wgqed {

Eigen::MatrixXcd build_hamiltonian(const SystemConfig& cfg) {
    cfg.validate();
    const int N = cfg.N;
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(N + 1, N + 1);
    H(0, 0) = cfg.omega_a;
    for (int x = 0; x + 1 < N; ++x) {
        H(1 + x, 1 + x + 1) = -cfg.J;
        H(1 + x + 1, 1 + x) = -cfg.J;
    }
    if (cfg.boundary == Boundary::Ring && N > 2) {
        H(1 + N - 1, 1) = -cfg.J;
        H(1, 1 + N - 1) = -cfg.J;
    }
    for (const auto& cp : cfg.coupling_points) {
        const Complex c = cfg.g * std::exp(Complex(0, -cp.phi));
        H(0, 1 + cp.x) = c;
        H(1 + cp.x, 0) = std::conj(c);
    }
    return H;
}

Complex coupling_in_momentum_space(const SystemConfig& cfg, double k) {
    Complex sum = 0;
    for (const auto& cp : cfg.coupling_points)
        sum += std::exp(Complex(0, cp.phi + k * cp.x));
    return cfg.g / std::sqrt(static_cast<double>(cfg.N)) * sum;
}

std::vector<double> brillouin_grid(int N) {
    std::vector<double> ks(N);
    for (int n = 0; n < N; ++n) {
        double k = 2.0 * pi * n / N;
        if (k > pi) k -= 2.0 * pi;
        ks[n] = k;
    }
    return ks;
}

}  // namespace wgqed
