#pragma once

#include <Eigen/Dense>

#include "wgqed/config.hpp"
#include "wgqed/types.hpp"

namespace wgqed {

/// Single-excitation-sector Hamiltonian, dimension N+1.
/// Index 0 is the atom, indices 1..N the lattice sites. The atom row carries
/// g e^{-i phi_j} at the coupling sites; the columns the conjugate.
Eigen::MatrixXcd build_hamiltonian(const SystemConfig& cfg);

/// Momentum-space coupling g_k = g/sqrt(N) sum_j e^{i(phi_j + k x_j)}.
Complex coupling_in_momentum_space(const SystemConfig& cfg, double k);

/// Brillouin grid momenta k = 2 pi n / N, n = 0..N-1 (mapped to (-pi, pi]).
std::vector<double> brillouin_grid(int N);

}  // namespace wgqed
