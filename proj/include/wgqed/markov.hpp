#pragma once

#include "wgqed/trajectory.hpp"
#include "wgqed/types.hpp"

namespace wgqed {

/// Coupling phases phi_1..phi_L with the residuals of the Markovianity
/// conditions sum_{j=1}^{L-n} cos(phi_{n+j} - phi_j) = 0, n = 1..L-1.
struct PhaseVector {
    std::vector<double> phases;
    std::vector<double> residuals;
    bool is_markovian = false;
};

/// Master-equation population rate gamma = Gamma [1 + cos(phi_c) cos(k_a d)].
double lindblad_rate(double Gamma, double phi_c, double k_a, int d);

/// Residual of condition n (1-based) for each n = 1..L-1.
std::vector<double> markov_residuals(const std::vector<double>& phases);

/// Canonical solution of the phase conditions for L legs: phi_1 = 0,
/// phi_L = pi/2 from the n = L-1 condition, remaining phases by cyclic 1-D
/// root finds until every residual is <= 1e-12. Tie-break: root of smallest
/// |phi| in (-pi, pi], positive on exact ties.
PhaseVector solve_markov_phases(int L);

/// max_t | |eps(t)| - e^{-rate t} | over the trajectory's validity window.
/// `amplitude_rate` is an amplitude (not population) rate.
double markovianity_deviation(const Trajectory& traj, double amplitude_rate);

}  // namespace wgqed
