#pragma once

#include "wgqed/config.hpp"
#include "wgqed/types.hpp"

namespace wgqed {

/// Bound state in the continuum: analytic eigenstate at E = omega_a with the
/// photonic part confined strictly between the coupling points.
struct BicState {
    bool exists = false;
    int m = 0;            // order, d = m pi / k_a
    double eps_pop = 0;   // |<e|BIC>|^2 = 1 / (1 + Gamma t_d / 2)
    CVec profile;         // c_x on the N sites, zero outside (x1, x2)
    double energy = 0;    // = omega_a
};

/// Existence test: k_a d = m pi (integer m >= 1, within 1e-9) and
/// phi_c = (m+1) pi (mod 2 pi).
std::pair<bool, int> bic_exists(int d, double k_a, double phi_c);

/// Analytic BIC for a two-leg config; errors when none exists.
BicState build_bic(const SystemConfig& cfg);

struct BicReport {
    bool found = false;
    double eigenvalue_error = 0;  // |E - omega_a| of the best candidate
    double overlap_defect = 0;    // 1 - |<psi_num|psi_analytic>|^2
    double exterior_weight = 0;   // field weight outside [x1, x2]
};

/// Diagonalizes the lattice Hamiltonian and searches for an eigenstate within
/// tol of omega_a with vanishing exterior field weight. When the analytic BIC
/// exists its overlap defect is reported; otherwise found=false signals the
/// absence of a bound state.
BicReport verify_bic_numerically(const SystemConfig& cfg, double tol);

}  // namespace wgqed
