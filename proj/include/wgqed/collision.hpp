#pragma once

#include <utility>

#include "wgqed/config.hpp"
#include "wgqed/trajectory.hpp"

namespace wgqed {

/// Per-collision parameters. The per-bin coupling is kappa = g / sqrt(v dt),
/// calibrated so the delay-free limit reproduces the amplitude rate Gamma/2.
struct CollisionSpec {
    double g = 0.2;
    double v = 2.0;
    double phi_c = 0;
    double phi_wg = 0;
    int ell = 1;      // delay in bins, t_d / dt
    double dt = 0.01; // collision duration
    int legs = 2;     // 1 or 2 coupling points

    double kappa() const;
    static CollisionSpec from_config(const SystemConfig& cfg, double dt);
};

/// Atom plus right/left time-bin ladders in the one-excitation sector.
/// Bin n of the right chain collides at steps n and n+ell; bin n of the left
/// chain at steps n-ell and n.
struct BinChainState {
    Complex eps = 1.0;
    CVec right_bins;
    CVec left_bins;
    long step_index = 0;

    static BinChainState make(const CollisionSpec& spec, long n_steps);
    double total_norm() const;
};

/// One collision: the exact unitary e^{-i H_n dt} restricted to the span of
/// the atom and the (up to four) participating bins, then the chain shift.
void collide_step(BinChainState& state, const CollisionSpec& spec);

/// Full collision-model trajectory; dt must divide t_d.
Trajectory run_collisions(const SystemConfig& cfg, double t_max, double dt);

/// Deviation of the bath beam-splitter remapping from unitarity,
/// ||M M^dag - I|| in the max-entry norm; analytically |cos(phi_c)|.
double unitarity_deviation(double phi_c, double phi_wg);

/// Right/left collision coefficients (1 - i e^{i phi_c}, 1 + i e^{i phi_c})
/// in the negligible-delay, phi_wg = pi/2 reduction.
std::pair<Complex, Complex> chirality_coefficients(double phi_c);

struct EmissionFractions {
    double forward = 0;
    double backward = 0;
    double interior = 0;  // between the coupling points (lattice only)
    double atom_pop = 0;
};

/// Fraction of the emitted norm on either side of the coupling region.
/// Requires a trajectory with field snapshots and |eps|^2 < 1e-3 at the end.
EmissionFractions emission_fractions(const Trajectory& traj, const SystemConfig& cfg);
EmissionFractions emission_fractions(const BinChainState& state);

}  // namespace wgqed
