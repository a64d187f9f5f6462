#pragma once

#include "wgqed/config.hpp"
#include "wgqed/trajectory.hpp"

namespace wgqed {

struct EvolveOptions {
    double dt = 0.01;                 // in units of 1/J
    bool store_snapshots = false;
    double snapshot_interval = 0.1;   // snapshot cadence when enabled
    double norm_tolerance = 1e-9;     // per-sample drift bound; dt halves until met
};

/// Exact one-excitation evolution, initial state |e>|0>. Fixed-step 4th-order
/// integration of i d/dt psi = H psi, matrix-free. Norm drift beyond the
/// tolerance triggers step halving and a rerun.
Trajectory evolve(const SystemConfig& cfg, double t_max, EvolveOptions opts = {});

/// Cross-check path: full dense eigendecomposition, eps(t) evaluated exactly
/// at the requested times. Refuses N+1 > 4096.
Trajectory evolve_eigenbasis(const SystemConfig& cfg, const std::vector<double>& times);

/// Least-squares slope of log |eps|^2 over [t0, t1]; returns the population
/// decay rate. Errors on a non-monotone (revival) window.
double fit_decay_rate(const Trajectory& traj, double t0, double t1);

}  // namespace wgqed
