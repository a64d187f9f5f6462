#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wgqed/types.hpp"

namespace wgqed {

struct FieldSnapshot {
    double t;
    CVec field;  // per-site amplitudes c_x, length N
};

/// Time series of the atomic amplitude from any of the three solvers.
struct Trajectory {
    std::vector<double> times;
    CVec eps;
    std::vector<FieldSnapshot> snapshots;
    double t_max_valid = 0;
    std::string solver_tag;  // lattice | dde | collision
    std::string config_hash;
    std::vector<std::string> warnings;

    double population(std::size_t i) const { return std::norm(eps[i]); }

    /// Closest sample index to time t.
    std::size_t index_at(double t) const;

    /// CSV columns: t, re_eps, im_eps, pop[, ref_exp, deviation].
    /// When ref_rate is set, ref_exp = e^{-ref_rate t} and deviation =
    /// pop - ref_exp.
    void write_csv(const std::string& path,
                   std::optional<double> ref_rate = std::nullopt) const;

    /// JSON mirror with metadata (config hash, solver tag, validity horizon).
    void write_json(const std::string& path, bool include_bins = false) const;
};

/// Max_t ||eps_a|^2 - |eps_b|^2| over the overlap of both time grids,
/// restricted to t <= t_cap. Grids need not coincide; samples of `a` are
/// compared against the nearest sample of `b`.
double max_population_deviation(const Trajectory& a, const Trajectory& b, double t_cap);

}  // namespace wgqed
