#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wgqed/types.hpp"

namespace wgqed {

struct CouplingPoint {
    int x = 0;       // site index, 0 <= x < N
    double phi = 0;  // coupling phase, radians
};

enum class Boundary { Ring, OpenChain };

/// Waveguide + atom parameters. All derived quantities (k_a, v, Gamma, ...)
/// are recomputed on demand, never stored.
struct SystemConfig {
    double J = 1.0;        // hopping energy, J > 0
    double g = 0.2;        // coupling strength
    double omega_a = 0.0;  // atomic frequency; 0 = middle of the band
    int N = 90;            // resonator count
    std::vector<CouplingPoint> coupling_points;
    Boundary boundary = Boundary::Ring;

    int legs() const { return static_cast<int>(coupling_points.size()); }

    /// Spacing between consecutive coupling points. Points must be equally
    /// spaced; validate() enforces this.
    int spacing() const;

    /// Throws ConfigError on invalid geometry (points outside [0,N), unequal
    /// spacing, non-increasing order).
    void validate() const;

    /// True when g/J exceeds the weak-coupling threshold 0.5.
    bool outside_weak_coupling() const { return g / J > 0.5; }

    /// Canonical flat serialization used for hashing and manifests.
    std::string canonical_string() const;
    std::string hash() const;
};

struct DerivedConstants {
    double k_a;     // resonant momentum, arccos(-omega_a/2J)
    double v;       // group velocity, 2J sin(k_a)
    double Gamma;   // decay rate, 4 g^2 / v
    double t_d;     // delay between neighboring coupling points, d/v
    double phi_wg;  // optical length, k_a * d
    double phi_c;   // coupling phase difference phi_2 - phi_1 (two-leg)

    static DerivedConstants from(const SystemConfig& cfg);
};

/// Shifts all phases by -phi_1 so that phi_1 = 0. Physics is invariant.
SystemConfig gauge_fixed(const SystemConfig& cfg);

/// Two-leg configuration with the reference parameter set:
/// J=1, g=0.2J, omega_a=0 (k_a=pi/2, v=2J), N resonators, x_1 = N/2.
SystemConfig make_two_leg_config(int d, double phi_c, int N = 90);

/// Equally spaced L-leg configuration, same reference parameters.
SystemConfig make_multi_leg_config(int d, const std::vector<double>& phases, int N = 90);

/// Validity horizon excluding ring wrap-around artifacts: 0.9 (N - span)/v.
double validity_window(const SystemConfig& cfg);

/// Parses "0.25", "pi/2", "-pi/4", "3*pi/4", "2pi" style phase strings.
double parse_phase(const std::string& s);

/// Formats a phase as p*pi/q when within 1e-9 of such a rational multiple
/// (q <= 8), else as a decimal.
std::string format_phase(double phi);

/// Reads a config from a flat JSON file: J, g, omega_a, N, boundary,
/// coupling_points as a list of {x, phi}; phi accepts numbers or "pi/2".
SystemConfig load_config(const std::string& path);

}  // namespace wgqed
