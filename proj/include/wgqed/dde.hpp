#pragma once

#include "wgqed/config.hpp"
#include "wgqed/trajectory.hpp"

namespace wgqed {

/// Exact delay differential equation for the atomic amplitude:
///   eps'(t) = -(Gamma/4) [ L eps(t)
///             + 2 sum_{n=1}^{L-1} C_n e^{i n phi_wg} Theta(t - n t_d) eps(t - n t_d) ]
/// with C_n = sum_{j=1}^{L-n} cos(phi_{n+j} - phi_j). For L=2 this is
///   eps'(t) = -Gamma/2 eps - Gamma/2 cos(phi_c) e^{i phi_wg} Theta(t-t_d) eps(t-t_d).
struct DdeSpec {
    double Gamma = 0;    // population decay rate 4 g^2 / v
    double phi_wg = 0;   // optical length per spacing
    double t_d = 0;      // delay per spacing
    std::vector<double> phases;  // gauge-fixed coupling phases, size L >= 1

    int legs() const { return static_cast<int>(phases.size()); }
    double phi_c() const { return phases.size() >= 2 ? phases[1] - phases[0] : 0.0; }

    /// Amplitude decay coefficient of the delay-free part, L g^2/v = L Gamma/4.
    double local_amplitude_rate() const { return legs() * Gamma / 4.0; }

    /// Kernel coefficients b_n for delay n t_d, n = 1..L-1. Inner cosine sums
    /// within 1e-12 of zero are snapped to exactly zero.
    CVec delay_coefficients() const;

    static DdeSpec two_leg(double Gamma, double phi_c, double phi_wg, double t_d);
    static DdeSpec from_config(const SystemConfig& cfg);
};

/// Method-of-steps 4th-order integration with eps(0)=1 and step
/// h = t_d / substeps_per_delay, so every delay lands on the grid.
Trajectory integrate(const DdeSpec& spec, double t_max, int substeps_per_delay = 100);

/// Long-time amplitude limit (two-leg): (1 + Gamma t_d/2)^{-1} when
/// phi_wg = m pi and phi_c = (m+1) pi (mod 2 pi), else 0.
double asymptotic_amplitude(const DdeSpec& spec);

/// Closed-form Laplace transform (two-leg):
///   1 / (s + Gamma/2 [1 + e^{i phi_wg} e^{-s t_d} cos(phi_c)]).
Complex laplace_transform_amplitude(const DdeSpec& spec, Complex s);

}  // namespace wgqed
