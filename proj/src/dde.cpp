#include "wgqed/dde.hpp"

#include <cmath>

namespace wgqed {

CVec DdeSpec::delay_coefficients() const {
    const int L = legs();
    CVec b(L >= 1 ? L - 1 : 0);
    for (int n = 1; n <= L - 1; ++n) {
        double cn = 0;
        for (int j = 1; j <= L - n; ++j)
            cn += std::cos(phases[n + j - 1] - phases[j - 1]);
        if (std::abs(cn) < 1e-12 * L) cn = 0;
        b[n - 1] = (Gamma / 4.0) * 2.0 * cn * std::exp(Complex(0, n * phi_wg));
    }
    return b;
}

DdeSpec DdeSpec::two_leg(double Gamma, double phi_c, double phi_wg, double t_d) {
    DdeSpec s;
    s.Gamma = Gamma;
    s.phi_wg = phi_wg;
    s.t_d = t_d;
    s.phases = {0.0, phi_c};
    return s;
}

DdeSpec DdeSpec::from_config(const SystemConfig& cfg) {
    const auto dc = DerivedConstants::from(cfg);
    DdeSpec s;
    s.Gamma = dc.Gamma;
    s.phi_wg = dc.phi_wg;
    s.t_d = dc.t_d;
    const auto fixed = gauge_fixed(cfg);
    for (const auto& cp : fixed.coupling_points) s.phases.push_back(cp.phi);
    return s;
}

namespace {

// History of eps plus one-sided derivatives on the step grid. The solution is
// smooth inside each interval [i, i+1]; delayed midpoints come from cubic
// Hermite with the interval's own derivative pair, which keeps global order 4
// across the kinks at multiples of t_d.
struct History {
    const std::vector<Complex>& y;
    const std::vector<Complex>& dplus;   // right limit at node i
    const std::vector<Complex>& dminus;  // left limit at node i+1 (index i+1)
    double h;

    Complex at(double tau) const {
        const double r = tau / h;
        const double rn = std::round(r);
        if (std::abs(r - rn) < 1e-7)
            return y[static_cast<std::size_t>(rn)];
        const double j = std::floor(r);
        if (std::abs(r - j - 0.5) > 1e-7)
            throw NumericsError("delay request not aligned with integration grid");
        const std::size_t i = static_cast<std::size_t>(j);
        return 0.5 * (y[i] + y[i + 1]) + (h / 8.0) * (dplus[i] - dminus[i + 1]);
    }
};

}  // namespace

Trajectory integrate(const DdeSpec& spec, double t_max, int substeps_per_delay) {
    if (t_max < 0) throw ConfigError("t_max must be non-negative");
    if (substeps_per_delay < 50)
        throw ConfigError("substeps_per_delay must be at least 50");
    if (spec.legs() < 1) throw ConfigError("spec needs at least one leg");

    const double h = spec.t_d > 0 ? spec.t_d / substeps_per_delay
                                  : t_max / (100.0 * substeps_per_delay);
    const double a = spec.local_amplitude_rate();
    const CVec b = spec.delay_coefficients();

    const std::size_t steps = static_cast<std::size_t>(std::ceil(t_max / h - 1e-12));
    std::vector<Complex> y(steps + 1), dplus(steps + 1), dminus(steps + 1);
    const History hist{y, dplus, dminus, h};

    // Within one step all stages use the active-delay set of the step's
    // segment [n t_d, (n+1) t_d); the kink at a delay switch-on always lands
    // on a step boundary.
    const auto rhs = [&](double t, Complex yt, double t_active) {
        Complex f = -a * yt;
        for (std::size_t n = 1; n <= b.size(); ++n) {
            if (b[n - 1] == Complex(0)) continue;
            const double tau = t - n * spec.t_d;
            if (t_active < n * spec.t_d - 1e-9 * h) continue;
            f -= b[n - 1] * hist.at(std::max(tau, 0.0));
        }
        return f;
    };

    y[0] = 1.0;
    for (std::size_t i = 0; i < steps; ++i) {
        const double t = i * h;
        const double ta = t + 1e-9 * h;
        const Complex k1 = rhs(t, y[i], ta);
        dplus[i] = k1;
        const Complex k2 = rhs(t + h / 2, y[i] + (h / 2) * k1, ta);
        const Complex k3 = rhs(t + h / 2, y[i] + (h / 2) * k2, ta);
        const Complex k4 = rhs(t + h, y[i] + h * k3, ta);
        y[i + 1] = y[i] + (h / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        dminus[i + 1] = rhs(t + h, y[i + 1], ta);
    }

    Trajectory traj;
    traj.solver_tag = "dde";
    traj.t_max_valid = t_max;
    traj.times.resize(steps + 1);
    for (std::size_t i = 0; i <= steps; ++i) traj.times[i] = i * h;
    traj.eps = std::move(y);
    return traj;
}

double asymptotic_amplitude(const DdeSpec& spec) {
    if (spec.legs() != 2) throw ConfigError("asymptotic amplitude requires a two-leg spec");
    const double m = std::round(spec.phi_wg / pi);
    if (std::abs(spec.phi_wg - m * pi) > 1e-9) return 0.0;
    const double target = std::remainder(spec.phi_c() - (m + 1) * pi, 2 * pi);
    if (std::abs(target) > 1e-9) return 0.0;
    return 1.0 / (1.0 + spec.Gamma * spec.t_d / 2.0);
}

Complex laplace_transform_amplitude(const DdeSpec& spec, Complex s) {
    if (spec.legs() != 2) throw ConfigError("Laplace form requires a two-leg spec");
    const Complex denom = s + spec.Gamma / 2.0 *
                                  (1.0 + std::exp(Complex(0, spec.phi_wg)) *
                                             std::exp(-s * spec.t_d) * std::cos(spec.phi_c()));
    if (std::abs(denom) < 1e-12) throw NumericsError("pole");
    return 1.0 / denom;
}

}  // namespace wgqed
