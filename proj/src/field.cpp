#include "wgqed/field.hpp"

#include <cmath>

namespace wgqed {

FieldSpec FieldSpec::from_config(const SystemConfig& cfg) {
    if (cfg.legs() != 2) throw ConfigError("field decomposition requires two legs");
    const auto dc = DerivedConstants::from(cfg);
    FieldSpec fs;
    fs.g = cfg.g;
    fs.v = dc.v;
    fs.k_a = dc.k_a;
    fs.phi_1 = cfg.coupling_points[0].phi;
    fs.phi_c = dc.phi_c;
    fs.phi_wg = dc.phi_wg;
    fs.t_d = dc.t_d;
    fs.x1 = cfg.coupling_points[0].x;
    fs.x2 = cfg.coupling_points[1].x;
    return fs;
}

CVec FieldComponents::c1_total() const {
    CVec out(times.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = c1_b_exp[i] + c1_b_del[i] + c1_f_exp[i];
    return out;
}

CVec FieldComponents::c2_total() const {
    CVec out(times.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = c2_b_exp[i] + c2_f_exp[i] + c2_f_del[i];
    return out;
}

namespace {

double theta(double tau, double tol) {
    if (tau > tol) return 1.0;
    if (tau < -tol) return 0.0;
    return 0.5;
}

// Nearest-sample lookup; errors when the requested time is off-grid.
Complex eps_at(const std::vector<double>& times, const CVec& eps, double t, double tol) {
    if (t <= times.front()) return eps.front();
    std::size_t lo = 0, hi = times.size() - 1;
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        (times[mid] <= t ? lo : hi) = mid;
    }
    const std::size_t i = (t - times[lo] < times[hi] - t) ? lo : hi;
    if (std::abs(times[i] - t) > tol)
        throw NumericsError("eps history grid misaligned with requested delay");
    return eps[i];
}

}  // namespace

FieldComponents field_at_coupling_points(const std::vector<double>& times,
                                         const CVec& eps, const FieldSpec& spec) {
    if (times.size() < 2 || times.size() != eps.size())
        throw ConfigError("bad eps history");
    const double h = times[1] - times[0];
    const double ratio = spec.t_d / h;
    if (std::abs(ratio - std::round(ratio)) > 1e-9)
        throw NumericsError("history grid step does not divide t_d");

    const Complex pref = Complex(0, -1) * spec.g * std::exp(Complex(0, spec.phi_1)) / spec.v;
    const Complex ec = std::exp(Complex(0, spec.phi_c));
    const Complex ewg = std::exp(Complex(0, spec.phi_wg));
    const double tol = 0.5 * h;

    FieldComponents fc;
    fc.times = times;
    const std::size_t n = times.size();
    fc.c1_b_exp.resize(n);
    fc.c1_b_del.resize(n);
    fc.c1_f_exp.resize(n);
    fc.c2_b_exp.resize(n);
    fc.c2_f_exp.resize(n);
    fc.c2_f_del.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = times[i];
        const Complex e = eps[i];
        fc.c1_b_exp[i] = pref * e;
        fc.c1_f_exp[i] = pref * e;
        fc.c2_b_exp[i] = pref * ec * e;
        fc.c2_f_exp[i] = pref * ec * e;
        const double w = theta(t - spec.t_d, 1e-9 * (h + 1));
        if (w > 0) {
            const Complex ed = eps_at(times, eps, t - spec.t_d, tol);
            fc.c1_b_del[i] = pref * 2.0 * ewg * ec * w * ed;
            fc.c2_f_del[i] = pref * 2.0 * ewg * w * ed;
        } else {
            fc.c1_b_del[i] = 0;
            fc.c2_f_del[i] = 0;
        }
    }
    return fc;
}

Complex delay_feedback_amplitude(const FieldComponents& comps, const FieldSpec& spec,
                                 std::size_t index) {
    const Complex e1 = std::exp(Complex(0, -spec.phi_1));
    const Complex e2 = std::exp(Complex(0, -(spec.phi_1 + spec.phi_c)));
    return comps.c1_b_del[index] * e1 + comps.c2_f_del[index] * e2;
}

Complex analytic_field_amplitude(int x, double t, const std::vector<double>& times,
                                 const CVec& eps, const FieldSpec& spec) {
    const double h = times.size() > 1 ? times[1] - times[0] : 1.0;
    const double tol_theta = 1e-9 * (h + 1);
    const double tol_grid = 0.5 * h;
    const double tau = (spec.x1 - x) / spec.v;
    const Complex pref = Complex(0, -1) * spec.g * std::exp(Complex(0, spec.phi_1)) / spec.v;
    const Complex ec = std::exp(Complex(0, spec.phi_c));

    Complex total = 0;
    // outgoing toward decreasing x (reaches x < x1 after |tau|)
    {
        const double w = theta(t - tau, tol_theta) * theta(tau, tol_theta);
        if (w > 0)
            total += w * eps_at(times, eps, t - tau, tol_grid) *
                     std::exp(Complex(0, spec.k_a * (spec.x1 - x)));
        const double wd = theta(t - tau - spec.t_d, tol_theta) * theta(tau + spec.t_d, tol_theta);
        if (wd > 0)
            total += ec * wd * eps_at(times, eps, t - tau - spec.t_d, tol_grid) *
                     std::exp(Complex(0, spec.k_a * (spec.x1 - x) + spec.phi_wg));
    }
    // outgoing toward increasing x
    {
        const double w = theta(t + tau, tol_theta) * theta(-tau, tol_theta);
        if (w > 0)
            total += w * eps_at(times, eps, t + tau, tol_grid) *
                     std::exp(Complex(0, -spec.k_a * (spec.x1 - x)));
        const double wd = theta(t + tau + spec.t_d, tol_theta) * theta(-tau - spec.t_d, tol_theta);
        if (wd > 0)
            total += ec * wd * eps_at(times, eps, t + tau + spec.t_d, tol_grid) *
                     std::exp(Complex(0, -(spec.k_a * (spec.x1 - x) + spec.phi_wg)));
    }
    return pref * total;
}

namespace {

// Running-wave split from the one-sided pair (y, y+1). Returns the forward
// and backward amplitudes evaluated at site y.
std::pair<Complex, Complex> separate_directions(const CVec& field, int y, double k_a) {
    const Complex ep = std::exp(Complex(0, k_a));
    const Complex em = std::exp(Complex(0, -k_a));
    const Complex den = ep - em;
    const Complex fwd = (field[y + 1] - field[y] * em) / den;
    const Complex bwd = (field[y] * ep - field[y + 1]) / den;
    return {fwd, bwd};
}

}  // namespace

double compare_with_lattice_field(const Trajectory& traj, const SystemConfig& cfg,
                                  double t0, double t1) {
    if (traj.snapshots.empty())
        throw NumericsError("lattice trajectory lacks field snapshots");
    const FieldSpec spec = FieldSpec::from_config(cfg);
    if (spec.x1 < 2 || spec.x2 + 2 >= cfg.N)
        throw NumericsError("coupling points too close to the boundary for separation");

    double worst = 0;
    for (const auto& snap : traj.snapshots) {
        if (snap.t < t0 || snap.t > t1) continue;
        // outgoing components just outside each leg, direction-separated so
        // the standing interference pattern cannot leak across
        const auto left = separate_directions(snap.field, spec.x1 - 2, spec.k_a);
        const Complex bwd_ref =
            analytic_field_amplitude(spec.x1 - 2, snap.t, traj.times, traj.eps, spec);
        worst = std::max(worst, std::abs(left.second - bwd_ref));

        const auto right = separate_directions(snap.field, spec.x2 + 1, spec.k_a);
        const Complex fwd_ref =
            analytic_field_amplitude(spec.x2 + 1, snap.t, traj.times, traj.eps, spec);
        worst = std::max(worst, std::abs(right.first - fwd_ref));

        // interior sites carry both directions; compare the totals
        for (int x = spec.x1 + 1; x < spec.x2; ++x) {
            const Complex analytic =
                analytic_field_amplitude(x, snap.t, traj.times, traj.eps, spec);
            worst = std::max(worst, std::abs(snap.field[x] - analytic));
        }
    }
    return worst;
}

}  // namespace wgqed
