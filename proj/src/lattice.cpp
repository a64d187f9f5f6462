#include "wgqed/lattice.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "wgqed/hamiltonian.hpp"
#include "wgqed/kernels.hpp"

namespace wgqed {

namespace {

// Matrix-free derivative out = -i H in for the sector vector
// (atom, site_0 .. site_{N-1}).
struct Deriv {
    const SystemConfig& cfg;
    std::vector<Complex> coupling_atom_row;  // g e^{-i phi_j}
    std::vector<Complex> coupling_site_col;  // g e^{+i phi_j}

    explicit Deriv(const SystemConfig& c) : cfg(c) {
        for (const auto& cp : cfg.coupling_points) {
            coupling_atom_row.push_back(cfg.g * std::exp(Complex(0, -cp.phi)));
            coupling_site_col.push_back(cfg.g * std::exp(Complex(0, cp.phi)));
        }
    }

    void operator()(CVec& out, const CVec& in) const {
        const auto& ops = kernels::active();
        const int N = cfg.N;
        const Complex* s = in.data() + 1;
        Complex* d = out.data() + 1;
        ops.hop_muli(d, s, static_cast<std::size_t>(N), cfg.J);

        const auto muli = [&](Complex z) { return Complex(cfg.J * -z.imag(), cfg.J * z.real()); };
        if (cfg.boundary == Boundary::Ring && N > 2) {
            d[0] = muli(s[1] + s[N - 1]);
            d[N - 1] = muli(s[N - 2] + s[0]);
        } else {
            d[0] = muli(s[1]);
            d[N - 1] = muli(s[N - 2]);
        }

        Complex atom = cfg.omega_a * in[0];
        for (std::size_t j = 0; j < coupling_atom_row.size(); ++j)
            atom += coupling_atom_row[j] * s[cfg.coupling_points[j].x];
        out[0] = Complex(0, -1) * atom;
        for (std::size_t j = 0; j < coupling_site_col.size(); ++j)
            d[cfg.coupling_points[j].x] += Complex(0, -1) * (coupling_site_col[j] * in[0]);
    }
};

bool run_fixed_step(const SystemConfig& cfg, double t_max, const EvolveOptions& opts,
                    double dt, Trajectory& out) {
    const auto& ops = kernels::active();
    const int dim = cfg.N + 1;
    const std::size_t steps = static_cast<std::size_t>(std::ceil(t_max / dt - 1e-12));

    CVec psi(dim, 0.0), k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);
    psi[0] = 1.0;

    const Deriv deriv(cfg);
    out.times.clear();
    out.eps.clear();
    out.snapshots.clear();
    out.times.reserve(steps + 1);
    out.eps.reserve(steps + 1);
    out.times.push_back(0.0);
    out.eps.push_back(psi[0]);

    std::size_t snap_every = 0;
    if (opts.store_snapshots)
        snap_every = std::max<std::size_t>(1, static_cast<std::size_t>(
                                                  std::llround(opts.snapshot_interval / dt)));
    if (opts.store_snapshots)
        out.snapshots.push_back({0.0, CVec(psi.begin() + 1, psi.end())});

    const std::size_t n = static_cast<std::size_t>(dim);
    for (std::size_t step = 1; step <= steps; ++step) {
        deriv(k1, psi);
        ops.xpay(tmp.data(), psi.data(), dt / 2, k1.data(), n);
        deriv(k2, tmp);
        ops.xpay(tmp.data(), psi.data(), dt / 2, k2.data(), n);
        deriv(k3, tmp);
        ops.xpay(tmp.data(), psi.data(), dt, k3.data(), n);
        deriv(k4, tmp);
        ops.axpy(psi.data(), k1.data(), dt / 6, n);
        ops.axpy(psi.data(), k2.data(), dt / 3, n);
        ops.axpy(psi.data(), k3.data(), dt / 3, n);
        ops.axpy(psi.data(), k4.data(), dt / 6, n);

        const double t = step * dt;
        out.times.push_back(t);
        out.eps.push_back(psi[0]);
        if (std::abs(1.0 - ops.norm_sq(psi.data(), n)) > opts.norm_tolerance)
            return false;  // caller halves dt
        if (opts.store_snapshots && step % snap_every == 0)
            out.snapshots.push_back({t, CVec(psi.begin() + 1, psi.end())});
    }
    return true;
}

}  // namespace

Trajectory evolve(const SystemConfig& cfg, double t_max, EvolveOptions opts) {
    cfg.validate();
    if (opts.dt > 0.1 / cfg.J) opts.dt = 0.1 / cfg.J;

    Trajectory traj;
    traj.solver_tag = "lattice";
    traj.config_hash = cfg.hash();
    traj.t_max_valid = validity_window(cfg);
    if (t_max > traj.t_max_valid)
        traj.warnings.push_back("t_max exceeds validity window; wrap-around artifacts possible");
    if (cfg.outside_weak_coupling())
        traj.warnings.push_back("g/J > 0.5: outside weak-coupling regime");

    double dt = opts.dt;
    for (int attempt = 0; attempt < 10; ++attempt) {
        if (run_fixed_step(cfg, t_max, opts, dt, traj)) return traj;
        dt *= 0.5;
    }
    throw NumericsError("norm drift bound not reached after repeated step halving");
}

Trajectory evolve_eigenbasis(const SystemConfig& cfg, const std::vector<double>& times) {
    cfg.validate();
    if (cfg.N + 1 > 4096)
        throw NumericsError("dimension too large for dense diagonalization; use evolve()");

    const Eigen::MatrixXcd H = build_hamiltonian(cfg);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
    const auto& E = es.eigenvalues();
    const auto& V = es.eigenvectors();

    // psi(0) = e_atom, so eps(t) = sum_m |V(0,m)|^2 e^{-i E_m t}.
    Trajectory traj;
    traj.solver_tag = "lattice";
    traj.config_hash = cfg.hash();
    traj.t_max_valid = validity_window(cfg);
    traj.times = times;
    traj.eps.resize(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        Complex eps = 0;
        for (int m = 0; m < E.size(); ++m)
            eps += std::norm(V(0, m)) * std::exp(Complex(0, -E(m) * times[i]));
        traj.eps[i] = eps;
    }
    return traj;
}

double fit_decay_rate(const Trajectory& traj, double t0, double t1) {
    std::vector<double> ts, logs;
    double prev = 2.0;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const double t = traj.times[i];
        if (t < t0 || t > t1) continue;
        const double pop = traj.population(i);
        if (pop > prev + 1e-3)
            throw NumericsError("non-exponential window");
        prev = pop;
        if (pop <= 0) throw NumericsError("vanishing population in fit window");
        ts.push_back(t);
        logs.push_back(std::log(pop));
    }
    if (ts.size() < 3) throw NumericsError("fit window too small");

    double mt = 0, ml = 0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        mt += ts[i];
        ml += logs[i];
    }
    mt /= ts.size();
    ml /= ts.size();
    double num = 0, den = 0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        num += (ts[i] - mt) * (logs[i] - ml);
        den += (ts[i] - mt) * (ts[i] - mt);
    }
    return -num / den;
}

}  // namespace wgqed
