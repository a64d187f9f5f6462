#include "wgqed/markov.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/Dense>

namespace wgqed {

double lindblad_rate(double Gamma, double phi_c, double k_a, int d) {
    return Gamma * (1.0 + std::cos(phi_c) * std::cos(k_a * d));
}

std::vector<double> markov_residuals(const std::vector<double>& phases) {
    const int L = static_cast<int>(phases.size());
    std::vector<double> res(L >= 1 ? L - 1 : 0);
    for (int n = 1; n <= L - 1; ++n) {
        double sum = 0;
        for (int j = 1; j <= L - n; ++j)
            sum += std::cos(phases[n + j - 1] - phases[j - 1]);
        res[n - 1] = sum;
    }
    return res;
}

namespace {

double wrap_pi(double phi) {
    double w = std::remainder(phi, 2 * pi);
    if (w <= -pi) w += 2 * pi;
    return w;
}

// Condition n as a function of phi_{n+1} alone is C + A cos(phi) + B sin(phi),
// so its roots are analytic. Returns the root of smallest |phi|, positive on
// ties; when no root exists, the minimizer of |f|.
double solve_single_phase(const std::vector<double>& phases, int n) {
    const int L = static_cast<int>(phases.size());
    double A = std::cos(phases[0]);
    double B = std::sin(phases[0]);
    if (2 * n + 1 <= L) {
        A += std::cos(phases[2 * n]);
        B += std::sin(phases[2 * n]);
    }
    double C = 0;
    for (int j = 2; j <= L - n; ++j) {
        if (j == n + 1) continue;  // the cos(phi_{2n+1} - phi_{n+1}) term
        C += std::cos(phases[n + j - 1] - phases[j - 1]);
    }
    const double R = std::hypot(A, B);
    const double psi = std::atan2(B, A);
    if (R < 1e-15) return phases[n];  // condition independent of this phase
    if (std::abs(C) > R) return wrap_pi(C > 0 ? psi + pi : psi);  // |f| minimizer
    const double delta = std::acos(std::min(1.0, std::max(-1.0, -C / R)));
    const double r1 = wrap_pi(psi + delta);
    const double r2 = wrap_pi(psi - delta);
    if (std::abs(std::abs(r1) - std::abs(r2)) < 1e-12) return std::max(r1, r2);
    return std::abs(r1) < std::abs(r2) ? r1 : r2;
}

double worst_residual(const std::vector<double>& phases) {
    double worst = 0;
    for (double r : markov_residuals(phases)) worst = std::max(worst, std::abs(r));
    return worst;
}

// Damped Newton on the interior phases phi_2..phi_{L-1}. The endpoints stay
// fixed at 0 and pi/2, which already satisfies the n = L-1 condition, leaving
// a square system of L-2 equations.
bool newton_refine(std::vector<double>& phases) {
    const int L = static_cast<int>(phases.size());
    const int m = L - 2;
    if (m <= 0) return worst_residual(phases) <= 1e-12;

    for (int iter = 0; iter < 200; ++iter) {
        const auto res = markov_residuals(phases);
        double worst = 0;
        for (int n = 1; n <= m; ++n) worst = std::max(worst, std::abs(res[n - 1]));
        if (worst <= 1e-13 && worst_residual(phases) <= 1e-12) return true;

        Eigen::MatrixXd Jm = Eigen::MatrixXd::Zero(m, m);
        Eigen::VectorXd rv(m);
        for (int n = 1; n <= m; ++n) {
            rv(n - 1) = res[n - 1];
            for (int j = 0; j + n < L; ++j) {
                const double s = std::sin(phases[n + j] - phases[j]);
                if (n + j >= 1 && n + j <= m) Jm(n - 1, n + j - 1) -= s;
                if (j >= 1 && j <= m) Jm(n - 1, j - 1) += s;
            }
        }
        const Eigen::VectorXd step = Jm.fullPivLu().solve(-rv);
        if (!step.allFinite()) return false;

        double lambda = 1.0;
        bool accepted = false;
        for (int k = 0; k < 30; ++k, lambda *= 0.5) {
            std::vector<double> trial = phases;
            for (int i = 0; i < m; ++i) trial[i + 1] = wrap_pi(phases[i + 1] + lambda * step(i));
            if (worst_residual(trial) < worst) {
                phases = trial;
                accepted = true;
                break;
            }
        }
        if (!accepted) return false;
    }
    return false;
}

}  // namespace

PhaseVector solve_markov_phases(int L) {
    if (L < 2) throw ConfigError("need at least two legs");

    std::vector<double> phases(L, 0.0);
    phases[L - 1] = pi / 2;  // the n = L-1 condition is cos(phi_L - phi_1) = 0

    auto finish = [&](const std::vector<double>& ph) {
        PhaseVector pv;
        pv.phases = ph;
        pv.residuals = markov_residuals(ph);
        pv.is_markovian = true;
        return pv;
    };

    for (int sweep = 0; sweep < 200; ++sweep) {
        for (int n = L - 2; n >= 1; --n)
            phases[n] = solve_single_phase(phases, n);
        if (worst_residual(phases) <= 1e-12) return finish(phases);
    }

    // sweeping can cycle for larger L; polish its iterate with Newton, then
    // fall back to a fixed set of deterministic restarts
    if (newton_refine(phases)) return finish(phases);
    std::mt19937 rng(12345);
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::vector<double> trial(L, 0.0);
        trial[L - 1] = pi / 2;
        for (int i = 1; i <= L - 2; ++i)
            trial[i] = (rng() / 4294967296.0) * 2 * pi - pi;
        if (newton_refine(trial)) return finish(trial);
    }

    std::ostringstream os;
    os << "phase conditions did not converge for L=" << L << "; partial assignment:";
    for (double p : phases) os << " " << p;
    throw NumericsError(os.str());
}

double markovianity_deviation(const Trajectory& traj, double amplitude_rate) {
    double worst = 0;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const double t = traj.times[i];
        if (t > traj.t_max_valid) break;
        worst = std::max(worst,
                         std::abs(std::abs(traj.eps[i]) - std::exp(-amplitude_rate * t)));
    }
    return worst;
}

}  // namespace wgqed
