#include "wgqed/collision.hpp"

#include <array>
#include <cmath>

namespace wgqed {

double CollisionSpec::kappa() const { return g / std::sqrt(v * dt); }

CollisionSpec CollisionSpec::from_config(const SystemConfig& cfg, double dt) {
    cfg.validate();
    const auto dc = DerivedConstants::from(cfg);
    CollisionSpec spec;
    spec.g = cfg.g;
    spec.v = dc.v;
    spec.phi_c = dc.phi_c;
    spec.phi_wg = dc.phi_wg;
    spec.dt = dt;
    spec.legs = cfg.legs();
    if (spec.legs > 2)
        throw ConfigError("collision model supports one or two coupling points");
    if (spec.legs == 2) {
        const double ratio = dc.t_d / dt;
        const double rounded = std::round(ratio);
        if (std::abs(ratio - rounded) > 1e-9 || rounded < 1)
            throw ConfigError("dt must divide t_d with integer quotient >= 1");
        spec.ell = static_cast<int>(rounded);
    } else {
        spec.ell = 0;
    }
    return spec;
}

BinChainState BinChainState::make(const CollisionSpec& spec, long n_steps) {
    const long bins = n_steps + spec.ell + 1;
    if (bins > 25'000'000)
        throw NumericsError("bin count exceeds memory guard");
    BinChainState st;
    st.right_bins.assign(bins, 0.0);
    st.left_bins.assign(bins, 0.0);
    return st;
}

double BinChainState::total_norm() const {
    double acc = std::norm(eps);
    for (const auto& c : right_bins) acc += std::norm(c);
    for (const auto& c : left_bins) acc += std::norm(c);
    return acc;
}

void collide_step(BinChainState& state, const CollisionSpec& spec) {
    const long n = state.step_index;
    const int ell = spec.ell;
    // Participants and their coupling phases; right bins are stored with an
    // offset of ell so the pre-history index n - ell stays in range.
    std::array<Complex*, 4> bins{};
    std::array<Complex, 4> u{};
    int m = 0;
    const Complex chir = std::exp(Complex(0, spec.phi_c));
    bins[m] = &state.right_bins[n + ell];
    u[m++] = 1.0;
    if (spec.legs == 2) {
        bins[m] = &state.right_bins[n];
        u[m++] = chir * std::exp(Complex(0, -spec.phi_wg));
    }
    bins[m] = &state.left_bins[n];
    u[m++] = 1.0;
    if (spec.legs == 2) {
        bins[m] = &state.left_bins[n + ell];
        u[m++] = chir * std::exp(Complex(0, spec.phi_wg));
    }

    // H restricted to {atom, participating bins} is a rank-two arrow matrix;
    // exp(-iH dt) rotates the atom against the normalized bath mode w.
    const double unorm = std::sqrt(static_cast<double>(m));
    Complex aw = 0;
    for (int i = 0; i < m; ++i) aw += u[i] * (*bins[i]) / unorm;

    const double theta = spec.kappa() * unorm * spec.dt;
    const double c = std::cos(theta), s = std::sin(theta);
    const Complex eps_new = c * state.eps - Complex(0, s) * aw;
    const Complex aw_new = c * aw - Complex(0, s) * state.eps;

    const Complex delta = aw_new - aw;
    for (int i = 0; i < m; ++i) *bins[i] += delta * std::conj(u[i]) / unorm;
    state.eps = eps_new;
    ++state.step_index;
}

Trajectory run_collisions(const SystemConfig& cfg, double t_max, double dt) {
    const CollisionSpec spec = CollisionSpec::from_config(cfg, dt);
    const long steps = static_cast<long>(std::llround(t_max / dt));
    BinChainState state = BinChainState::make(spec, steps);

    Trajectory traj;
    traj.solver_tag = "collision";
    traj.config_hash = cfg.hash();
    traj.t_max_valid = t_max;
    traj.times.reserve(steps + 1);
    traj.eps.reserve(steps + 1);
    traj.times.push_back(0.0);
    traj.eps.push_back(state.eps);
    for (long n = 0; n < steps; ++n) {
        collide_step(state, spec);
        traj.times.push_back((n + 1) * dt);
        traj.eps.push_back(state.eps);
    }

    // Final chain amplitudes, exposed as one snapshot (right then left).
    CVec field;
    field.reserve(state.right_bins.size() + state.left_bins.size());
    field.insert(field.end(), state.right_bins.begin(), state.right_bins.end());
    field.insert(field.end(), state.left_bins.begin(), state.left_bins.end());
    traj.snapshots.push_back({t_max, std::move(field)});
    return traj;
}

double unitarity_deviation(double phi_c, double phi_wg) {
    const Complex a = std::exp(Complex(0, phi_c)) * std::exp(Complex(0, -phi_wg));
    const Complex b = std::exp(Complex(0, phi_c)) * std::exp(Complex(0, phi_wg));
    // M = (1/sqrt 2) [[1, a], [b, 1]]
    const Complex m00 = 0.5 * (1.0 + a * std::conj(a)) - 1.0;
    const Complex m01 = 0.5 * (std::conj(b) + a);
    const Complex m10 = 0.5 * (b + std::conj(a));
    const Complex m11 = 0.5 * (b * std::conj(b) + 1.0) - 1.0;
    return std::max(std::max(std::abs(m00), std::abs(m11)),
                    std::max(std::abs(m01), std::abs(m10)));
}

std::pair<Complex, Complex> chirality_coefficients(double phi_c) {
    const Complex e = std::exp(Complex(0, phi_c));
    return {1.0 - Complex(0, 1) * e, 1.0 + Complex(0, 1) * e};
}

EmissionFractions emission_fractions(const Trajectory& traj, const SystemConfig& cfg) {
    if (traj.snapshots.empty())
        throw NumericsError("trajectory has no field snapshots");
    const auto& snap = traj.snapshots.back();
    const std::size_t i = traj.index_at(snap.t);
    const double pop = traj.population(i);
    if (pop >= 1e-3)
        throw NumericsError("emission fractions require |eps|^2 < 1e-3");

    const int N = cfg.N;
    const int x1 = cfg.coupling_points.front().x;
    const int d = cfg.coupling_points.back().x - x1;
    EmissionFractions out;
    out.atom_pop = pop;
    for (int x = 0; x < N; ++x) {
        const double w = std::norm(snap.field[x]);
        const int delta = ((x - x1) % N + N + N / 2) % N - N / 2;
        if (delta < 0)
            out.backward += w;
        else if (delta > d)
            out.forward += w;
        else
            out.interior += w;
    }
    return out;
}

EmissionFractions emission_fractions(const BinChainState& state) {
    const double pop = std::norm(state.eps);
    if (pop >= 1e-3)
        throw NumericsError("emission fractions require |eps|^2 < 1e-3");
    EmissionFractions out;
    out.atom_pop = pop;
    for (const auto& c : state.right_bins) out.forward += std::norm(c);
    for (const auto& c : state.left_bins) out.backward += std::norm(c);
    return out;
}

}  // namespace wgqed
