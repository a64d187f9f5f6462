#pragma once

#include "wgqed/config.hpp"
#include "wgqed/trajectory.hpp"

namespace wgqed {

/// Parameters of the closed-form emitted-field expressions.
struct FieldSpec {
    double g = 0.2;
    double v = 2.0;
    double k_a = pi / 2;
    double phi_1 = 0;
    double phi_c = 0;
    double phi_wg = 0;
    double t_d = 0;
    int x1 = 0;
    int x2 = 0;

    static FieldSpec from_config(const SystemConfig& cfg);
};

/// Exponential / delay decomposition of the emitted field at the two
/// coupling points, evaluated from an atomic-amplitude history.
struct FieldComponents {
    std::vector<double> times;
    CVec c1_b_exp, c1_b_del, c1_f_exp;
    CVec c2_b_exp, c2_f_exp, c2_f_del;

    CVec c1_total() const;  // c1_b + c1_f per sample
    CVec c2_total() const;
};

/// Evaluates all six closed-form components. The eps history must live on a
/// uniform grid whose step divides t_d.
FieldComponents field_at_coupling_points(const std::vector<double>& times,
                                         const CVec& eps, const FieldSpec& spec);

/// The delayed-feedback combination c1_b_del e^{-i phi_1} + c2_f_del e^{-i phi_2};
/// magnitude proportional to |cos(phi_c) eps(t - t_d)|.
Complex delay_feedback_amplitude(const FieldComponents& comps, const FieldSpec& spec,
                                 std::size_t index);

/// General-position emitted field amplitude c_x(t) from the closed form,
/// using a sampled eps history (nearest-sample lookup, Theta(0) = 1/2 at the
/// light-cone edges).
Complex analytic_field_amplitude(int x, double t, const std::vector<double>& times,
                                 const CVec& eps, const FieldSpec& spec);

/// Max over the window of |c_x(lattice) - c_x(analytic)| at the coupling
/// points and the adjacent pure-outgoing probe sites x1-1 and x2+1, feeding
/// the lattice's own eps history into the closed forms.
double compare_with_lattice_field(const Trajectory& traj, const SystemConfig& cfg,
                                  double t0, double t1);

}  // namespace wgqed
