#pragma once

#include <array>
#include <functional>
#include <optional>
#include <vector>

namespace vpfocus {

enum class System { vp, rvp };

/// One characteristic's state in the spherically-symmetric reduction:
/// r = |x|, w = x.v/r (radial momentum), l = |x cross v|^2 (squared angular
/// momentum). l is an exact invariant of both characteristic systems.
struct RadialPhasePoint {
    double r = 0.0;
    double w = 0.0;
    double l = 0.0;
};

/// Map Cartesian (x, v) to (r, w, l). Throws std::domain_error for x = 0.
/// The identity |v|^2 = w^2 + l/r^2 holds up to rounding.
RadialPhasePoint to_radial(const std::array<double, 3>& x,
                           const std::array<double, 3>& v);

/// Phase-space sample carrying a charge weight; weights over a sampled
/// distribution sum to the total charge M.
struct WeightedParticle {
    RadialPhasePoint state;
    double weight = 0.0;
};

struct PhaseDerivatives {
    double dr_ds = 0.0;
    double dw_ds = 0.0;
    double dl_ds = 0.0; // identically zero for both systems
};

/// VP characteristic right-hand side: (w, l/r^3 + m/r^2, 0).
PhaseDerivatives vp_rhs(const RadialPhasePoint& state, double m_enclosed);

/// RVP right-hand side: (w/gamma, l/(r^3 gamma) + m/r^2, 0) with
/// gamma = sqrt(1 + w^2 + l/r^2).
PhaseDerivatives rvp_rhs(const RadialPhasePoint& state, double m_enclosed);

/// Time-dependent enclosed-charge lookup m(t, r); must be >= 0 and
/// nondecreasing in r. Called concurrently during parallel pushes, so the
/// callable has to be safe for concurrent reads.
using EnclosedMassFn = std::function<double(double t, double r)>;

struct StepControl {
    double rel_tol = 1e-11;
    double abs_tol = 1e-13;
    double initial_dt = 0.0;     // 0: heuristic from t_end
    double max_dt = 0.0;         // 0: t_end / 64
    double barrier_scale = 4.0;  // refine once r < scale * sqrt(l)/|v|
    double barrier_step_fraction = 0.05;
    double guard_fraction = 1e-12; // abort below guard_fraction * initial r
    long max_steps = 20'000'000;
    int fixed_substeps = 0;      // > 0: exactly n equal RK4 steps, no control
    bool record_samples = true;
};

struct TrajectorySample {
    double t;
    RadialPhasePoint state;
};

/// Integrated characteristic. Sample times are strictly increasing;
/// turning_time is the (interpolated) first w sign change when one occurred.
struct TrajectoryRecord {
    std::vector<TrajectorySample> samples;
    std::optional<double> turning_time;
    double l0 = 0.0;
    int sign_changes = 0;
};

/// Integrate one characteristic of `system` over [0, t_end] against the
/// supplied field. Classical RK4 with step-halving error control; the step
/// shrinks proportionally to r near the centrifugal barrier. Throws
/// IntegrationError (with the time reached) if r falls below the guard
/// radius or the step budget is exhausted.
TrajectoryRecord integrate_trajectory(System system, const RadialPhasePoint& init,
                                      const EnclosedMassFn& field, double t_end,
                                      const StepControl& control = {});

/// Record-free single-state advance over [t0, t0+dt]; used by the particle
/// pusher. Same stepping rules as integrate_trajectory.
RadialPhasePoint advance_state(System system, const RadialPhasePoint& init, double t0,
                               const EnclosedMassFn& field, double dt,
                               const StepControl& control = {});

/// Closed-form trajectory bounds for a single characteristic.
/// For VP, t0_lower and r_sq_envelope realize the inward-trajectory lemma;
/// for RVP, d_value, r_minus/r_plus bracket the turning radius and the
/// envelope uses the relativistic form.
struct BoundReport {
    double t0_lower = 0.0;
    std::function<double(double)> r_sq_envelope; // t -> upper bound on R(t)^2
    std::optional<double> d_value;               // RVP only
    std::optional<double> r_minus, r_plus;       // RVP only
};

/// Requires r > 0, l > 0, w < 0, M >= 0 (throws std::domain_error otherwise).
BoundReport vp_bounds(double r, double w, double l, double M);
BoundReport rvp_bounds(double r, double w, double l, double M);

/// Free-streaming closed form: with m == 0 in VP, R(t)^2 = (r+wt)^2 + l t^2/r^2.
double free_streaming_r_sq(const RadialPhasePoint& init, double t);

/// Free turning time of straight-line motion, -rw/(w^2 + l/r^2) (w < 0).
double free_turning_time(const RadialPhasePoint& init);

} // namespace vpfocus
