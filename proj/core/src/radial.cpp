#include "vpfocus/radial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vpfocus/errors.hpp"

namespace vpfocus {

RadialPhasePoint to_radial(const std::array<double, 3>& x,
                           const std::array<double, 3>& v) {
    const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    if (r2 <= 0.0)
        throw std::domain_error("to_radial: |x| must be positive");
    const double r = std::sqrt(r2);
    const double dot = x[0] * v[0] + x[1] * v[1] + x[2] * v[2];
    const double cx = x[1] * v[2] - x[2] * v[1];
    const double cy = x[2] * v[0] - x[0] * v[2];
    const double cz = x[0] * v[1] - x[1] * v[0];
    return {r, dot / r, cx * cx + cy * cy + cz * cz};
}

PhaseDerivatives vp_rhs(const RadialPhasePoint& s, double m_enclosed) {
    if (s.r <= 0.0)
        throw std::domain_error("vp_rhs: r must be positive");
    const double r2 = s.r * s.r;
    return {s.w, s.l / (r2 * s.r) + m_enclosed / r2, 0.0};
}

PhaseDerivatives rvp_rhs(const RadialPhasePoint& s, double m_enclosed) {
    if (s.r <= 0.0)
        throw std::domain_error("rvp_rhs: r must be positive");
    const double r2 = s.r * s.r;
    const double gamma = std::sqrt(1.0 + s.w * s.w + s.l / r2);
    return {s.w / gamma, s.l / (r2 * s.r * gamma) + m_enclosed / r2, 0.0};
}

namespace {

struct RW {
    double r, w;
};

inline RW rhs(System sys, double t, const RW& y, double l, const EnclosedMassFn& m) {
    const double r2 = y.r * y.r;
    const double menc = m(t, y.r);
    if (sys == System::vp)
        return {y.w, l / (r2 * y.r) + menc / r2};
    const double gamma = std::sqrt(1.0 + y.w * y.w + l / r2);
    return {y.w / gamma, l / (r2 * y.r * gamma) + menc / r2};
}

inline RW rk4(System sys, double t, const RW& y, double l, const EnclosedMassFn& m,
              double h) {
    const RW k1 = rhs(sys, t, y, l, m);
    const RW y2{y.r + 0.5 * h * k1.r, y.w + 0.5 * h * k1.w};
    const RW k2 = rhs(sys, t + 0.5 * h, y2, l, m);
    const RW y3{y.r + 0.5 * h * k2.r, y.w + 0.5 * h * k2.w};
    const RW k3 = rhs(sys, t + 0.5 * h, y3, l, m);
    const RW y4{y.r + h * k3.r, y.w + h * k3.w};
    const RW k4 = rhs(sys, t + h, y4, l, m);
    return {y.r + h / 6.0 * (k1.r + 2.0 * k2.r + 2.0 * k3.r + k4.r),
            y.w + h / 6.0 * (k1.w + 2.0 * k2.w + 2.0 * k3.w + k4.w)};
}

// Shared integration core. Calls `emit(t, state)` after every accepted step.
template <class Emit>
RadialPhasePoint integrate_core(System sys, const RadialPhasePoint& init, double t0,
                                const EnclosedMassFn& field, double t_end,
                                const StepControl& c, Emit&& emit) {
    if (init.r <= 0.0)
        throw std::domain_error("integrate: initial r must be positive");
    if (init.l < 0.0)
        throw std::domain_error("integrate: l must be nonnegative");
    if (t_end <= 0.0)
        throw std::domain_error("integrate: t_end must be positive");

    const double guard = c.guard_fraction * init.r;
    RW y{init.r, init.w};
    double t = 0.0;

    if (c.fixed_substeps > 0) {
        const double h = t_end / c.fixed_substeps;
        for (int i = 0; i < c.fixed_substeps; ++i) {
            y = rk4(sys, t0 + t, y, init.l, field, h);
            t = (i + 1) * h;
            if (!(y.r > guard))
                throw IntegrationError("integrate: r fell below guard radius", t);
            emit(t, RadialPhasePoint{y.r, y.w, init.l});
        }
        return {y.r, y.w, init.l};
    }

    const double max_dt = (c.max_dt > 0.0) ? c.max_dt : t_end / 64.0;
    double h = (c.initial_dt > 0.0) ? c.initial_dt : std::min(max_dt, t_end / 1024.0);
    long steps = 0;

    while (t < t_end) {
        h = std::min({h, max_dt, t_end - t});

        // Near the centrifugal barrier resolve the turning point: the step
        // is capped at a fraction of the free-fall time r/|v|.
        const double speed =
            std::sqrt(y.w * y.w + init.l / (y.r * y.r)) + 1e-300;
        if (init.l > 0.0 && y.r < c.barrier_scale * std::sqrt(init.l) / speed)
            h = std::min(h, c.barrier_step_fraction * y.r / speed);

        const RW full = rk4(sys, t0 + t, y, init.l, field, h);
        const RW half = rk4(sys, t0 + t, y, init.l, field, 0.5 * h);
        const RW two = rk4(sys, t0 + t + 0.5 * h, half, init.l, field, 0.5 * h);

        const double scale_r = c.abs_tol + c.rel_tol * std::max(std::fabs(y.r), std::fabs(two.r));
        const double scale_w = c.abs_tol + c.rel_tol * std::max(std::fabs(y.w), std::fabs(two.w));
        const double err = std::max(std::fabs(two.r - full.r) / scale_r,
                                    std::fabs(two.w - full.w) / scale_w) /
                           15.0;

        if (err <= 1.0 || h <= 1e-15 * t_end) {
            y = two;
            t += h;
            if (!(y.r > guard))
                throw IntegrationError("integrate: r fell below guard radius", t);
            emit(t, RadialPhasePoint{y.r, y.w, init.l});
        }
        const double grow = (err > 0.0) ? 0.9 * std::pow(err, -0.2) : 5.0;
        h *= std::clamp(grow, 0.2, 5.0);

        if (++steps > c.max_steps)
            throw IntegrationError("integrate: step budget exhausted", t);
    }
    return {y.r, y.w, init.l};
}

} // namespace

TrajectoryRecord integrate_trajectory(System sys, const RadialPhasePoint& init,
                                      const EnclosedMassFn& field, double t_end,
                                      const StepControl& control) {
    TrajectoryRecord rec;
    rec.l0 = init.l;
    rec.samples.push_back({0.0, init});

    double prev_t = 0.0;
    double prev_w = init.w;
    try {
        integrate_core(sys, init, 0.0, field, t_end, control,
                       [&](double t, const RadialPhasePoint& s) {
                           if (control.record_samples)
                               rec.samples.push_back({t, s});
                           const bool crossed =
                               (prev_w < 0.0 && s.w >= 0.0) || (prev_w > 0.0 && s.w <= 0.0);
                           if (crossed && s.w != prev_w) {
                               ++rec.sign_changes;
                               if (!rec.turning_time) {
                                   // linear interpolation of the w zero crossing
                                   const double frac = -prev_w / (s.w - prev_w);
                                   rec.turning_time = prev_t + frac * (t - prev_t);
                               }
                           }
                           prev_t = t;
                           prev_w = s.w;
                       });
    } catch (const IntegrationError& e) {
        throw IntegrationError(std::string(e.what()) + " (partial record kept)",
                               e.t_reached());
    }
    return rec;
}

RadialPhasePoint advance_state(System sys, const RadialPhasePoint& init, double t0,
                               const EnclosedMassFn& field, double dt,
                               const StepControl& control) {
    return integrate_core(sys, init, t0, field, dt, control,
                          [](double, const RadialPhasePoint&) {});
}

BoundReport vp_bounds(double r, double w, double l, double M) {
    if (r <= 0.0) throw std::domain_error("vp_bounds: r must be positive");
    if (l <= 0.0) throw std::domain_error("vp_bounds: lemma requires l > 0");
    if (w >= 0.0) throw std::domain_error("vp_bounds: lemma requires w < 0");
    if (M < 0.0) throw std::domain_error("vp_bounds: M must be nonnegative");

    BoundReport rep;
    const double lmr = l + M * r;
    rep.t0_lower = r / std::fabs(w) * (1.0 - std::sqrt(lmr / (r * r * w * w + lmr)));
    const double coeff = l / (r * r) + M / r;
    rep.r_sq_envelope = [r, w, coeff](double t) {
        const double a = r + w * t;
        return a * a + coeff * t * t;
    };
    return rep;
}

BoundReport rvp_bounds(double r, double w, double l, double M) {
    if (r <= 0.0) throw std::domain_error("rvp_bounds: r must be positive");
    if (l <= 0.0) throw std::domain_error("rvp_bounds: lemma requires l > 0");
    if (w >= 0.0) throw std::domain_error("rvp_bounds: lemma requires w < 0");
    if (M < 0.0) throw std::domain_error("rvp_bounds: M must be nonnegative");

    BoundReport rep;
    const double gamma_sq = 1.0 + w * w + l / (r * r);
    const double D = l + M * r * std::sqrt(gamma_sq);
    const double rw2 = r * r * w * w;
    rep.d_value = D;
    rep.t0_lower = r * (1.0 - std::sqrt(D / (rw2 + D)));
    rep.r_minus = r * std::sqrt(l / (rw2 + l));
    rep.r_plus = r * std::sqrt(D / (rw2 + D));
    const double vr = std::fabs(w) / std::sqrt(gamma_sq);
    const double coeff = D / (r * r * gamma_sq);
    rep.r_sq_envelope = [r, vr, coeff](double t) {
        const double a = r - vr * t;
        return a * a + coeff * t * t;
    };
    return rep;
}

double free_streaming_r_sq(const RadialPhasePoint& s, double t) {
    const double a = s.r + s.w * t;
    return a * a + s.l * t * t / (s.r * s.r);
}

double free_turning_time(const RadialPhasePoint& s) {
    return -s.r * s.w / (s.w * s.w + s.l / (s.r * s.r));
}

} // namespace vpfocus
