#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace vpfocus::num {

inline constexpr double pi = 3.14159265358979323846;

/// Compensated (Kahan) accumulator. Summation order is fixed by the caller,
/// so repeated runs produce bit-identical totals.
class KahanSum {
public:
    void add(double x) {
        double y = x - c_;
        double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

private:
    double s_ = 0.0;
    double c_ = 0.0;
};

/// Composite Simpson rule with n (even) panels.
double integrate_simpson(const std::function<double(double)>& f, double a, double b,
                         int panels);

/// Adaptive Simpson quadrature to absolute tolerance `tol`.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double tol, int max_depth = 40);

/// Central finite-difference estimate of f^(order)(x) with spacing h.
/// Uses the binomial stencil; odd orders are evaluated on half-offset nodes.
double fd_derivative(const std::function<double(double)>& f, double x, int order,
                     double h);

/// Sup of |f^(order)| over [a, b], sampled at `samples` points.
/// Spacing h defaults to a per-order balance of truncation and roundoff.
double fd_derivative_sup(const std::function<double(double)>& f, double a, double b,
                         int order, int samples = 2001, double h = 0.0);

/// Binomial coefficient as double (n small).
double binomial(int n, int k);

/// Relative gap |a-b| / max(|a|,|b|,floor).
double rel_diff(double a, double b, double floor = 1e-300);

} // namespace vpfocus::num
