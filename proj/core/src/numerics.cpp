#include "vpfocus/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vpfocus::num {

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i)
        r = r * double(n - k + i) / double(i);
    return r;
}

double rel_diff(double a, double b, double floor) {
    double scale = std::max({std::fabs(a), std::fabs(b), floor});
    return std::fabs(a - b) / scale;
}

double integrate_simpson(const std::function<double(double)>& f, double a, double b,
                         int panels) {
    if (panels < 2) panels = 2;
    if (panels % 2 != 0) ++panels;
    const double h = (b - a) / panels;
    KahanSum acc;
    acc.add(f(a));
    acc.add(f(b));
    for (int i = 1; i < panels; ++i) {
        double w = (i % 2 == 0) ? 2.0 : 4.0;
        acc.add(w * f(a + i * h));
    }
    return acc.value() * h / 3.0;
}

namespace {

double simpson_panel(const std::function<double(double)>& f, double a, double fa,
                     double b, double fb, double m, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double fa, double b,
             double fb, double m, double fm, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson_panel(f, a, fa, m, fm, lm, flm);
    const double right = simpson_panel(f, m, fm, b, fb, rm, frm);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adapt(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           adapt(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

} // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double tol, int max_depth) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fm = f(m);
    const double whole = simpson_panel(f, a, fa, b, fb, m, fm);
    return adapt(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

double fd_derivative(const std::function<double(double)>& f, double x, int order,
                     double h) {
    if (order == 0) return f(x);
    if (h <= 0.0) throw std::invalid_argument("fd_derivative: h must be positive");
    // sum_{i=0}^{j} (-1)^i C(j,i) f(x + (j/2 - i) h), divided by h^j
    KahanSum acc;
    for (int i = 0; i <= order; ++i) {
        double sign = (i % 2 == 0) ? 1.0 : -1.0;
        double node = x + (0.5 * order - i) * h;
        acc.add(sign * binomial(order, i) * f(node));
    }
    return acc.value() / std::pow(h, order);
}

double fd_derivative_sup(const std::function<double(double)>& f, double a, double b,
                         int order, int samples, double h) {
    if (samples < 2) samples = 2;
    if (h <= 0.0) {
        // balance h^2 truncation against eps/h^order roundoff
        h = std::pow(2.2e-16, 1.0 / double(order + 2));
        h *= std::max(1.0, std::fabs(b - a));
    }
    double sup = 0.0;
    for (int i = 0; i < samples; ++i) {
        double x = a + (b - a) * double(i) / double(samples - 1);
        sup = std::max(sup, std::fabs(fd_derivative(f, x, order, h)));
    }
    return sup;
}

} // namespace vpfocus::num
