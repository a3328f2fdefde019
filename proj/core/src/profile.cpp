#include "vpfocus/profile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vpfocus/numerics.hpp"

namespace vpfocus {

namespace {

// Unnormalized bump shapes on s in [0, 1).
double bump_shape(double s) {
    if (s >= 1.0 || s < 0.0) return 0.0;
    return std::exp(-1.0 / (1.0 - s));
}

double cubic_shape(double s) {
    if (s >= 1.0 || s < 0.0) return 0.0;
    const double q = 1.0 - s;
    return q * q * q;
}

double shape(ProfileKind kind, double s) {
    return kind == ProfileKind::smooth_bump ? bump_shape(s) : cubic_shape(s);
}

} // namespace

ProfileH ProfileH::make(ProfileKind kind) {
    ProfileH p;
    p.kind_ = kind;
    // 4 pi \int_0^inf H(u^2) u^2 du = 3/(4 pi)  =>  \int = 3/(16 pi^2)
    const double target = 3.0 / (16.0 * num::pi * num::pi);
    const double raw = num::integrate_adaptive(
        [kind](double u) { return shape(kind, u * u) * u * u; }, 0.0, 1.0, 1e-14);
    p.kappa_ = target / raw;
    return p;
}

double ProfileH::value(double s) const { return kappa_ * shape(kind_, s); }

ProfileH make_profile(ProfileKind kind) { return ProfileH::make(kind); }

namespace smoothstep {

namespace {

// F(u) = exp(-1/u) on u > 0. F^(j)(u) = F(u) P_j(1/u) with the polynomial
// recurrence P_{j+1}(z) = z^2 (P_j(z) - P_j'(z)), P_0 = 1.
const std::vector<std::vector<double>>& p_polys(int k_max) {
    static std::vector<std::vector<double>> polys = {{1.0}};
    while ((int)polys.size() <= k_max) {
        const auto& p = polys.back();
        std::vector<double> next(p.size() + 2, 0.0);
        for (std::size_t i = 0; i < p.size(); ++i) {
            next[i + 2] += p[i]; // z^2 * P_j
            if (i >= 1) next[i + 1] -= double(i) * p[i]; // -z^2 * P_j'
        }
        polys.push_back(std::move(next));
    }
    return polys;
}

double poly_eval(const std::vector<double>& c, double z) {
    double acc = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
    return acc;
}

// F^(j)(u), zero (with all derivatives) for u <= 0.
double f_deriv(int j, double u, const std::vector<std::vector<double>>& polys) {
    if (u <= 0.0) return 0.0;
    const double z = 1.0 / u;
    if (z > 700.0) return 0.0; // exp underflows; true value is below 1e-250
    return std::exp(-z) * poly_eval(polys[j], z);
}

} // namespace

double value(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    const double f = std::exp(-1.0 / u);
    const double g = std::exp(-1.0 / (1.0 - u));
    return f / (f + g);
}

std::vector<double> derivatives_at(double u, int k_max) {
    std::vector<double> s(k_max + 1, 0.0);
    if (u <= 0.0) return s;
    if (u >= 1.0) {
        s[0] = 1.0;
        return s;
    }
    const auto& polys = p_polys(k_max);
    std::vector<double> fj(k_max + 1), dj(k_max + 1);
    for (int j = 0; j <= k_max; ++j) {
        fj[j] = f_deriv(j, u, polys);
        const double gj = ((j % 2 == 0) ? 1.0 : -1.0) * f_deriv(j, 1.0 - u, polys);
        dj[j] = fj[j] + gj; // (F + G)^(j)
    }
    // Leibniz on S * (F+G) = F, solved order by order.
    for (int j = 0; j <= k_max; ++j) {
        double acc = fj[j];
        for (int i = 0; i < j; ++i)
            acc -= num::binomial(j, i) * s[i] * dj[j - i];
        s[j] = acc / dj[0];
    }
    return s;
}

double derivative_sup(int order, int grid) {
    if (order == 0) return 1.0;
    double sup = 0.0;
    for (int i = 1; i < grid; ++i) {
        const double u = double(i) / double(grid);
        const auto d = derivatives_at(u, order);
        sup = std::max(sup, std::fabs(d[order]));
    }
    return sup;
}

} // namespace smoothstep

double chi01_value(double x) {
    const double a = std::fabs(x);
    if (a <= 0.5) return 1.0;
    if (a >= 1.0) return 0.0;
    return smoothstep::value(2.0 * (1.0 - a));
}

std::vector<double> measure_chi01_alphas(int k_max) {
    std::vector<double> alpha(k_max + 1, 0.0);
    alpha[0] = 1.0;
    for (int j = 1; j <= k_max; ++j) {
        // chi_{0,1}(x) = S(2(1-|x|)) on the transition; chain rule gives 2^j.
        alpha[j] = std::pow(2.0, j) * smoothstep::derivative_sup(j);
    }
    return alpha;
}

CutoffChi CutoffChi::make(double center, double width, int k_max) {
    if (width <= 0.0)
        throw std::invalid_argument("CutoffChi: width must be positive");
    CutoffChi chi;
    chi.center = center;
    chi.width = width;
    chi.alpha = measure_chi01_alphas(std::max(k_max, 1));
    return chi;
}

double CutoffChi::value(double r) const {
    return chi01_value((r - center) / width);
}

double CutoffChi::derivative_bound(int order) const {
    if (order < 0 || order >= (int)alpha.size())
        throw std::out_of_range("CutoffChi: derivative order not measured");
    return alpha[order] / std::pow(width, order);
}

} // namespace vpfocus
