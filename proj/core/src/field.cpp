#include "vpfocus/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "vpfocus/errors.hpp"
#include "vpfocus/initial_data.hpp"
#include "vpfocus/numerics.hpp"

namespace vpfocus {

RadialGrid RadialGrid::from_edges(std::vector<double> edges) {
    if (edges.size() < 2)
        throw std::invalid_argument("RadialGrid: need at least two edges");
    if (edges.front() != 0.0)
        throw std::invalid_argument("RadialGrid: first edge must be 0");
    for (std::size_t i = 1; i < edges.size(); ++i)
        if (!(edges[i] > edges[i - 1]))
            throw std::invalid_argument("RadialGrid: edges must be strictly increasing");
    RadialGrid g;
    g.edges_ = std::move(edges);
    return g;
}

RadialGrid RadialGrid::uniform(double r_max, int cells) {
    if (cells < 1 || r_max <= 0.0)
        throw std::invalid_argument("RadialGrid::uniform: bad arguments");
    std::vector<double> e(cells + 1);
    for (int i = 0; i <= cells; ++i)
        e[i] = r_max * double(i) / double(cells);
    e[0] = 0.0;
    e[cells] = r_max;
    return from_edges(std::move(e));
}

RadialGrid RadialGrid::geometric(double r_max, int cells, double first_cell) {
    if (cells < 2 || r_max <= first_cell || first_cell <= 0.0)
        throw std::invalid_argument("RadialGrid::geometric: bad arguments");
    // Solve first_cell * (g^cells - 1)/(g - 1) = r_max for the growth g.
    double lo = 1.0 + 1e-12, hi = 2.0;
    auto total = [&](double g) {
        return first_cell * (std::pow(g, cells) - 1.0) / (g - 1.0);
    };
    while (total(hi) < r_max) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        (total(mid) < r_max ? lo : hi) = mid;
    }
    const double g = 0.5 * (lo + hi);
    std::vector<double> e(cells + 1);
    e[0] = 0.0;
    double width = first_cell;
    for (int i = 1; i <= cells; ++i) {
        e[i] = e[i - 1] + width;
        width *= g;
    }
    e[cells] = r_max;
    return from_edges(std::move(e));
}

double RadialGrid::cell_volume(int j) const {
    const double a = edges_[j], b = edges_[j + 1];
    return 4.0 * num::pi / 3.0 * (b * b * b - a * a * a);
}

int RadialGrid::cell_of(double r) const {
    auto it = std::upper_bound(edges_.begin(), edges_.end(), r);
    int j = int(it - edges_.begin()) - 1;
    return std::clamp(j, 0, cells() - 1);
}

bool RadialGrid::is_uniform() const {
    const double h = edges_[1] - edges_[0];
    for (std::size_t i = 2; i < edges_.size(); ++i)
        if (std::fabs((edges_[i] - edges_[i - 1]) - h) > 1e-9 * h) return false;
    return true;
}

std::vector<double> deposit_density(std::span<const WeightedParticle> particles,
                                    const RadialGrid& grid) {
    const int n = grid.cells();
    std::vector<double> charge(n, 0.0);
    for (std::size_t i = 0; i < particles.size(); ++i) {
        const double r = particles[i].state.r;
        const double q = particles[i].weight;
        if (!(r >= 0.0) || r > grid.r_max())
            throw DepositError("deposit: particle radius " + std::to_string(r) +
                                   " outside grid span",
                               i);
        const int c = grid.cell_of(r);
        // linear assignment between the two cells whose centers bracket r
        if (r <= grid.center(0)) {
            charge[0] += q;
        } else if (r >= grid.center(n - 1)) {
            charge[n - 1] += q;
        } else {
            const int k = (r >= grid.center(c)) ? c : c - 1;
            const double t = (r - grid.center(k)) / (grid.center(k + 1) - grid.center(k));
            charge[k] += q * (1.0 - t);
            charge[k + 1] += q * t;
        }
    }
    std::vector<double> rho(n);
    for (int j = 0; j < n; ++j) rho[j] = charge[j] / grid.cell_volume(j);
    return rho;
}

std::vector<double> enclosed_mass(std::span<const double> rho, const RadialGrid& grid) {
    if ((int)rho.size() != grid.cells())
        throw std::invalid_argument("enclosed_mass: rho size mismatch");
    std::vector<double> m(grid.cells() + 1, 0.0);
    num::KahanSum acc;
    for (int j = 0; j < grid.cells(); ++j) {
        if (rho[j] < 0.0)
            throw std::domain_error("enclosed_mass: negative density");
        acc.add(rho[j] * grid.cell_volume(j));
        m[j + 1] = acc.value();
    }
    return m;
}

double field_at(const RadialGrid& grid, std::span<const double> m_edges, double r) {
    if (r <= 0.0) throw std::domain_error("field_at: r must be positive");
    if ((int)m_edges.size() != grid.cells() + 1)
        throw std::invalid_argument("field_at: m size mismatch");
    if (r >= grid.r_max()) return m_edges.back() / (r * r);
    const int j = grid.cell_of(r);
    const double a = grid.edges()[j], b = grid.edges()[j + 1];
    const double t = (r - a) / (b - a);
    const double m = m_edges[j] + t * (m_edges[j + 1] - m_edges[j]);
    return m / (r * r);
}

RadialField RadialField::build(const RadialGrid& grid,
                               std::span<const WeightedParticle> particles) {
    RadialField f{grid, {}, {}, {}};
    f.rho = deposit_density(particles, grid);
    f.m_edges = enclosed_mass(f.rho, grid);
    f.e_edges.assign(f.m_edges.size(), 0.0);
    for (std::size_t i = 1; i < f.m_edges.size(); ++i) {
        const double r = grid.edges()[i];
        f.e_edges[i] = f.m_edges[i] / (r * r);
    }
    return f;
}

double sup_norm(std::span<const double> values, const RadialGrid& grid,
                double region_lo, double region_hi) {
    if ((int)values.size() != grid.cells() + 1)
        throw std::invalid_argument("sup_norm: values size mismatch");
    double sup = 0.0;
    bool hit = false;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double r = grid.edges()[i];
        if (r < region_lo || r > region_hi) continue;
        hit = true;
        sup = std::max(sup, std::fabs(values[i]));
    }
    if (!hit) throw std::domain_error("sup_norm: region does not intersect grid");
    return sup;
}

double sup_norm_cells(std::span<const double> values, const RadialGrid& grid,
                      double region_lo, double region_hi) {
    if ((int)values.size() != grid.cells())
        throw std::invalid_argument("sup_norm_cells: values size mismatch");
    double sup = 0.0;
    bool hit = false;
    for (int j = 0; j < grid.cells(); ++j) {
        const double r = grid.center(j);
        if (r < region_lo || r > region_hi) continue;
        hit = true;
        sup = std::max(sup, std::fabs(values[j]));
    }
    if (!hit) throw std::domain_error("sup_norm_cells: region does not intersect grid");
    return sup;
}

namespace {

// 4th-order central first and second derivatives, 2nd-order for orders 3..6.
double grid_derivative(std::span<const double> v, int i, int order, double h) {
    switch (order) {
    case 1:
        return (-v[i + 2] + 8.0 * v[i + 1] - 8.0 * v[i - 1] + v[i - 2]) / (12.0 * h);
    case 2:
        return (-v[i + 2] + 16.0 * v[i + 1] - 30.0 * v[i] + 16.0 * v[i - 1] - v[i - 2]) /
               (12.0 * h * h);
    case 3:
        return (v[i + 2] - 2.0 * v[i + 1] + 2.0 * v[i - 1] - v[i - 2]) / (2.0 * h * h * h);
    case 4:
        return (v[i + 2] - 4.0 * v[i + 1] + 6.0 * v[i] - 4.0 * v[i - 1] + v[i - 2]) /
               (h * h * h * h);
    case 5:
        return (v[i + 3] - 4.0 * v[i + 2] + 5.0 * v[i + 1] - 5.0 * v[i - 1] +
                4.0 * v[i - 2] - v[i - 3]) /
               (2.0 * std::pow(h, 5));
    case 6:
        return (v[i + 3] - 6.0 * v[i + 2] + 15.0 * v[i + 1] - 20.0 * v[i] +
                15.0 * v[i - 1] - 6.0 * v[i - 2] + v[i - 3]) /
               std::pow(h, 6);
    default:
        throw ResolutionError("ck_norm: derivative order > 6 not supported on grids");
    }
}

// Lah-number geometry factor: partials of f(|x|) up to order k are bounded by
// sum_j L(k,j) |f^(j)| r^(j-k); evaluated with the smallest radius at which
// the profile varies.
double cartesian_factor(int k, double r_eff) {
    if (k == 0) return 1.0;
    double f = 0.0;
    for (int j = 1; j <= k; ++j) {
        double lah = num::binomial(k - 1, j - 1);
        for (int i = j + 1; i <= k; ++i) lah *= i; // k!/j!
        f += lah * std::pow(std::max(r_eff, 1e-12), double(j - k));
    }
    return std::max(f, 1.0);
}

} // namespace

CkNorm ck_norm(std::span<const double> edge_values, int k, const RadialGrid& grid) {
    if ((int)edge_values.size() != grid.cells() + 1)
        throw std::invalid_argument("ck_norm: values size mismatch");
    if (k < 0) throw std::invalid_argument("ck_norm: k must be nonnegative");
    const int margin = (k <= 4) ? 2 : 3;
    if (grid.cells() + 1 < 2 * margin + 3)
        throw ResolutionError("ck_norm: grid too coarse for requested order");
    if (k >= 1 && !grid.is_uniform())
        throw ResolutionError("ck_norm: derivative stencils need a uniform grid");

    const double h = grid.edges()[1] - grid.edges()[0];
    const int n = int(edge_values.size());

    CkNorm out;
    out.stencil_accuracy = (k <= 2) ? 4 : 2;

    double sup0 = 0.0;
    for (double v : edge_values) sup0 = std::max(sup0, std::fabs(v));
    num::KahanSum total;
    total.add(sup0);

    double r_eff = grid.r_max();
    for (int order = 1; order <= k; ++order) {
        double sup = 0.0;
        for (int i = margin; i < n - margin; ++i) {
            const double d = std::fabs(grid_derivative(edge_values, i, order, h));
            if (d > sup) sup = d;
            if (d > 1e-14 * (sup0 + 1.0))
                r_eff = std::min(r_eff, grid.edges()[i]);
        }
        total.add(sup);
    }
    out.value = total.value();
    out.cartesian_factor = cartesian_factor(k, r_eff);
    return out;
}

double analytic_rho0_vp(double r, const VpPlan& plan, const CutoffChi& chi) {
    if (r <= 0.0) throw std::domain_error("analytic_rho0_vp: r must be positive");
    return 3.0 / (8.0 * num::pi * plan.a0 * plan.a0 * plan.a0) * chi.value(r);
}

} // namespace vpfocus
