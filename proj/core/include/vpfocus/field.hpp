#pragma once

#include <span>
#include <vector>

#include "vpfocus/radial.hpp"

namespace vpfocus {

struct VpPlan;
struct CutoffChi;

/// Discretized r-axis. Edges are strictly increasing with edges[0] = 0;
/// cell j spans [edges[j], edges[j+1]].
class RadialGrid {
public:
    static RadialGrid uniform(double r_max, int cells);
    /// First cell [0, first_cell], then geometrically growing widths up to r_max.
    static RadialGrid geometric(double r_max, int cells, double first_cell);
    static RadialGrid from_edges(std::vector<double> edges);

    int cells() const { return int(edges_.size()) - 1; }
    const std::vector<double>& edges() const { return edges_; }
    double r_max() const { return edges_.back(); }
    double center(int j) const { return 0.5 * (edges_[j] + edges_[j + 1]); }
    /// Exact shell volume (4 pi/3)(r_{j+1}^3 - r_j^3).
    double cell_volume(int j) const;
    /// Index of the cell containing r (r in [0, r_max]).
    int cell_of(double r) const;
    bool is_uniform() const;

private:
    std::vector<double> edges_;
};

/// Charge-conserving linear (area-weighted) deposition of particle weights
/// onto shell cells; returns per-cell density (charge / shell volume).
/// Throws DepositError naming the first particle outside the grid span.
std::vector<double> deposit_density(std::span<const WeightedParticle> particles,
                                    const RadialGrid& grid);

/// Cumulative enclosed charge at every edge: m[0] = 0, exact cell-volume sums.
/// Throws std::domain_error on negative density.
std::vector<double> enclosed_mass(std::span<const double> rho, const RadialGrid& grid);

/// Field magnitude m(r)/r^2 with m interpolated linearly (hence monotonically)
/// between edges; beyond the grid the total charge applies exactly.
double field_at(const RadialGrid& grid, std::span<const double> m_edges, double r);

/// Density, enclosed charge and field magnitude of one particle population
/// on one grid. Immutable once built.
struct RadialField {
    RadialGrid grid;
    std::vector<double> rho;     // per cell
    std::vector<double> m_edges; // per edge
    std::vector<double> e_edges; // per edge, e = m/r^2 (0 at r = 0)

    static RadialField build(const RadialGrid& grid,
                             std::span<const WeightedParticle> particles);
    double total_charge() const { return m_edges.back(); }
};

/// Max of |values| over the edges (values per edge) falling inside
/// [region_lo, region_hi]. Throws std::domain_error on empty intersection.
double sup_norm(std::span<const double> values, const RadialGrid& grid,
                double region_lo, double region_hi);

/// Same, for per-cell values (cells whose centers fall in the region).
double sup_norm_cells(std::span<const double> values, const RadialGrid& grid,
                      double region_lo, double region_hi);

/// Finite-difference C^k seminorm sum of a radial profile sampled at edges:
/// sum_{j<=k} sup |d^j f / dr^j|. The radial sum bounds the Cartesian C^k
/// norm of f(|x|) only up to a geometry factor, reported alongside.
struct CkNorm {
    double value = 0.0;            // radial derivative sum
    double cartesian_factor = 1.0; // multiply to bound Cartesian partials
    int stencil_accuracy = 0;
};

CkNorm ck_norm(std::span<const double> edge_values, int k, const RadialGrid& grid);

/// The construction's initial charge density (3 / (8 pi a0^3)) chi(r).
double analytic_rho0_vp(double r, const VpPlan& plan, const CutoffChi& chi);

} // namespace vpfocus
