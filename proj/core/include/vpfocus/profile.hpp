#pragma once

#include <vector>

namespace vpfocus {

enum class ProfileKind { smooth_bump, cubic };

/// Radial bump profile H : [0, inf) -> [0, inf) with supp H in [0, 1],
/// normalized so that the 3D integral of H(|u|^2) equals 3/(4 pi).
class ProfileH {
public:
    static ProfileH make(ProfileKind kind = ProfileKind::smooth_bump);

    double value(double s) const; // H(s)
    double normalization() const { return kappa_; }
    ProfileKind kind() const { return kind_; }

private:
    ProfileKind kind_ = ProfileKind::smooth_bump;
    double kappa_ = 0.0;
};

ProfileH make_profile(ProfileKind kind = ProfileKind::smooth_bump);

/// Reference transition chi_{0,1}: identically 1 on |x| < 1/2, 0 on |x| > 1,
/// smooth in between (built from the exp(-1/u) smoothstep). Derivatives of
/// every order exist; sup of the k-th is computed from exact recurrences.
namespace smoothstep {
double value(double u);                        // S(u): 0 for u<=0, 1 for u>=1
std::vector<double> derivatives_at(double u, int k_max); // S, S', ..., S^(k)
double derivative_sup(int order, int grid = 40001);      // sup_(0,1) |S^(k)|
} // namespace smoothstep

double chi01_value(double x);

/// Shell cutoff chi(r) = chi_{0,1}((r - center)/width): 1 on the inner
/// half-width, 0 outside the full width. alpha[k] are the measured sup
/// bounds of the k-th derivative of the reference chi_{0,1}; the shell
/// cutoff's k-th derivative is then bounded by alpha[k] / width^k.
struct CutoffChi {
    double center = 0.0;
    double width = 0.0;
    std::vector<double> alpha; // alpha[0] = 1

    static CutoffChi make(double center, double width, int k_max);

    double value(double r) const;
    double derivative_bound(int order) const; // alpha[order] / width^order
    double support_lo() const { return center - width; }
    double support_hi() const { return center + width; }
    double plateau_lo() const { return center - 0.5 * width; }
    double plateau_hi() const { return center + 0.5 * width; }
};

/// Measured alpha_0..alpha_kmax of chi_{0,1} (alpha_0 = 1 exactly).
std::vector<double> measure_chi01_alphas(int k_max);

} // namespace vpfocus
