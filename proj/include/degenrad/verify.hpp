#pragma once

#include <span>
#include <vector>

#include "degenrad/solver.hpp"

namespace degenrad {

/// Smooth radial bump exp(-1/(1-tau^2)) in tau = (2r-(a+b))/(b-a),
/// compactly supported in (a, b) with 0 < a < b < R.
struct BumpTestFunction {
    double lo;
    double hi;

    double value(double r) const;
    double derivative(double r) const;
};

/// Max over the grid of |r^{1-N} d/dr(r^{N-1} m(r)) - f0(r)|, the radial form
/// of -div z = f.  Central differences, switching to one-sided stencils next
/// to datum jump radii.
double pde_residual(const RadialSolution& sol, std::span<const double> r_grid);

/// N C_N int_0^R [flux(r) (-phi'(r)) - f0(r) phi(r)] r^{N-1} dr with
/// flux = |H_{p-1}(grad u)| (or B_{eps,p}(g) for eps > 0); vanishes for the
/// closed-form solutions.
double weak_residual(const RadialSolution& sol, const BumpTestFunction& phi);

/// Same residual for a general test profile supported in [lo, hi] (0, R).
double weak_residual(const RadialSolution& sol, const ScalarFunction& phi,
                     const ScalarFunction& phi_prime, double lo, double hi);

/// Max relative deviation across p of the flux magnitude profiles
/// |H_{p-1}(grad u_p)|, which all equal m(r).
double flux_p_invariance(const RadialDatum& datum, const BallDomain& dom,
                         std::span<const double> p_list, int grid_points = 512,
                         const QuadratureConfig& quad = {});

struct ConvergenceReport {
    std::vector<double> parameter;
    std::vector<double> error;
    /// Log-log slope of error against parameter (NaN with fewer than 2 points).
    double fitted_rate = 0.0;
    /// error / (eps + eps^{p-1}), bounded uniformly per Theorem 1.1's proof.
    std::vector<double> bound_ratio;
};

/// E(eps) = N C_N int |H_{p/2}(g_eps) - H_{p/2}(g_0)|^2 r^{N-1} dr; directions
/// cancel, so the vector L^2 distance reduces to scalar magnitudes.
ConvergenceReport eps_convergence_study(const RadialDatum& datum, const BallDomain& dom,
                                        double p, std::span<const double> eps_list,
                                        const QuadratureConfig& quad = {});

struct PLimitReport {
    std::vector<double> p_values;
    /// sup-grid |u_{p_{j+1}} - u_{p_j}| between consecutive list entries.
    std::vector<double> consecutive_diff;
    /// sup-grid |u_{p_last} - u_1| against the analytic pointwise limit,
    /// excluding a collar around radii where m = 1.
    double sup_diff_vs_limit = 0.0;
    /// ||z||_infty = sup_r m(r) = ||f||_{L^{N,infty}} / (N C_N^{1/N}).
    double z_sup = 0.0;
    bool lorentz_hypothesis_holds = false;
    /// m > 1 on a set of positive measure: u_p blows up there as p -> 1.
    bool limit_diverges = false;
    double offending_lo = 0.0;
    double offending_hi = 0.0;
    double fitted_rate = 0.0;
};

PLimitReport p_limit_study(const RadialDatum& datum, const BallDomain& dom,
                           std::span<const double> p_list, std::span<const double> r_grid,
                           double collar = 0.02, const QuadratureConfig& quad = {});

} // namespace degenrad
