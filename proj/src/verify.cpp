#include "degenrad/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace degenrad {

namespace {

double sqr(double x) { return x * x; }

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] > 0.0 && y[i] > 0.0) {
            lx.push_back(std::log(x[i]));
            ly.push_back(std::log(y[i]));
        }
    }
    if (lx.size() < 2)
        return std::numeric_limits<double>::quiet_NaN();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= double(lx.size());
    my /= double(lx.size());
    double cov = 0.0, var = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        cov += (lx[i] - mx) * (ly[i] - my);
        var += sqr(lx[i] - mx);
    }
    return cov / var;
}

} // namespace

double BumpTestFunction::value(double r) const {
    const double tau = (2.0 * r - (lo + hi)) / (hi - lo);
    if (std::abs(tau) >= 1.0)
        return 0.0;
    return std::exp(-1.0 / (1.0 - tau * tau));
}

double BumpTestFunction::derivative(double r) const {
    const double tau = (2.0 * r - (lo + hi)) / (hi - lo);
    if (std::abs(tau) >= 1.0)
        return 0.0;
    const double one_minus = 1.0 - tau * tau;
    const double psi = std::exp(-1.0 / one_minus);
    return psi * (-2.0 * tau / sqr(one_minus)) * (2.0 / (hi - lo));
}

double pde_residual(const RadialSolution& sol, std::span<const double> r_grid) {
    const int N = sol.domain().dim;
    const double R = sol.domain().radius;
    const auto jumps = datum_jump_radii(sol.datum(), sol.domain());
    const auto flux_moment = [&](double r) { return std::pow(r, N - 1) * sol.m(r); };

    // The stencil step follows the grid resolution, so refining the grid
    // refines the differences.
    double base_h = R / 512.0;
    if (r_grid.size() >= 2) {
        base_h = std::numeric_limits<double>::infinity();
        for (std::size_t i = 1; i < r_grid.size(); ++i)
            base_h = std::min(base_h, std::abs(r_grid[i] - r_grid[i - 1]));
    }

    double worst = 0.0;
    for (double r : r_grid) {
        if (!(r > 0.0) || !(r < R))
            throw OutOfDomain("pde_residual: grid must lie in (0, R)");
        const double h = std::min({base_h, 0.45 * r, 0.45 * (R - r)});
        double nearest_jump = std::numeric_limits<double>::infinity();
        for (double j : jumps)
            if (std::abs(r - j) < std::abs(r - nearest_jump))
                nearest_jump = j;

        double deriv;
        if (std::abs(r - nearest_jump) >= 2.0 * h) {
            deriv = (flux_moment(r + h) - flux_moment(r - h)) / (2.0 * h);
        } else if (r <= nearest_jump) {
            // One-sided stencil on the side of the jump the point belongs to;
            // f0 takes its left value at the jump radius itself.
            deriv = (3.0 * flux_moment(r) - 4.0 * flux_moment(r - h) +
                     flux_moment(r - 2.0 * h)) /
                    (2.0 * h);
        } else {
            deriv = (-3.0 * flux_moment(r) + 4.0 * flux_moment(r + h) -
                     flux_moment(r + 2.0 * h)) /
                    (2.0 * h);
        }
        const double divergence = deriv / std::pow(r, N - 1);
        worst = std::max(worst, std::abs(divergence - eval_datum(sol.datum(), r, sol.domain())));
    }
    return worst;
}

double weak_residual(const RadialSolution& sol, const ScalarFunction& phi,
                     const ScalarFunction& phi_prime, double lo, double hi) {
    if (!(lo > 0.0) || !(lo < hi) || hi > sol.domain().radius)
        throw Error("weak_residual: test-function support must lie in (0, R)");
    const int N = sol.domain().dim;
    const double p = sol.params().p;
    const double eps = sol.params().eps;

    const auto integrand = [&](double r) {
        const double g = sol.grad_magnitude(r);
        const double flux = eps > 0.0 ? b_fun(eps, p, g) : h_alpha(g, p - 1.0);
        const double density = eval_datum(sol.datum(), r, sol.domain());
        return (flux * (-phi_prime(r)) - density * phi(r)) * std::pow(r, N - 1);
    };
    const double raw = adaptive_integrate(integrand, lo, hi, sol.params().quad);
    return N * sol.domain().unit_volume * raw;
}

double weak_residual(const RadialSolution& sol, const BumpTestFunction& phi) {
    return weak_residual(
        sol, [&phi](double r) { return phi.value(r); },
        [&phi](double r) { return phi.derivative(r); }, phi.lo, phi.hi);
}

double flux_p_invariance(const RadialDatum& datum, const BallDomain& dom,
                         std::span<const double> p_list, int grid_points,
                         const QuadratureConfig& quad) {
    if (p_list.empty())
        return 0.0;
    std::vector<RadialSolution> solutions;
    solutions.reserve(p_list.size());
    for (double p : p_list)
        solutions.emplace_back(dom, datum, SolverParams{p, 0.0, quad});

    double worst = 0.0;
    for (int i = 1; i <= grid_points; ++i) {
        const double r = dom.radius * double(i) / grid_points;
        double flux_min = std::numeric_limits<double>::infinity();
        double flux_max = 0.0;
        for (const auto& sol : solutions) {
            const double flux = h_alpha(sol.grad_magnitude(r), sol.params().p - 1.0);
            flux_min = std::min(flux_min, flux);
            flux_max = std::max(flux_max, flux);
        }
        const double reference = solutions.front().m(r);
        if (flux_max > flux_min)
            worst = std::max(worst, (flux_max - flux_min) /
                                        std::max(reference, std::numeric_limits<double>::min()));
    }
    return worst;
}

ConvergenceReport eps_convergence_study(const RadialDatum& datum, const BallDomain& dom,
                                        double p, std::span<const double> eps_list,
                                        const QuadratureConfig& quad) {
    const RadialSolution exact(dom, datum, SolverParams{p, 0.0, quad});
    const auto hp2 = [p](double g) { return std::pow(std::max(g - 1.0, 0.0), 0.5 * p); };

    ConvergenceReport report;
    for (double eps : eps_list) {
        const RadialSolution approx(dom, datum, SolverParams{p, eps, quad});
        const auto integrand = [&](double r) {
            return sqr(hp2(approx.grad_magnitude(r)) - hp2(exact.grad_magnitude(r))) *
                   std::pow(r, dom.dim - 1);
        };
        const double error =
            dom.dim * dom.unit_volume * adaptive_integrate(integrand, 0.0, dom.radius, quad);
        report.parameter.push_back(eps);
        report.error.push_back(error);
        report.bound_ratio.push_back(
            eps > 0.0 ? error / (eps + std::pow(eps, p - 1.0)) : 0.0);
    }
    report.fitted_rate = fit_loglog_slope(report.parameter, report.error);
    return report;
}

namespace {

/// Radial scan used by the p -> 1 study: m values at midpoints of a fine
/// uniform partition of (0, R].
struct MScan {
    std::vector<double> mid;
    std::vector<double> m;
    double width = 0.0;
};

MScan scan_m(const Rearrangement& re, int cells) {
    MScan scan;
    const double R = re.domain().radius;
    scan.width = R / cells;
    scan.mid.reserve(cells);
    scan.m.reserve(cells);
    for (int i = 0; i < cells; ++i) {
        const double r = (i + 0.5) * scan.width;
        const double t = re.domain().unit_volume * std::pow(r, re.domain().dim);
        scan.mid.push_back(r);
        scan.m.push_back(r / re.domain().dim * re.fstarstar(t));
    }
    return scan;
}

} // namespace

PLimitReport p_limit_study(const RadialDatum& datum, const BallDomain& dom,
                           std::span<const double> p_list, std::span<const double> r_grid,
                           double collar, const QuadratureConfig& quad) {
    if (p_list.empty())
        throw Error("p_limit_study: empty p list");
    PLimitReport report;
    report.p_values.assign(p_list.begin(), p_list.end());

    const Rearrangement re(datum, dom, quad);
    const double scale = dom.dim * std::pow(dom.unit_volume, 1.0 / dom.dim);
    const LorentzNorm norm = re.lorentz_quasinorm(double(dom.dim));
    report.z_sup = norm.divergent ? std::numeric_limits<double>::infinity()
                                  : norm.value / scale;
    report.lorentz_hypothesis_holds = !norm.divergent && norm.value <= scale * (1.0 + 1e-12);

    constexpr int kScanCells = 8192;
    constexpr double kEqTol = 1e-12;
    const MScan scan = scan_m(re, kScanCells);

    // Offending region {m > 1}, reported as its covering interval.
    const double over = 1.0 + kEqTol;
    int first_over = -1, last_over = -1;
    for (int i = 0; i < kScanCells; ++i) {
        if (scan.m[i] > over) {
            if (first_over < 0)
                first_over = i;
            last_over = i;
        }
    }
    const auto m_of = [&](double r) {
        const double t = dom.unit_volume * std::pow(r, dom.dim);
        return r / dom.dim * re.fstarstar(t);
    };
    if (first_over >= 0) {
        report.limit_diverges = true;
        double lo = first_over == 0 ? scan.mid[0] : scan.mid[first_over - 1];
        double hi_in = scan.mid[first_over];
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi_in);
            (m_of(mid) > over ? hi_in : lo) = mid;
        }
        report.offending_lo = 0.5 * (lo + hi_in);
        if (last_over == kScanCells - 1) {
            report.offending_hi = dom.radius;
        } else {
            double lo_in = scan.mid[last_over];
            double hi = scan.mid[last_over + 1];
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (lo_in + hi);
                (m_of(mid) > over ? lo_in : hi) = mid;
            }
            report.offending_hi = 0.5 * (lo_in + hi);
        }
    }

    // u_p on the grid, accumulated boundary-inward so each segment is
    // integrated once.
    std::vector<double> grid(r_grid.begin(), r_grid.end());
    std::sort(grid.begin(), grid.end());
    std::vector<std::vector<double>> u(p_list.size(), std::vector<double>(grid.size(), 0.0));
    for (std::size_t j = 0; j < p_list.size(); ++j) {
        const RadialSolution sol(dom, datum, SolverParams{p_list[j], 0.0, quad});
        double acc = 0.0;
        double upper = dom.radius;
        for (std::size_t i = grid.size(); i-- > 0;) {
            acc += adaptive_integrate([&](double r) { return sol.grad_magnitude(r); },
                                      grid[i], upper, quad);
            u[j][i] = acc;
            upper = grid[i];
        }
    }

    std::vector<double> gaps;
    for (std::size_t j = 0; j + 1 < p_list.size(); ++j) {
        double sup = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i)
            sup = std::max(sup, std::abs(u[j + 1][i] - u[j][i]));
        report.consecutive_diff.push_back(sup);
        gaps.push_back(p_list[j + 1] - 1.0);
    }
    report.fitted_rate = fit_loglog_slope(gaps, report.consecutive_diff);

    if (report.limit_diverges) {
        report.sup_diff_vs_limit = std::numeric_limits<double>::quiet_NaN();
        return report;
    }

    // Analytic limit: u_1(r) = (R - r) + |{rho > r : m(rho) = 1}|.
    std::vector<double> eq_suffix(kScanCells + 1, 0.0);
    for (int i = kScanCells; i-- > 0;) {
        const bool eq = std::abs(scan.m[i] - 1.0) <= kEqTol;
        eq_suffix[i] = eq_suffix[i + 1] + (eq ? scan.width : 0.0);
    }
    // Isolated crossings of m through 1, excluded with a collar.
    std::vector<double> crossings;
    for (int i = 0; i + 1 < kScanCells; ++i) {
        const double a = scan.m[i] - 1.0;
        const double b = scan.m[i + 1] - 1.0;
        if (std::abs(a) > kEqTol && std::abs(b) > kEqTol && a * b < 0.0)
            crossings.push_back(0.5 * (scan.mid[i] + scan.mid[i + 1]));
    }

    double sup = 0.0;
    const auto& u_last = u.back();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        bool excluded = false;
        for (double c : crossings)
            if (std::abs(grid[i] - c) <= collar * dom.radius)
                excluded = true;
        if (excluded)
            continue;
        const int cell = std::min(kScanCells - 1,
                                  std::max(0, int(grid[i] / scan.width)));
        const double limit = (dom.radius - grid[i]) + eq_suffix[cell];
        sup = std::max(sup, std::abs(u_last[i] - limit));
    }
    report.sup_diff_vs_limit = sup;
    return report;
}

} // namespace degenrad
