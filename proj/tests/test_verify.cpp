#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "degenrad/verify.hpp"

using namespace degenrad;

namespace {

constexpr double kPi = std::numbers::pi;

const BallDomain& disk() {
    static const BallDomain dom(2, 1.0);
    return dom;
}

std::vector<double> interior_grid(double radius, int n) {
    std::vector<double> grid(n);
    for (int i = 0; i < n; ++i)
        grid[i] = radius * double(i + 1) / (n + 1);
    return grid;
}

std::vector<double> window_grid(double lo, double hi, int n) {
    std::vector<double> grid(n);
    for (int i = 0; i < n; ++i)
        grid[i] = lo + (hi - lo) * double(i) / (n - 1);
    return grid;
}

} // namespace

TEST_CASE("bump test functions vanish at the support edges") {
    const BumpTestFunction phi{0.2, 0.8};
    CHECK(phi.value(0.2) == 0.0);
    CHECK(phi.value(0.8) == 0.0);
    CHECK(phi.value(0.5) == doctest::Approx(std::exp(-1.0)));
    CHECK(phi.derivative(0.5) == doctest::Approx(0.0));
    CHECK(phi.value(0.1) == 0.0);
    CHECK(phi.derivative(0.9) == 0.0);
    // Finite-difference check of the derivative formula.
    const double h = 1e-7;
    for (double r : {0.3, 0.45, 0.62, 0.75}) {
        const double fd = (phi.value(r + h) - phi.value(r - h)) / (2.0 * h);
        CHECK(phi.derivative(r) == doctest::Approx(fd).epsilon(1e-5));
    }
}

TEST_CASE("pde residual vanishes for closed-form flux moments") {
    const RadialSolution constant(disk(), RadialDatum::constant(2.0), SolverParams{2.0, 0.0, {}});
    CHECK(pde_residual(constant, interior_grid(1.0, 512)) < 1e-6);

    const RadialSolution power(disk(), RadialDatum::power_law(1.0, 1.0),
                               SolverParams{2.0, 0.0, {}});
    CHECK(pde_residual(power, interior_grid(1.0, 512)) < 1e-6);
}

TEST_CASE("pde residual near a step jump uses one-sided stencils") {
    const RadialSolution step(disk(), RadialDatum::step({{0.5, 3.0}, {1.0, 1.0}}),
                              SolverParams{2.0, 0.0, {}});
    CHECK(pde_residual(step, interior_grid(1.0, 512)) < 1e-4);
}

TEST_CASE("pde residual decays at second order under grid refinement") {
    // Constant datum in N = 3: the flux moment r^2 m(r) is cubic, so the
    // central-difference residual is exactly (2/3) h^2 / r^2.
    const BallDomain ball(3, 1.0);
    const RadialSolution sol(ball, RadialDatum::constant(2.0), SolverParams{2.0, 0.0, {}});
    const double coarse = pde_residual(sol, window_grid(0.25, 0.75, 65));
    const double fine = pde_residual(sol, window_grid(0.25, 0.75, 129));
    CHECK(coarse > 0.0);
    const double factor = coarse / fine;
    CHECK(factor > 3.2);
    CHECK(factor < 4.8);
}

TEST_CASE("weak residual vanishes across p and supports") {
    for (double p : {1.5, 2.0, 3.0}) {
        const RadialSolution constant(disk(), RadialDatum::constant(2.0),
                                      SolverParams{p, 0.0, {}});
        CHECK(std::abs(weak_residual(constant, BumpTestFunction{0.2, 0.8})) < 1e-8);
    }
    const RadialSolution power(disk(), RadialDatum::power_law(1.0, 1.0),
                               SolverParams{3.0, 0.0, {}});
    CHECK(std::abs(weak_residual(power, BumpTestFunction{0.1, 0.9})) < 1e-8);

    // The regularized solutions satisfy their own weak identity.
    const RadialSolution regularized(disk(), RadialDatum::constant(2.0),
                                     SolverParams{2.0, 0.3, {}});
    CHECK(std::abs(weak_residual(regularized, BumpTestFunction{0.2, 0.8})) < 1e-8);

    // phi identically zero.
    const double zero = weak_residual(
        power, [](double) { return 0.0; }, [](double) { return 0.0; }, 0.2, 0.8);
    CHECK(zero == 0.0);
}

TEST_CASE("weak residual is linear in the test function") {
    const RadialSolution sol(disk(), RadialDatum::step({{0.5, 3.0}, {1.0, 1.0}}),
                             SolverParams{2.0, 0.0, {}});
    const BumpTestFunction phi1{0.15, 0.55};
    const BumpTestFunction phi2{0.35, 0.85};
    const double r1 = weak_residual(sol, phi1);
    const double r2 = weak_residual(sol, phi2);
    const double doubled = weak_residual(
        sol, [&](double r) { return 2.0 * phi1.value(r); },
        [&](double r) { return 2.0 * phi1.derivative(r); }, phi1.lo, phi1.hi);
    const double summed = weak_residual(
        sol, [&](double r) { return phi1.value(r) + phi2.value(r); },
        [&](double r) { return phi1.derivative(r) + phi2.derivative(r); }, phi1.lo,
        phi2.hi);
    CHECK(std::abs(doubled - 2.0 * r1) < 1e-9);
    CHECK(std::abs(summed - (r1 + r2)) < 1e-9);
}

TEST_CASE("flux profiles are p-invariant") {
    const std::vector<double> ps1{1.5, 2.0, 3.0};
    CHECK(flux_p_invariance(RadialDatum::constant(2.0), disk(), ps1) < 1e-12);
    const std::vector<double> ps2{1.1, 2.0, 5.0};
    CHECK(flux_p_invariance(RadialDatum::power_law(1.0, 1.0), disk(), ps2) < 1e-12);
    const std::vector<double> single{2.0};
    CHECK(flux_p_invariance(RadialDatum::constant(2.0), disk(), single) == 0.0);
}

TEST_CASE("eps convergence study") {
    const std::vector<double> eps_list{0.4, 0.2, 0.1, 0.05, 0.025};
    const auto report = eps_convergence_study(RadialDatum::constant(2.0), disk(), 2.0,
                                              eps_list);
    REQUIRE(report.error.size() == eps_list.size());
    for (std::size_t i = 1; i < report.error.size(); ++i)
        CHECK(report.error[i] < report.error[i - 1]);
    CHECK(report.error.back() < report.error.front() / 10.0);
    CHECK(report.fitted_rate > 1.5);
    CHECK(report.fitted_rate < 2.5);

    // eps = 0 in the list gives the exact solution back.
    const std::vector<double> with_zero{0.2, 0.0};
    const auto degenerate =
        eps_convergence_study(RadialDatum::constant(2.0), disk(), 2.0, with_zero);
    CHECK(degenerate.error[1] == 0.0);
    CHECK(degenerate.bound_ratio[1] == 0.0);
}

TEST_CASE("eps study bound ratios stay bounded for p = 1.5 and p = 3") {
    const std::vector<double> eps_list{0.4, 0.2, 0.1, 0.05, 0.025};
    for (double p : {1.5, 3.0}) {
        const auto report =
            eps_convergence_study(RadialDatum::constant(2.0), disk(), p, eps_list);
        for (std::size_t i = 1; i < report.error.size(); ++i)
            CHECK(report.error[i] <= report.error[i - 1] * (1.0 + 1e-12));
        // Regression constant: the spec's bound c_p (eps + eps^{p-1}) must
        // dominate E with a single constant along the whole run.
        for (double ratio : report.bound_ratio)
            CHECK(ratio <= report.bound_ratio.front() * 1.5 + 1e-12);
    }
}

TEST_CASE("p -> 1 limit for the constant datum") {
    const std::vector<double> ps{1.5, 1.1, 1.01, 1.001};
    const auto grid = window_grid(0.05, 1.0, 128);
    const auto report =
        p_limit_study(RadialDatum::constant(2.0), disk(), ps, grid, 0.0);
    CHECK_FALSE(report.limit_diverges);
    CHECK(report.lorentz_hypothesis_holds); // equality case of the hypothesis
    CHECK(std::abs(report.z_sup - 1.0) < 1e-12);
    CHECK(report.sup_diff_vs_limit < 0.01);
    for (std::size_t i = 1; i < report.consecutive_diff.size(); ++i)
        CHECK(report.consecutive_diff[i] < report.consecutive_diff[i - 1]);
}

TEST_CASE("p -> 1 limit for the p-independent power datum") {
    const std::vector<double> ps{1.5, 1.01};
    const auto grid = window_grid(0.05, 1.0, 64);
    const auto report =
        p_limit_study(RadialDatum::power_law(1.0, 1.0), disk(), ps, grid, 0.0);
    CHECK_FALSE(report.limit_diverges);
    CHECK(report.consecutive_diff.front() < 1e-8);
    // u_p = 2(1-r) for every p; the m = 1 plateau contributes its measure.
    CHECK(report.sup_diff_vs_limit < 1e-3);
}

TEST_CASE("p -> 1 limit reports the offending interval when m > 1") {
    const std::vector<double> ps{1.5, 1.1};
    const auto grid = window_grid(0.05, 1.0, 64);
    const auto report =
        p_limit_study(RadialDatum::constant(4.0), disk(), ps, grid, 0.02);
    CHECK(report.limit_diverges);
    CHECK_FALSE(report.lorentz_hypothesis_holds);
    CHECK(report.z_sup == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(report.offending_lo == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(report.offending_hi == doctest::Approx(1.0));
    CHECK(std::isnan(report.sup_diff_vs_limit));
}
