#include "degenrad/solver.hpp"

#include <algorithm>
#include <cmath>

namespace degenrad {

double h_alpha(double t, double alpha) {
    if (!(alpha > 0.0))
        throw Error("h_alpha: alpha must be positive");
    if (t == 0.0)
        return 0.0;
    const double excess = std::abs(t) - 1.0;
    if (excess <= 0.0)
        return 0.0;
    return std::pow(excess, alpha) * (t > 0.0 ? 1.0 : -1.0);
}

std::vector<double> h_alpha(const std::vector<double>& v, double alpha) {
    if (!(alpha > 0.0))
        throw Error("h_alpha: alpha must be positive");
    double norm2 = 0.0;
    for (double x : v)
        norm2 += x * x;
    const double norm = std::sqrt(norm2);
    std::vector<double> out(v.size(), 0.0);
    if (norm == 0.0 || norm <= 1.0)
        return out;
    const double scale = std::pow(norm - 1.0, alpha) / norm;
    for (std::size_t i = 0; i < v.size(); ++i)
        out[i] = scale * v[i];
    return out;
}

namespace {

void check_eps_p(double eps, double p, const char* who) {
    if (!(eps > 0.0) || !(eps <= 1.0))
        throw Error(std::string(who) + ": eps must lie in (0, 1]");
    if (!(p > 1.0))
        throw Error(std::string(who) + ": p must exceed 1");
}

} // namespace

double b_fun(double eps, double p, double r) {
    check_eps_p(eps, p, "b_fun");
    if (!(r >= 0.0))
        throw Error("b_fun: r must be nonnegative");
    if (r == 0.0)
        return 0.0;
    return std::pow(std::max(r - 1.0, 0.0) + eps * r, p - 1.0);
}

double b_inv(double eps, double p, double s) {
    check_eps_p(eps, p, "b_inv");
    if (!(s >= 0.0))
        throw Error("b_inv: s must be nonnegative");
    if (s <= std::pow(eps, p - 1.0))
        return std::pow(s, 1.0 / (p - 1.0)) / eps;
    return (1.0 + std::pow(s, 1.0 / (p - 1.0))) / (1.0 + eps);
}

void SolverParams::validate() const {
    if (!(p > 1.0))
        throw Error("solver: p must exceed 1");
    if (!(eps >= 0.0) || !(eps <= 1.0))
        throw Error("solver: eps must lie in [0, 1]");
    quad.validate();
}

RadialSolution::RadialSolution(BallDomain dom, RadialDatum datum, SolverParams params)
    : dom_(dom), datum_(std::make_shared<const RadialDatum>(std::move(datum))),
      params_(params) {
    params_.validate();
    re_ = std::make_shared<const Rearrangement>(*datum_, dom_, params_.quad);
}

void RadialSolution::require_inside(double r, const char* who, bool allow_r0) const {
    const double lo_ok = allow_r0 ? (r >= 0.0) : (r > 0.0);
    if (!lo_ok || r > dom_.radius)
        throw OutOfDomain(std::string(who) + ": r outside the ball");
}

double RadialSolution::m(double r) const {
    require_inside(r, "m");
    const double t = dom_.unit_volume * std::pow(r, dom_.dim);
    return r / dom_.dim * re_->fstarstar(t);
}

double RadialSolution::m_prime(double r) const {
    require_inside(r, "m_prime");
    if (std::holds_alternative<SampledDatum>(datum_->kind())) {
        // No closed form for f**: central differences on the m profile.
        const double h = std::min({1e-5 * dom_.radius, 0.45 * r, 0.45 * (dom_.radius - r)});
        if (!(h > 0.0))
            throw OutOfDomain("m_prime: r too close to the boundary");
        return (m(r + h) - m(r - h)) / (2.0 * h);
    }
    const double t = dom_.unit_volume * std::pow(r, dom_.dim);
    const double frac = double(dom_.dim - 1) / dom_.dim;
    return re_->fstar(t) - frac * re_->fstarstar(t);
}

double RadialSolution::grad_magnitude(double r) const {
    require_inside(r, "grad_magnitude");
    const double mr = m(r);
    if (params_.eps == 0.0)
        return 1.0 + std::pow(mr, 1.0 / (params_.p - 1.0));
    return b_inv(params_.eps, params_.p, mr);
}

double RadialSolution::g_prime(double r) const {
    require_inside(r, "g_prime");
    if (params_.eps != 0.0)
        throw Error("g_prime: defined for the exact solution (eps = 0) only");
    const double p = params_.p;
    const double mr = m(r);
    if (p == 2.0)
        return m_prime(r);
    if (mr == 0.0) {
        if (p > 2.0)
            throw DegenerateDerivative(
                "g_prime: m(r) = 0 with p > 2, the factor m^((2-p)/(p-1)) is singular");
        return 0.0; // 1 < p < 2: m^{(2-p)/(p-1)} vanishes with m
    }
    return std::pow(mr, (2.0 - p) / (p - 1.0)) * m_prime(r) / (p - 1.0);
}

double RadialSolution::solution_value(double r) const {
    require_inside(r, "solution_value", /*allow_r0=*/true);
    if (r == dom_.radius)
        return 0.0;
    return adaptive_integrate([this](double rho) { return grad_magnitude(rho); }, r,
                              dom_.radius, params_.quad);
}

double RadialSolution::z_field(double r) const { return m(r); }

HessianEigenvalues RadialSolution::hessian(double r) const {
    if (params_.eps != 0.0)
        throw Error("hessian: defined for the exact solution (eps = 0) only");
    if (!(r > 0.0) || !(r < dom_.radius))
        throw OutOfDomain("hessian: r must lie in (0, R)");
    const double gp = g_prime(r);
    const double g = grad_magnitude(r);
    HessianEigenvalues h;
    h.radial = -gp;
    h.tangential = -g / r;
    h.frobenius = std::sqrt(gp * gp + (dom_.dim - 1) * (g / r) * (g / r));
    return h;
}

double RadialSolution::linf_gradient_bound() const {
    const LorentzNorm norm = re_->lorentz_quasinorm(double(dom_.dim));
    if (norm.divergent)
        throw DivergentNorm("linf_gradient_bound: datum is not in L^{N,infty}");
    const double scale = dom_.dim * std::pow(dom_.unit_volume, 1.0 / dom_.dim);
    return 1.0 + std::pow(norm.value / scale, 1.0 / (params_.p - 1.0));
}

} // namespace degenrad
