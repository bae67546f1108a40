#include "degenrad/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace degenrad {

double critical_q_gradient(int N, double r, double p) {
    if (!(r > 1.0) || r > N)
        throw InvalidIndex("critical_q_gradient: need 1 < r <= N");
    if (!(p > 1.0))
        throw InvalidIndex("critical_q_gradient: need p > 1");
    if (r == double(N))
        return std::numeric_limits<double>::infinity();
    return N * r * (p - 1.0) / (N - r);
}

double critical_q_hessian(int N, double r, double p) {
    if (!(r > 1.0) || r > N)
        throw InvalidIndex("critical_q_hessian: need 1 < r <= N");
    if (!(p > 1.0))
        throw InvalidIndex("critical_q_hessian: need p > 1");
    const double denom = N + r * (p - 2.0);
    if (!(denom > 0.0))
        throw InvalidIndex("critical_q_hessian: need N + r(p-2) > 0");
    return N * r * (p - 1.0) / denom;
}

double critical_r_hp2(int N, double p) {
    if (!(p >= 2.0))
        throw UnsupportedP("critical_r_hp2: proved for p >= 2 only");
    if (N < 2)
        throw InvalidDimension("critical_r_hp2: dimension must be >= 2");
    return N * p / (N * (p - 1.0) + 2.0 - p);
}

namespace {

/// Near-origin power behavior f0 ~ amp r^{-beta} for the closed-form kinds.
std::optional<std::pair<double, double>> origin_power(const RadialDatum& d) {
    if (const auto* c = std::get_if<ConstantDatum>(&d.kind()))
        return std::make_pair(c->value, 0.0);
    if (const auto* p = std::get_if<PowerLawDatum>(&d.kind()))
        return std::make_pair(p->amplitude, p->exponent);
    if (const auto* p = std::get_if<TruncatedPowerDatum>(&d.kind()))
        return std::make_pair(p->amplitude, p->exponent);
    if (const auto* s = std::get_if<StepDatum>(&d.kind()))
        return std::make_pair(s->levels.front().second, 0.0);
    return std::nullopt; // sampled: probe only
}

/// Singularity exponent at the origin of the radial integrand (including the
/// r^{N-1} volume factor) for each quantity.
std::optional<double> analytic_sigma(Quantity quantity, double q, const RadialDatum& d,
                                     int N, double p) {
    const auto power = origin_power(d);
    if (!power)
        return std::nullopt;
    const double beta = power->second;
    const double delta = (1.0 - beta) / (p - 1.0); // exponent of g - 1
    // Radial Hessian exponent; for beta = 1 the profile m is constant near 0,
    // so g' vanishes identically and only the tangential cone term remains.
    const double e_radial = beta == 1.0 ? std::numeric_limits<double>::infinity()
                                        : (2.0 - p - beta) / (p - 1.0);
    const double e_tangential = std::min(0.0, delta) - 1.0;

    switch (quantity) {
    case Quantity::GradLq:
        return (beta > 1.0 ? q * delta : 0.0) + (N - 1);
    case Quantity::HessLq:
        return q * std::min(e_radial, e_tangential) + (N - 1);
    case Quantity::Hp2Energy: {
        const double weight = (1.0 - beta) * (p - 2.0) / (p - 1.0);
        const double term_rad = weight + 2.0 * e_radial;
        const double term_tan = weight + 2.0 * e_tangential;
        return std::min(term_rad, term_tan) + (N - 1);
    }
    }
    return std::nullopt;
}

double datum_lorentz_index(const RadialDatum& d, int N) {
    const auto power = origin_power(d);
    // Bounded data sit in every L^{r,infty}; the theorems cap the index at N.
    if (!power || power->second <= 0.0)
        return double(N);
    return std::min(double(N), N / power->second);
}

RegularityVerdict assemble(const RadialSolution& sol, Quantity quantity, double q,
                           const ScalarFunction& integrand, double upper) {
    const int N = sol.domain().dim;
    const double p = sol.params().p;

    RegularityVerdict out;
    out.quantity = quantity;
    out.exponent_q = q;
    out.verdict = divergence_probe(integrand, upper, sol.params().quad);
    out.datum_lorentz_r = datum_lorentz_index(sol.datum(), N);
    out.analytic_exponent = analytic_sigma(quantity, q, sol.datum(), N, p);

    switch (quantity) {
    case Quantity::GradLq:
        out.predicted_threshold = critical_q_gradient(N, out.datum_lorentz_r, p);
        break;
    case Quantity::HessLq:
        out.predicted_threshold = critical_q_hessian(N, out.datum_lorentz_r, p);
        break;
    case Quantity::Hp2Energy:
        out.predicted_threshold = critical_r_hp2(N, p);
        break;
    }

    // The analytic exponent settles borderline (logarithmic) probes, which the
    // slope fit reports as inconclusive; sigma = -1 diverges.
    if (out.analytic_exponent) {
        const bool analytic_finite = *out.analytic_exponent > -1.0;
        if (out.verdict.inconclusive() ||
            (out.verdict.finite() != analytic_finite && !out.verdict.inconclusive())) {
            out.verdict.status =
                analytic_finite ? ProbeStatus::Finite : ProbeStatus::Divergent;
            out.verdict.singularity_exponent = *out.analytic_exponent;
            out.resolved_by_analytic = true;
            if (analytic_finite && !out.verdict.probe_sequence.empty() &&
                !(out.verdict.value > 0.0))
                out.verdict.value = out.verdict.probe_sequence.back();
        }
    }
    return out;
}

} // namespace

RegularityVerdict lq_norm(const RadialSolution& sol, Quantity quantity, double q) {
    if (quantity == Quantity::Hp2Energy)
        throw Error("lq_norm: use hp2_sobolev_energy for the energy");
    if (sol.params().eps != 0.0)
        throw Error("lq_norm: defined for the exact solution (eps = 0) only");
    if (!(q >= 1.0))
        throw InvalidIndex("lq_norm: q must be >= 1");

    const int N = sol.domain().dim;
    const double factor = N * sol.domain().unit_volume;
    if (quantity == Quantity::GradLq) {
        const auto integrand = [&sol, q, N, factor](double r) {
            return factor * std::pow(sol.grad_magnitude(r), q) * std::pow(r, N - 1);
        };
        return assemble(sol, quantity, q, integrand, sol.domain().radius);
    }
    // Hessian: L^q_loc, probed on B_{R/2}; the singularity the theorem governs
    // sits at the origin.
    const auto integrand = [&sol, q, N, factor](double r) {
        return factor * std::pow(sol.hessian(r).frobenius, q) * std::pow(r, N - 1);
    };
    return assemble(sol, quantity, q, integrand, 0.5 * sol.domain().radius);
}

RegularityVerdict hp2_sobolev_energy(const RadialSolution& sol) {
    const double p = sol.params().p;
    if (!(p >= 2.0))
        throw UnsupportedP("hp2_sobolev_energy: proved for p >= 2 only");
    if (sol.params().eps != 0.0)
        throw Error("hp2_sobolev_energy: defined for the exact solution (eps = 0) only");

    const int N = sol.domain().dim;
    const double factor = N * sol.domain().unit_volume;
    const double weight_exp = (p - 2.0) / (p - 1.0);
    const auto integrand = [&sol, N, p, factor, weight_exp](double r) {
        const double weight = p == 2.0 ? 1.0 : std::pow(sol.m(r), weight_exp);
        const double gp = sol.g_prime(r);
        const double g = sol.grad_magnitude(r);
        return factor * weight * (gp * gp + (N - 1) * (g / r) * (g / r)) *
               std::pow(r, N - 1);
    };
    return assemble(sol, Quantity::Hp2Energy, 2.0, integrand, sol.domain().radius);
}

std::vector<SharpnessRow> sharpness_scan(int N, double p, std::span<const double> beta_list,
                                         double radius, double amplitude,
                                         const QuadratureConfig& quad) {
    if (!(p > 1.0))
        throw Error("sharpness_scan: p must exceed 1");
    const BallDomain dom(N, radius);
    std::vector<SharpnessRow> rows;
    rows.reserve(beta_list.size());
    for (double beta : beta_list) {
        if (!(beta > 0.0) || !(beta < N))
            throw InvalidDatum("sharpness_scan: beta must lie in (0, N)");
        SharpnessRow row;
        row.beta = beta;
        row.lorentz_r = N / beta;
        row.alpha = (beta - 1.0) / (p - 1.0) - 1.0;
        row.alpha_hat = (N - 2.0) / p - 1.0;
        row.beta_hat = N - 1.0 - (N - 2.0) / p;

        const RadialSolution sol(dom, RadialDatum::power_law(amplitude, beta),
                                 SolverParams{p, 0.0, quad});
        if (p >= 2.0) {
            row.has_energy = true;
            row.energy = hp2_sobolev_energy(sol);
            row.energy_agrees = row.energy.verdict.finite() == (beta < row.beta_hat);
        }

        // The Hessian threshold N(p-1)/(beta+p-2) holds where the singularity
        // is power-type (beta > 1); below that the cone term caps q at N.
        row.hessian_q_hat = N * (p - 1.0) / (std::max(beta, 1.0) + p - 2.0);
        row.hessian_below = lq_norm(sol, Quantity::HessLq, 0.95 * row.hessian_q_hat);
        row.hessian_above = lq_norm(sol, Quantity::HessLq, 1.05 * row.hessian_q_hat);
        row.hessian_agrees =
            row.hessian_below.verdict.finite() && row.hessian_above.verdict.divergent();
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace degenrad
