#pragma once

#include <optional>
#include <span>
#include <vector>

#include "degenrad/solver.hpp"

namespace degenrad {

enum class Quantity { GradLq, HessLq, Hp2Energy };

/// Finiteness verdict for an L^q norm or the weighted Sobolev energy,
/// compared against the paper's critical exponent.
struct RegularityVerdict {
    Quantity quantity = Quantity::GradLq;
    /// Integrability exponent q; ignored for Hp2Energy.
    double exponent_q = 0.0;
    DivergenceVerdict verdict;
    /// Critical q (GradLq/HessLq) or critical Lorentz index (Hp2Energy).
    double predicted_threshold = 0.0;
    /// Exact Lorentz index of the datum: N/beta for power data, N otherwise.
    double datum_lorentz_r = 0.0;
    /// Singularity exponent of the radial integrand at 0, when the datum has
    /// a closed form; resolves logarithmic borderlines the probe cannot.
    std::optional<double> analytic_exponent;
    bool resolved_by_analytic = false;
};

/// q < N r (p-1)/(N-r); +infinity at r = N (gradient bounded).
double critical_q_gradient(int N, double r, double p);
/// q < N r (p-1)/(N + r(p-2)); equals N at r = N for every p.
double critical_q_hessian(int N, double r, double p);
/// r > N p / (N(p-1) + 2 - p), the Theorem 1.5 threshold; p >= 2 only.
double critical_r_hp2(int N, double p);

/// Probe N C_N int_0^b |quantity|^q r^{N-1} dr for divergence at the origin;
/// b = R for the gradient, R/2 for the Hessian (local integrability).
RegularityVerdict lq_norm(const RadialSolution& sol, Quantity quantity, double q);

/// Probe the weighted energy N C_N int m^{(p-2)/(p-1)} (g'^2 + (N-1) g^2/r^2)
/// r^{N-1} dr, the paper's majorant of |D H_{p/2}(grad u)|^2; p >= 2 only.
RegularityVerdict hp2_sobolev_energy(const RadialSolution& sol);

struct SharpnessRow {
    double beta = 0.0;
    double lorentz_r = 0.0; // N/beta
    double alpha = 0.0;     // (beta-1)/(p-1) - 1
    double alpha_hat = 0.0; // (N-2)/p - 1
    double beta_hat = 0.0;  // N - 1 - (N-2)/p
    bool has_energy = false;
    RegularityVerdict energy;
    bool energy_agrees = false;
    double hessian_q_hat = 0.0; // N(p-1)/(max(beta,1)+p-2)
    RegularityVerdict hessian_below; // at 0.95 q_hat, expected finite
    RegularityVerdict hessian_above; // at 1.05 q_hat, expected divergent
    bool hessian_agrees = false;
};

/// Scan the power-law family f = a |x|^{-beta} against the predicted
/// thresholds of Theorems 1.4 and 1.5.
std::vector<SharpnessRow> sharpness_scan(int N, double p, std::span<const double> beta_list,
                                         double radius = 1.0, double amplitude = 1.0,
                                         const QuadratureConfig& quad = {});

} // namespace degenrad
