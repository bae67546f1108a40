#pragma once

#include <functional>
#include <vector>

#include "degenrad/errors.hpp"

namespace degenrad {

using ScalarFunction = std::function<double(double)>;

/// Tolerances and limits shared by the quadrature and the divergence probes.
struct QuadratureConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_subdivisions = 10000;
    /// Mesh grading toward the singular endpoint: node x_j = a + (b-a)*(j/n)^gamma.
    double grading_exponent = 3.0;

    void validate() const;
};

enum class ProbeStatus {
    Finite,
    Divergent,
    /// Fitted singularity exponent within +-0.02 of the critical value -1
    /// (logarithmic borderline); the caller must refine or use an analytic exponent.
    Inconclusive,
};

/// Outcome of divergence_probe on (0, b].
struct DivergenceVerdict {
    ProbeStatus status = ProbeStatus::Inconclusive;
    /// Extrapolated value of the integral; meaningful only when status == Finite.
    double value = 0.0;
    /// Fitted exponent sigma of the integrand, f ~ c x^sigma near 0.
    double singularity_exponent = 0.0;
    /// Nested integrals I_k = int_{b 2^-k}^{b} f; nondecreasing for f >= 0.
    std::vector<double> probe_sequence;

    bool finite() const { return status == ProbeStatus::Finite; }
    bool divergent() const { return status == ProbeStatus::Divergent; }
    bool inconclusive() const { return status == ProbeStatus::Inconclusive; }
};

/// Adaptive Gauss-Kronrod integration of f over [a, b].
///
/// The initial mesh is graded toward a, so one integrable power singularity
/// at the left endpoint is supported; panels are then bisected largest-error
/// first until the total estimate drops below abs_tol + rel_tol*|I|.
/// Throws InvalidInterval if a > b, NonConvergence if max_subdivisions are
/// exhausted or the integrand is non-finite.
double adaptive_integrate(const ScalarFunction& f, double a, double b,
                          const QuadratureConfig& cfg = {});

/// Decide whether int_0^b f converges for a nonnegative f with a power-type
/// singularity at 0, by fitting the log-log slope of the nested increments
/// I_{k+1} - I_k against the scale 2^-k.  `levels` is the number K of nested
/// integrals.
DivergenceVerdict divergence_probe(const ScalarFunction& f, double b,
                                   const QuadratureConfig& cfg = {},
                                   int levels = 40);

} // namespace degenrad
