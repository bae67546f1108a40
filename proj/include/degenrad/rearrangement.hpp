#pragma once

#include <cstddef>
#include <vector>

#include "degenrad/numerics.hpp"
#include "degenrad/profile.hpp"

namespace degenrad {

/// sup_t t^{1/r} f**(t), or divergent when f is not in L^{r,infty}.
struct LorentzNorm {
    bool divergent = false;
    double value = 0.0;
};

/// The pair (f*, f**) of a radially nonincreasing datum, with closed forms
/// for the catalog kinds and quadrature for sampled profiles.
///
/// f is extended by zero outside B_R, so f*(s) = 0 for s >= C_N R^N and
/// f**(t) is defined for every t > 0.
class Rearrangement {
  public:
    Rearrangement(RadialDatum datum, BallDomain dom, QuadratureConfig quad = {});

    const BallDomain& domain() const { return dom_; }
    const RadialDatum& datum() const { return datum_; }
    double measure() const { return measure_; }

    /// Decreasing rearrangement f*(s), right-continuous, zero past the measure.
    double fstar(double s) const;
    /// Running integral F(t) = int_0^t f*(sigma) d sigma.
    double cumulative(double t) const;
    /// Maximal function f**(t) = F(t)/t for t > 0.
    double fstarstar(double t) const;
    /// Lorentz L^{r,infty} quasi-norm; throws InvalidIndex for r <= 1.
    LorentzNorm lorentz_quasinorm(double r) const;

  private:
    RadialDatum datum_;
    BallDomain dom_;
    QuadratureConfig quad_;
    double measure_;
    // Step data: breakpoints in measure space and cumulative prefix integrals.
    std::vector<double> step_s_;
    std::vector<double> step_prefix_;
    std::vector<double> step_values_;
};

/// Spec-facing spellings of the two main operations.
Rearrangement decreasing_rearrangement(const RadialDatum& d, const BallDomain& dom,
                                       const QuadratureConfig& quad = {});
double maximal_function(const Rearrangement& re, double t);
LorentzNorm lorentz_quasinorm(const Rearrangement& re, double r);

/// Brute-force tabulation of f* from the level sets of f0, used as an
/// independent oracle in tests: mu_f(tau) = C_N rho(tau)^N on a radial grid,
/// inverted by bisection in tau.
struct OracleTable {
    std::vector<double> s;
    std::vector<double> fstar;
    double measure = 0.0;
};

OracleTable rearrangement_oracle(const RadialDatum& d, const BallDomain& dom,
                                 std::size_t grid_cells, std::size_t table_size = 2048);

/// Brute-force distribution function mu_f(tau) on the same radial grid.
double oracle_distribution(const RadialDatum& d, const BallDomain& dom,
                           std::size_t grid_cells, double tau);

/// f*(s) by tau-bisection on the brute-force distribution function.
double oracle_fstar(const RadialDatum& d, const BallDomain& dom,
                    std::size_t grid_cells, double s);

} // namespace degenrad
