#pragma once

#include <memory>
#include <vector>

#include "degenrad/numerics.hpp"
#include "degenrad/profile.hpp"
#include "degenrad/rearrangement.hpp"

namespace degenrad {

/// H_alpha on a signed radial magnitude: t -> (|t|-1)_+^alpha sign(t).
double h_alpha(double t, double alpha);
/// H_alpha on a vector: (|v|-1)_+^alpha v/|v|, zero at the origin.
std::vector<double> h_alpha(const std::vector<double>& v, double alpha);

/// B_{eps,p}(r) = ((r-1)_+ + eps r)^{p-1}, strictly increasing in r.
double b_fun(double eps, double p, double r);
/// Piecewise inverse of B_{eps,p}: (1/eps) s^{1/(p-1)} up to s = eps^{p-1},
/// then (1 + s^{1/(p-1)})/(1 + eps).
double b_inv(double eps, double p, double s);

struct SolverParams {
    double p = 2.0;
    /// eps in (0, 1] selects the regularized solution, eps = 0 the exact
    /// degenerate one (g = 1 + m^{1/(p-1)}).
    double eps = 0.0;
    QuadratureConfig quad{};

    void validate() const;
};

struct HessianEigenvalues {
    double radial;     // -g'(r)
    double tangential; // -g(r)/r, multiplicity N-1
    double frobenius;  // sqrt(g'^2 + (N-1) g^2/r^2)
};

/// Closed-form radial solution of the (regularized) widely degenerate
/// Dirichlet problem for a radially nonincreasing datum.
class RadialSolution {
  public:
    RadialSolution(BallDomain dom, RadialDatum datum, SolverParams params);

    const BallDomain& domain() const { return dom_; }
    const RadialDatum& datum() const { return *datum_; }
    const SolverParams& params() const { return params_; }
    const Rearrangement& rearrangement() const { return *re_; }

    /// m(r) = (r/N) f**(C_N r^N); also the flux magnitude |z|(r).
    double m(double r) const;
    /// m'(r) = f*(C_N r^N) - ((N-1)/N) f**(C_N r^N) for catalog data,
    /// central differences for sampled profiles.
    double m_prime(double r) const;
    /// g(r) = |grad u|(r); the gradient vector is -g(r) x/|x|.
    double grad_magnitude(double r) const;
    double g_prime(double r) const;
    /// u(r) = int_r^R g(rho) d rho, so u(R) = 0.
    double solution_value(double r) const;
    /// Flux magnitude |z|(r) = m(r); H_{p-1}(grad u) = z for eps = 0, any p.
    double z_field(double r) const;
    /// Second derivatives of the exact (eps = 0) solution.
    HessianEigenvalues hessian(double r) const;
    /// 1 + (||f||_{L^{N,infty}} / (N C_N^{1/N}))^{1/(p-1)}; an upper bound
    /// for sup_r g(r), attained for constant data.
    double linf_gradient_bound() const;

  private:
    BallDomain dom_;
    std::shared_ptr<const RadialDatum> datum_;
    SolverParams params_;
    std::shared_ptr<const Rearrangement> re_;

    void require_inside(double r, const char* who, bool allow_r0 = false) const;
};

} // namespace degenrad
