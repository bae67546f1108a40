#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "degenrad/errors.hpp"

namespace degenrad {

/// Lebesgue measure of the unit ball in dimension N (pi^{N/2} / Gamma(N/2+1)).
double unit_ball_volume(int dim);

/// The ball B_R centered at the origin, the geometric stage for everything.
struct BallDomain {
    int dim;
    double radius;
    double unit_volume; // C_N

    BallDomain(int n, double r);
    double measure() const; // C_N R^N
};

struct ConstantDatum {
    double value;
};

/// f0(rho) = amplitude * rho^{-exponent}; integrable over B_R iff exponent < N.
struct PowerLawDatum {
    double amplitude;
    double exponent;
};

/// Power law cut to zero beyond rho = cutoff.
struct TruncatedPowerDatum {
    double amplitude;
    double exponent;
    double cutoff;
};

/// Piecewise constant, f0(rho) = value_i for rho in (radius_{i-1}, radius_i],
/// zero beyond the last radius.
struct StepDatum {
    std::vector<std::pair<double, double>> levels; // (radius, value), radii increasing
};

/// Piecewise-linear profile through (rho_i, value_i), clamped to the nearest
/// sample outside [rho_front, rho_back].
struct SampledDatum {
    std::vector<double> rho;
    std::vector<double> value;
};

/// Nonnegative, radially nonincreasing right-hand side f = f0(|x|).
class RadialDatum {
  public:
    using Kind = std::variant<ConstantDatum, PowerLawDatum, TruncatedPowerDatum,
                              StepDatum, SampledDatum>;

    static RadialDatum constant(double value);
    static RadialDatum power_law(double amplitude, double exponent);
    static RadialDatum truncated_power(double amplitude, double exponent, double cutoff);
    static RadialDatum step(std::vector<std::pair<double, double>> levels);
    static RadialDatum sampled(std::vector<double> rho, std::vector<double> value);

    const Kind& kind() const { return kind_; }
    std::string kind_name() const;

  private:
    explicit RadialDatum(Kind kind) : kind_(std::move(kind)) {}
    Kind kind_;
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool valid() const { return violations.empty(); }
    std::string summary() const;
};

/// f0(rho) for 0 < rho <= R; throws OutOfDomain outside.
double eval_datum(const RadialDatum& d, double rho, const BallDomain& dom);

/// Check nonnegativity, monotone nonincrease and integrability; the report
/// lists every violation instead of throwing.
ValidationReport validate_datum(const RadialDatum& d, const BallDomain& dom);

/// Radii in (0, R) where f0 jumps (step levels, truncation cutoff); used by
/// finite-difference consumers to switch to one-sided stencils.
std::vector<double> datum_jump_radii(const RadialDatum& d, const BallDomain& dom);

} // namespace degenrad
