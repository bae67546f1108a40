#include "degenrad/rearrangement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace degenrad {

namespace {

constexpr double kIndexTol = 1e-12; // relative window for r == N/beta

double phi_value(const Rearrangement& re, double r, double t) {
    return std::pow(t, 1.0 / r) * re.fstarstar(t);
}

} // namespace

Rearrangement::Rearrangement(RadialDatum datum, BallDomain dom, QuadratureConfig quad)
    : datum_(std::move(datum)), dom_(std::move(dom)), quad_(quad),
      measure_(dom_.measure()) {
    quad_.validate();
    const ValidationReport report = validate_datum(datum_, dom_);
    if (!report.valid())
        throw InvalidDatum("rearrangement: invalid datum: " + report.summary());

    if (const auto* step = std::get_if<StepDatum>(&datum_.kind())) {
        double prev_s = 0.0;
        double acc = 0.0;
        for (const auto& [r, v] : step->levels) {
            const double s = dom_.unit_volume * std::pow(r, dom_.dim);
            acc += v * (s - prev_s);
            step_s_.push_back(s);
            step_prefix_.push_back(acc);
            step_values_.push_back(v);
            prev_s = s;
        }
    }
}

double Rearrangement::fstar(double s) const {
    if (s < 0.0)
        throw OutOfDomain("fstar: s must be nonnegative");

    struct Visitor {
        const Rearrangement& re;
        double s;

        double operator()(const ConstantDatum& c) const {
            return s < re.measure_ ? c.value : 0.0;
        }
        double operator()(const PowerLawDatum& p) const {
            if (s >= re.measure_)
                return 0.0;
            return p.amplitude * std::pow(s / re.dom_.unit_volume, -p.exponent / re.dom_.dim);
        }
        double operator()(const TruncatedPowerDatum& p) const {
            const double support = re.dom_.unit_volume * std::pow(p.cutoff, re.dom_.dim);
            if (s >= support)
                return 0.0;
            return p.amplitude * std::pow(s / re.dom_.unit_volume, -p.exponent / re.dom_.dim);
        }
        double operator()(const StepDatum&) const {
            const auto it = std::upper_bound(re.step_s_.begin(), re.step_s_.end(), s);
            if (it == re.step_s_.end())
                return 0.0;
            return re.step_values_[std::size_t(it - re.step_s_.begin())];
        }
        double operator()(const SampledDatum& d) const {
            if (s >= re.measure_)
                return 0.0;
            if (s == 0.0)
                return d.value.front();
            const double rho = std::min(
                re.dom_.radius, std::pow(s / re.dom_.unit_volume, 1.0 / re.dom_.dim));
            return eval_datum(re.datum_, rho, re.dom_);
        }
    };
    return std::visit(Visitor{*this, s}, datum_.kind());
}

double Rearrangement::cumulative(double t) const {
    if (t <= 0.0)
        return 0.0;

    struct Visitor {
        const Rearrangement& re;
        double t;

        double operator()(const ConstantDatum& c) const {
            return c.value * std::min(t, re.measure_);
        }
        double operator()(const PowerLawDatum& p) const {
            const double k = 1.0 - p.exponent / re.dom_.dim;
            const double amp = p.amplitude * std::pow(re.dom_.unit_volume, p.exponent / re.dom_.dim);
            return amp * std::pow(std::min(t, re.measure_), k) / k;
        }
        double operator()(const TruncatedPowerDatum& p) const {
            const double support = re.dom_.unit_volume * std::pow(p.cutoff, re.dom_.dim);
            const double k = 1.0 - p.exponent / re.dom_.dim;
            const double amp = p.amplitude * std::pow(re.dom_.unit_volume, p.exponent / re.dom_.dim);
            return amp * std::pow(std::min(t, support), k) / k;
        }
        double operator()(const StepDatum&) const {
            if (re.step_s_.empty())
                return 0.0;
            if (t >= re.step_s_.back())
                return re.step_prefix_.back();
            const auto it = std::lower_bound(re.step_s_.begin(), re.step_s_.end(), t);
            const std::size_t i = std::size_t(it - re.step_s_.begin());
            const double s_prev = i == 0 ? 0.0 : re.step_s_[i - 1];
            const double p_prev = i == 0 ? 0.0 : re.step_prefix_[i - 1];
            return p_prev + re.step_values_[i] * (t - s_prev);
        }
        double operator()(const SampledDatum&) const {
            const double upper = std::min(t, re.measure_);
            return adaptive_integrate([&](double s) { return re.fstar(s); }, 0.0, upper,
                                      re.quad_);
        }
    };
    return std::visit(Visitor{*this, t}, datum_.kind());
}

double Rearrangement::fstarstar(double t) const {
    if (!(t > 0.0))
        throw OutOfDomain("fstarstar: t must be positive");
    return cumulative(t) / t;
}

LorentzNorm Rearrangement::lorentz_quasinorm(double r) const {
    if (!(r > 1.0))
        throw InvalidIndex("lorentz_quasinorm: index r must exceed 1");

    struct Visitor {
        const Rearrangement& re;
        double r;

        LorentzNorm power_law(double amplitude, double exponent, double support) const {
            const int N = re.dom_.dim;
            const double kappa = N / exponent;
            if (r > kappa * (1.0 + kIndexTol))
                return {true, std::numeric_limits<double>::infinity()};
            const double plateau = amplitude *
                                   std::pow(re.dom_.unit_volume, exponent / N) * N /
                                   (N - exponent);
            if (std::abs(r - kappa) <= kappa * kIndexTol)
                return {false, plateau};
            // r < kappa: t^{1/r} f**(t) increases on (0, support] and decays after.
            return {false, std::pow(support, 1.0 / r) * re.fstarstar(support)};
        }

        LorentzNorm operator()(const ConstantDatum& c) const {
            return {false, c.value * std::pow(re.measure_, 1.0 / r)};
        }
        LorentzNorm operator()(const PowerLawDatum& p) const {
            return power_law(p.amplitude, p.exponent, re.measure_);
        }
        LorentzNorm operator()(const TruncatedPowerDatum& p) const {
            const double support = re.dom_.unit_volume * std::pow(p.cutoff, re.dom_.dim);
            return power_law(p.amplitude, p.exponent, support);
        }
        LorentzNorm operator()(const StepDatum&) const {
            // F is piecewise linear; the sup of t^{1/r-1} F(t) sits at a
            // breakpoint or at the interior critical point of a piece.
            double best = 0.0;
            for (std::size_t i = 0; i < re.step_s_.size(); ++i) {
                best = std::max(best, phi_value(re, r, re.step_s_[i]));
                const double v = re.step_values_[i];
                if (v <= 0.0)
                    continue;
                const double s_prev = i == 0 ? 0.0 : re.step_s_[i - 1];
                const double p_prev = i == 0 ? 0.0 : re.step_prefix_[i - 1];
                const double a = p_prev - v * s_prev;
                const double t_crit = a * (r - 1.0) / v;
                if (t_crit > s_prev && t_crit < re.step_s_[i])
                    best = std::max(best, phi_value(re, r, t_crit));
            }
            return {false, best};
        }
        LorentzNorm operator()(const SampledDatum&) const {
            // Log-spaced scan plus golden-section refinement; the sup of a
            // bounded datum is attained on (0, measure].
            constexpr int kScan = 10000;
            const double t_lo = re.measure_ * 1e-8;
            const double ratio = std::pow(re.measure_ / t_lo, 1.0 / (kScan - 1));
            double best = 0.0;
            int best_i = 0;
            double t = t_lo;
            std::vector<double> ts(kScan);
            for (int i = 0; i < kScan; ++i) {
                ts[i] = std::min(t, re.measure_);
                const double v = phi_value(re, r, ts[i]);
                if (v > best) {
                    best = v;
                    best_i = i;
                }
                t *= ratio;
            }
            double lo = ts[std::max(0, best_i - 1)];
            double hi = ts[std::min(kScan - 1, best_i + 1)];
            const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
            double x1 = hi - gr * (hi - lo);
            double x2 = lo + gr * (hi - lo);
            double f1 = phi_value(re, r, x1);
            double f2 = phi_value(re, r, x2);
            for (int it = 0; it < 60 && hi - lo > 1e-13 * re.measure_; ++it) {
                if (f1 < f2) {
                    lo = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = lo + gr * (hi - lo);
                    f2 = phi_value(re, r, x2);
                } else {
                    hi = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = hi - gr * (hi - lo);
                    f1 = phi_value(re, r, x1);
                }
            }
            best = std::max(best, std::max(f1, f2));
            return {false, best};
        }
    };
    return std::visit(Visitor{*this, r}, datum_.kind());
}

Rearrangement decreasing_rearrangement(const RadialDatum& d, const BallDomain& dom,
                                       const QuadratureConfig& quad) {
    return Rearrangement(d, dom, quad);
}

double maximal_function(const Rearrangement& re, double t) { return re.fstarstar(t); }

LorentzNorm lorentz_quasinorm(const Rearrangement& re, double r) {
    return re.lorentz_quasinorm(r);
}

namespace {

/// Radial tabulation of f0 with the datum's breakpoints merged in, so that
/// level-set measures of step-like data are exact.
struct RadialTable {
    std::vector<double> rho;
    std::vector<double> value;
    double unit_volume = 0.0;
    int dim = 0;

    /// mu_f(tau) = C_N rho(tau)^N with rho(tau) the largest grid radius where
    /// f0 > tau; f0 is nonincreasing, so that set is a prefix of the grid.
    double distribution(double tau) const {
        std::size_t lo = 0;
        std::size_t hi = value.size();
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (value[mid] > tau)
                lo = mid + 1;
            else
                hi = mid;
        }
        if (lo == 0)
            return 0.0;
        return unit_volume * std::pow(rho[lo - 1], dim);
    }
};

RadialTable build_table(const RadialDatum& d, const BallDomain& dom, std::size_t cells) {
    if (cells < 1000)
        throw Error("rearrangement_oracle: grid_cells must be >= 1000");
    RadialTable table;
    table.unit_volume = dom.unit_volume;
    table.dim = dom.dim;
    table.rho.reserve(cells + 8);
    for (std::size_t j = 1; j <= cells; ++j)
        table.rho.push_back(dom.radius * double(j) / double(cells));
    for (double r : datum_jump_radii(d, dom))
        table.rho.push_back(r);
    std::sort(table.rho.begin(), table.rho.end());
    table.rho.erase(std::unique(table.rho.begin(), table.rho.end()), table.rho.end());
    table.value.reserve(table.rho.size());
    for (double r : table.rho)
        table.value.push_back(eval_datum(d, r, dom));
    return table;
}

double fstar_by_bisection(const RadialTable& table, double s) {
    // inf{tau : mu_f(tau) <= s}; mu_f is nonincreasing in tau.
    if (table.distribution(0.0) <= s)
        return 0.0;
    double lo = 0.0;
    double hi = table.value.front() * (1.0 + 1e-12) + 1.0;
    for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (table.distribution(mid) <= s)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

} // namespace

OracleTable rearrangement_oracle(const RadialDatum& d, const BallDomain& dom,
                                 std::size_t grid_cells, std::size_t table_size) {
    const RadialTable table = build_table(d, dom, grid_cells);
    OracleTable out;
    out.measure = dom.measure();
    out.s.reserve(table_size);
    out.fstar.reserve(table_size);
    for (std::size_t i = 1; i <= table_size; ++i) {
        const double s = out.measure * double(i) / double(table_size);
        out.s.push_back(s);
        out.fstar.push_back(fstar_by_bisection(table, s));
    }
    return out;
}

double oracle_distribution(const RadialDatum& d, const BallDomain& dom,
                           std::size_t grid_cells, double tau) {
    return build_table(d, dom, grid_cells).distribution(tau);
}

double oracle_fstar(const RadialDatum& d, const BallDomain& dom, std::size_t grid_cells,
                    double s) {
    return fstar_by_bisection(build_table(d, dom, grid_cells), s);
}

} // namespace degenrad
