#include "degenrad/profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace degenrad {

double unit_ball_volume(int dim) {
    if (dim < 2)
        throw InvalidDimension("unit_ball_volume: dimension must be >= 2");
    return std::pow(std::numbers::pi, 0.5 * dim) / std::tgamma(0.5 * dim + 1.0);
}

BallDomain::BallDomain(int n, double r) : dim(n), radius(r), unit_volume(unit_ball_volume(n)) {
    if (!(r > 0.0))
        throw InvalidDomain("BallDomain: radius must be positive");
}

double BallDomain::measure() const { return unit_volume * std::pow(radius, dim); }

RadialDatum RadialDatum::constant(double value) { return RadialDatum(Kind{ConstantDatum{value}}); }

RadialDatum RadialDatum::power_law(double amplitude, double exponent) {
    return RadialDatum(Kind{PowerLawDatum{amplitude, exponent}});
}

RadialDatum RadialDatum::truncated_power(double amplitude, double exponent, double cutoff) {
    return RadialDatum(Kind{TruncatedPowerDatum{amplitude, exponent, cutoff}});
}

RadialDatum RadialDatum::step(std::vector<std::pair<double, double>> levels) {
    return RadialDatum(Kind{StepDatum{std::move(levels)}});
}

RadialDatum RadialDatum::sampled(std::vector<double> rho, std::vector<double> value) {
    return RadialDatum(Kind{SampledDatum{std::move(rho), std::move(value)}});
}

std::string RadialDatum::kind_name() const {
    struct Visitor {
        std::string operator()(const ConstantDatum&) const { return "constant"; }
        std::string operator()(const PowerLawDatum&) const { return "power_law"; }
        std::string operator()(const TruncatedPowerDatum&) const { return "truncated_power"; }
        std::string operator()(const StepDatum&) const { return "step"; }
        std::string operator()(const SampledDatum&) const { return "sampled"; }
    };
    return std::visit(Visitor{}, kind_);
}

std::string ValidationReport::summary() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < violations.size(); ++i) {
        if (i)
            os << "; ";
        os << violations[i];
    }
    return os.str();
}

double eval_datum(const RadialDatum& d, double rho, const BallDomain& dom) {
    if (!(rho > 0.0) || rho > dom.radius)
        throw OutOfDomain("eval_datum: rho outside (0, R]");

    struct Visitor {
        double rho;
        double operator()(const ConstantDatum& c) const { return c.value; }
        double operator()(const PowerLawDatum& p) const {
            return p.amplitude * std::pow(rho, -p.exponent);
        }
        double operator()(const TruncatedPowerDatum& p) const {
            return rho <= p.cutoff ? p.amplitude * std::pow(rho, -p.exponent) : 0.0;
        }
        double operator()(const StepDatum& s) const {
            for (const auto& [r, v] : s.levels)
                if (rho <= r)
                    return v;
            return 0.0;
        }
        double operator()(const SampledDatum& s) const {
            if (s.rho.empty())
                return 0.0;
            if (rho <= s.rho.front())
                return s.value.front();
            if (rho >= s.rho.back())
                return s.value.back();
            const auto it = std::upper_bound(s.rho.begin(), s.rho.end(), rho);
            const std::size_t i = std::size_t(it - s.rho.begin());
            const double t = (rho - s.rho[i - 1]) / (s.rho[i] - s.rho[i - 1]);
            return s.value[i - 1] + t * (s.value[i] - s.value[i - 1]);
        }
    };
    return std::visit(Visitor{rho}, d.kind());
}

ValidationReport validate_datum(const RadialDatum& d, const BallDomain& dom) {
    ValidationReport report;
    auto add_violation = [&report](const std::string& msg) {
        report.violations.push_back(msg);
    };

    struct Visitor {
        const BallDomain& dom;
        decltype(add_violation)& fail;

        void operator()(const ConstantDatum& c) const {
            if (!(c.value >= 0.0))
                fail("constant: value must be nonnegative");
        }
        void operator()(const PowerLawDatum& p) const {
            if (!(p.amplitude > 0.0))
                fail("power_law: amplitude must be positive");
            if (!(p.exponent > 0.0))
                fail("power_law: exponent must be positive");
            if (!(p.exponent < dom.dim))
                fail("power_law: beta >= N (datum not integrable over the ball)");
        }
        void operator()(const TruncatedPowerDatum& p) const {
            (*this)(PowerLawDatum{p.amplitude, p.exponent});
            if (!(p.cutoff > 0.0) || !(p.cutoff < dom.radius))
                fail("truncated_power: cutoff must lie in (0, R)");
        }
        void operator()(const StepDatum& s) const {
            if (s.levels.empty()) {
                fail("step: needs at least one level");
                return;
            }
            double prev_r = 0.0;
            double prev_v = std::numeric_limits<double>::infinity();
            for (const auto& [r, v] : s.levels) {
                if (!(r > prev_r))
                    fail("step: radii must be strictly increasing and positive");
                if (r > dom.radius)
                    fail("step: radius exceeds R");
                if (!(v >= 0.0))
                    fail("step: values must be nonnegative");
                if (v > prev_v)
                    fail("step: values must be nonincreasing");
                prev_r = r;
                prev_v = v;
            }
        }
        void operator()(const SampledDatum& s) const {
            if (s.rho.empty() || s.rho.size() != s.value.size()) {
                fail("sampled: grid must be nonempty with matching lengths");
                return;
            }
            double prev_r = 0.0;
            for (std::size_t i = 0; i < s.rho.size(); ++i) {
                if (!(s.rho[i] > prev_r))
                    fail("sampled: radii must be strictly increasing and positive");
                if (s.rho[i] > dom.radius)
                    fail("sampled: radius exceeds R");
                if (!(s.value[i] >= 0.0))
                    fail("sampled: values must be nonnegative");
                if (i > 0 && s.value[i] > s.value[i - 1])
                    fail("sampled: not nonincreasing");
                prev_r = s.rho[i];
            }
        }
    };
    std::visit(Visitor{dom, add_violation}, d.kind());
    return report;
}

std::vector<double> datum_jump_radii(const RadialDatum& d, const BallDomain& dom) {
    std::vector<double> radii;
    if (const auto* s = std::get_if<StepDatum>(&d.kind())) {
        for (const auto& [r, v] : s->levels)
            if (r < dom.radius)
                radii.push_back(r);
    } else if (const auto* t = std::get_if<TruncatedPowerDatum>(&d.kind())) {
        if (t->cutoff < dom.radius)
            radii.push_back(t->cutoff);
    }
    return radii;
}

} // namespace degenrad
