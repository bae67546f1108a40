#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "degenrad/rearrangement.hpp"

using namespace degenrad;

namespace {

constexpr double kPi = std::numbers::pi;

const BallDomain& disk() {
    static const BallDomain dom(2, 1.0);
    return dom;
}

/// measure{f* > tau} from the closed form, by bisection on the monotone f*.
double superlevel_measure(const Rearrangement& re, double tau) {
    if (re.fstar(0.0) <= tau)
        return 0.0;
    double lo = 0.0, hi = re.measure();
    if (re.fstar(hi) > tau)
        return hi;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (re.fstar(mid) > tau ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

TEST_CASE("constants rearrange to themselves") {
    const Rearrangement re(RadialDatum::constant(2.0), disk());
    CHECK(re.measure() == doctest::Approx(kPi));
    CHECK(re.fstar(0.5) == 2.0);
    CHECK(re.fstar(kPi * 0.999) == 2.0);
    CHECK(re.fstar(kPi) == 0.0);
    CHECK(re.fstar(4.0) == 0.0);
}

TEST_CASE("power law rearrangement via the radial change of variables") {
    const Rearrangement re(RadialDatum::power_law(1.0, 1.0), disk());
    for (double s : {0.01, 0.3, 1.0, 3.0}) {
        CHECK(re.fstar(s) == doctest::Approx(std::pow(s / kPi, -0.5)).epsilon(1e-13));
    }
    // Oracle: brute-force rearrangement on a 10^6-cell radial grid.
    double worst = 0.0;
    for (int i = 1; i <= 200; ++i) {
        const double s = 0.01 + (kPi - 0.01) * double(i) / 200.0;
        worst = std::max(worst,
                         std::abs(re.fstar(s) - oracle_fstar(re.datum(), disk(), 1000000, s)));
    }
    CHECK(worst < 1e-3);
}

TEST_CASE("step rearrangement has exact level-set measures") {
    const Rearrangement re(RadialDatum::step({{0.5, 3.0}, {1.0, 1.0}}), disk());
    CHECK(re.fstar(0.0) == 3.0);
    CHECK(re.fstar(kPi / 4.0 - 1e-12) == 3.0);
    CHECK(re.fstar(kPi / 4.0) == 1.0); // right-continuous at the jump
    CHECK(re.fstar(kPi - 1e-12) == 1.0);
    CHECK(re.fstar(kPi) == 0.0);
}

TEST_CASE("truncated power vanishes past the cutoff measure") {
    const Rearrangement re(RadialDatum::truncated_power(1.0, 1.0, 0.5), disk());
    CHECK(re.fstar(0.1) == doctest::Approx(std::pow(0.1 / kPi, -0.5)));
    CHECK(re.fstar(kPi / 4.0) == 0.0);
    // Oracle agreement at the jump thanks to the breakpoint-aware grid.
    CHECK(oracle_fstar(re.datum(), disk(), 1000000, kPi / 4.0 + 1e-9) == doctest::Approx(0.0));
}

TEST_CASE("maximal function closed forms") {
    const Rearrangement constant(RadialDatum::constant(2.0), disk());
    CHECK(maximal_function(constant, 1.0) == doctest::Approx(2.0));
    CHECK(maximal_function(constant, 2.0 * kPi) == doctest::Approx(1.0));

    const Rearrangement power(RadialDatum::power_law(1.0, 1.0), disk());
    CHECK(maximal_function(power, kPi) == doctest::Approx(2.0).epsilon(1e-13));
    for (double t : {0.05, 0.8, 2.0}) {
        CHECK(maximal_function(power, t) ==
              doctest::Approx(2.0 * std::pow(t / kPi, -0.5)).epsilon(1e-13));
    }
    // Oracle: adaptive quadrature of the closed-form f*.
    QuadratureConfig quad;
    for (double t : {0.3, 1.5}) {
        const double integral = adaptive_integrate(
            [&](double s) { return power.fstar(s); }, 0.0, t, quad);
        CHECK(maximal_function(power, t) == doctest::Approx(integral / t).epsilon(1e-8));
    }
    CHECK_THROWS_AS(maximal_function(power, 0.0), OutOfDomain);
}

TEST_CASE("f* is dominated by f** and both decrease") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> unif(1e-4, 4.0);
    const RadialDatum data[] = {
        RadialDatum::constant(2.0),
        RadialDatum::power_law(1.0, 1.0),
        RadialDatum::power_law(0.7, 1.4),
        RadialDatum::truncated_power(1.0, 0.8, 0.6),
        RadialDatum::step({{0.3, 5.0}, {0.8, 2.0}}),
    };
    for (const auto& d : data) {
        const Rearrangement re(d, disk());
        for (int trial = 0; trial < 100; ++trial) {
            double a = unif(rng), b = unif(rng);
            if (a > b)
                std::swap(a, b);
            CHECK(re.fstar(a) >= re.fstar(b));
            CHECK(re.fstar(b) <= re.fstarstar(b) * (1.0 + 1e-12) + 1e-300);
            // t -> t f**(t) is the running integral of f*, hence nondecreasing.
            CHECK(a * re.fstarstar(a) <= b * re.fstarstar(b) * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("equimeasurability against the brute-force distribution function") {
    const RadialDatum data[] = {
        RadialDatum::constant(2.0),
        RadialDatum::power_law(1.0, 1.0),
        RadialDatum::step({{0.5, 3.0}, {1.0, 1.0}}),
    };
    for (const auto& d : data) {
        const Rearrangement re(d, disk());
        for (double tau : {0.25, 0.9, 1.7, 2.5}) {
            const double closed = superlevel_measure(re, tau);
            const double brute = oracle_distribution(d, disk(), 200000, tau);
            CHECK(std::abs(closed - brute) < 5e-3);
        }
    }
}

TEST_CASE("rearrangement scales linearly with the datum") {
    const double lambda = 3.25;
    const Rearrangement base(RadialDatum::power_law(1.0, 1.2), disk());
    const Rearrangement scaled(RadialDatum::power_law(lambda, 1.2), disk());
    for (double s : {0.05, 0.4, 2.0})
        CHECK(scaled.fstar(s) == doctest::Approx(lambda * base.fstar(s)).epsilon(1e-13));
    const double r = 5.0 / 3.0;
    CHECK(scaled.lorentz_quasinorm(r).value ==
          doctest::Approx(lambda * base.lorentz_quasinorm(r).value).epsilon(1e-13));
}

TEST_CASE("Lorentz quasi-norms") {
    const Rearrangement constant(RadialDatum::constant(2.0), disk());
    const auto c2 = constant.lorentz_quasinorm(2.0);
    REQUIRE_FALSE(c2.divergent);
    CHECK(c2.value == doctest::Approx(2.0 * std::sqrt(kPi)).epsilon(1e-13));

    const Rearrangement power(RadialDatum::power_law(1.0, 1.0), disk());
    const auto p2 = power.lorentz_quasinorm(2.0);
    REQUIRE_FALSE(p2.divergent);
    CHECK(p2.value == doctest::Approx(2.0 * std::sqrt(kPi)).epsilon(1e-13));
    CHECK(power.lorentz_quasinorm(4.0).divergent);
    CHECK_FALSE(power.lorentz_quasinorm(1.5).divergent);
    CHECK_THROWS_AS(power.lorentz_quasinorm(1.0), InvalidIndex);

    // Step data: compare the breakpoint/critical-point maximum with a scan.
    const Rearrangement step(RadialDatum::step({{0.3, 5.0}, {0.8, 2.0}}), disk());
    for (double r : {1.5, 2.0, 3.0}) {
        const double closed = step.lorentz_quasinorm(r).value;
        double scanned = 0.0;
        for (int i = 1; i <= 20000; ++i) {
            const double t = 2.0 * kPi * double(i) / 20000.0;
            scanned = std::max(scanned, std::pow(t, 1.0 / r) * step.fstarstar(t));
        }
        CHECK(closed >= scanned * (1.0 - 1e-9));
        CHECK(closed <= scanned * (1.0 + 1e-3));
    }
}

TEST_CASE("sampled data fall back to quadrature and scanning") {
    const auto sampled = RadialDatum::sampled({0.2, 0.5, 1.0}, {2.0, 2.0, 2.0});
    const Rearrangement re(sampled, disk());
    // A constant sample grid behaves exactly like the constant datum.
    const Rearrangement constant(RadialDatum::constant(2.0), disk());
    for (double t : {0.3, 1.0, 2.0, 4.0})
        CHECK(re.fstarstar(t) == doctest::Approx(constant.fstarstar(t)).epsilon(1e-8));
    CHECK(re.lorentz_quasinorm(2.0).value ==
          doctest::Approx(constant.lorentz_quasinorm(2.0).value).epsilon(1e-6));
}

TEST_CASE("oracle table covers the catalog within 1e-3") {
    const RadialDatum data[] = {
        RadialDatum::constant(2.0),
        RadialDatum::power_law(1.0, 1.0),
        RadialDatum::truncated_power(1.0, 1.0, 0.5),
        RadialDatum::step({{0.5, 3.0}, {1.0, 1.0}}),
    };
    for (const auto& d : data) {
        const Rearrangement re(d, disk());
        const OracleTable table = rearrangement_oracle(d, disk(), 1000000, 512);
        double worst = 0.0;
        for (std::size_t i = 0; i < table.s.size(); ++i) {
            if (table.s[i] < 0.01 * table.measure)
                continue;
            worst = std::max(worst, std::abs(table.fstar[i] - re.fstar(table.s[i])));
        }
        CHECK(worst < 1e-3);
    }
    CHECK_THROWS_AS(rearrangement_oracle(RadialDatum::constant(1.0), disk(), 10), Error);
}

TEST_CASE("invalid data are rejected at construction") {
    CHECK_THROWS_AS(Rearrangement(RadialDatum::power_law(1.0, 2.5), disk()), InvalidDatum);
}
