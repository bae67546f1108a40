#include "degenrad/numerics.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <queue>

namespace degenrad {

void QuadratureConfig::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
        throw Error("quadrature: tolerances must be positive");
    if (max_subdivisions < 1)
        throw Error("quadrature: max_subdivisions must be >= 1");
    if (!(grading_exponent >= 1.0))
        throw Error("quadrature: grading_exponent must be >= 1");
}

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
const double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
const double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
const double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double lo = 0.0;
    double hi = 0.0;
    double integral = 0.0;
    double error = 0.0;
};

bool operator<(const Panel& a, const Panel& b) { return a.error < b.error; }

Panel evaluate_panel(const ScalarFunction& f, double lo, double hi) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);

    double fv_lo[7], fv_hi[7];
    const double fc = f(center);
    if (!std::isfinite(fc))
        throw NonConvergence("adaptive_integrate: non-finite integrand value");

    double resk = kWgk[7] * fc;
    double resg = kWg[3] * fc;
    double resabs = kWgk[7] * std::abs(fc);
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        fv_lo[j] = f(center - dx);
        fv_hi[j] = f(center + dx);
        if (!std::isfinite(fv_lo[j]) || !std::isfinite(fv_hi[j]))
            throw NonConvergence("adaptive_integrate: non-finite integrand value");
        const double sum = fv_lo[j] + fv_hi[j];
        resk += kWgk[j] * sum;
        resabs += kWgk[j] * (std::abs(fv_lo[j]) + std::abs(fv_hi[j]));
        if (j % 2 == 1)
            resg += kWg[(j - 1) / 2] * sum;
    }

    const double mean = 0.5 * resk;
    double resasc = kWgk[7] * std::abs(fc - mean);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::abs(fv_lo[j] - mean) + std::abs(fv_hi[j] - mean));

    Panel p;
    p.lo = lo;
    p.hi = hi;
    p.integral = resk * half;
    resabs *= std::abs(half);
    resasc *= std::abs(half);

    // QUADPACK-style scaled error estimate.
    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    err = std::max(err, 50.0 * DBL_EPSILON * resabs);
    p.error = err;
    return p;
}

} // namespace

double adaptive_integrate(const ScalarFunction& f, double a, double b,
                          const QuadratureConfig& cfg) {
    cfg.validate();
    if (a > b)
        throw InvalidInterval("adaptive_integrate: a > b");
    if (a == b)
        return 0.0;

    // Initial mesh graded toward a, where the supported singularity sits.
    constexpr int kInitialPanels = 8;
    std::priority_queue<Panel> queue;
    double total = 0.0;
    double err_sum = 0.0;
    double prev = a;
    for (int j = 1; j <= kInitialPanels; ++j) {
        const double frac = std::pow(double(j) / kInitialPanels, cfg.grading_exponent);
        double node = a + (b - a) * frac;
        if (j == kInitialPanels)
            node = b;
        if (node <= prev)
            continue;
        Panel p = evaluate_panel(f, prev, node);
        total += p.integral;
        err_sum += p.error;
        queue.push(p);
        prev = node;
    }

    int subdivisions = 0;
    while (err_sum > cfg.abs_tol + cfg.rel_tol * std::abs(total)) {
        if (subdivisions >= cfg.max_subdivisions)
            throw NonConvergence("adaptive_integrate: max_subdivisions exhausted");
        Panel worst = queue.top();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(mid > worst.lo) || !(mid < worst.hi))
            throw NonConvergence("adaptive_integrate: interval too small to split");
        queue.pop();
        total -= worst.integral;
        err_sum -= worst.error;
        Panel left = evaluate_panel(f, worst.lo, mid);
        Panel right = evaluate_panel(f, mid, worst.hi);
        total += left.integral + right.integral;
        err_sum += left.error + right.error;
        queue.push(left);
        queue.push(right);
        ++subdivisions;
    }
    return total;
}

namespace {

/// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= double(n);
    my /= double(n);
    double cov = 0.0, var = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        cov += (x[i] - mx) * (y[i] - my);
        var += (x[i] - mx) * (x[i] - mx);
    }
    return cov / var;
}

} // namespace

DivergenceVerdict divergence_probe(const ScalarFunction& f, double b,
                                   const QuadratureConfig& cfg, int levels) {
    cfg.validate();
    if (!(b > 0.0))
        throw InvalidInterval("divergence_probe: b must be positive");
    if (levels < 6)
        throw Error("divergence_probe: need at least 6 levels");

    std::vector<double> slices(levels);
    DivergenceVerdict verdict;
    verdict.probe_sequence.reserve(levels);
    double acc = 0.0;
    double hi = b;
    for (int k = 1; k <= levels; ++k) {
        const double lo = std::ldexp(b, -k);
        // The integrand is nonnegative; clamp quadrature noise so the nested
        // sequence stays monotone.
        slices[k - 1] = std::max(0.0, adaptive_integrate(f, lo, hi, cfg));
        acc += slices[k - 1];
        verdict.probe_sequence.push_back(acc);
        hi = lo;
    }

    // Fit ln(increment) against ln(scale) over the deepest levels; for
    // f ~ c x^sigma the increments scale like (2^-k)^(sigma+1).
    constexpr int kWindow = 12;
    constexpr double kBorderlineBand = 0.02;
    const double tiny = 1e-305;
    std::vector<double> xs, ys;
    for (int k = std::max(1, levels - kWindow + 1); k <= levels; ++k) {
        if (slices[k - 1] > tiny) {
            xs.push_back(-double(k) * std::log(2.0));
            ys.push_back(std::log(slices[k - 1]));
        }
    }

    if (xs.size() < 3) {
        // The integrand vanishes near the origin: the tail contributes nothing.
        verdict.status = ProbeStatus::Finite;
        verdict.value = acc;
        verdict.singularity_exponent = 0.0;
        return verdict;
    }

    const double slope = fit_slope(xs, ys);
    const double sigma = slope - 1.0;
    verdict.singularity_exponent = sigma;

    if (std::abs(sigma + 1.0) <= kBorderlineBand) {
        verdict.status = ProbeStatus::Inconclusive;
        verdict.value = std::numeric_limits<double>::quiet_NaN();
    } else if (sigma > -1.0) {
        verdict.status = ProbeStatus::Finite;
        // Geometric tail: successive increments shrink by 2^-(sigma+1).
        const double ratio = std::pow(2.0, -(sigma + 1.0));
        verdict.value = acc + slices[levels - 1] * ratio / (1.0 - ratio);
    } else {
        verdict.status = ProbeStatus::Divergent;
        verdict.value = std::numeric_limits<double>::quiet_NaN();
    }
    return verdict;
}

} // namespace degenrad
