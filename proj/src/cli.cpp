#include "degenrad/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "degenrad/regularity.hpp"
#include "degenrad/verify.hpp"

namespace degenrad::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct RunConfig {
    int dim = 2;
    double radius = 1.0;
    std::optional<RadialDatum> datum;
    double p = 2.0;
    double eps = 0.0;
    std::vector<double> p_list;
    std::vector<double> eps_list;
    QuadratureConfig quad;
    json sections;

    BallDomain domain() const { return BallDomain(dim, radius); }
    const RadialDatum& the_datum() const { return *datum; }
};

RadialDatum parse_datum(const json& jd) {
    if (!jd.is_object() || !jd.contains("kind"))
        throw ConfigError("datum: kind missing");
    const std::string kind = jd.at("kind").get<std::string>();
    if (kind == "constant")
        return RadialDatum::constant(jd.at("value").get<double>());
    if (kind == "power_law")
        return RadialDatum::power_law(jd.at("amplitude").get<double>(),
                                      jd.at("exponent").get<double>());
    if (kind == "truncated_power")
        return RadialDatum::truncated_power(jd.at("amplitude").get<double>(),
                                            jd.at("exponent").get<double>(),
                                            jd.at("cutoff").get<double>());
    if (kind == "step") {
        std::vector<std::pair<double, double>> levels;
        for (const auto& row : jd.at("levels"))
            levels.emplace_back(row.at(0).get<double>(), row.at(1).get<double>());
        return RadialDatum::step(std::move(levels));
    }
    if (kind == "sampled") {
        std::vector<double> rho, value;
        for (const auto& row : jd.at("grid")) {
            rho.push_back(row.at(0).get<double>());
            value.push_back(row.at(1).get<double>());
        }
        return RadialDatum::sampled(std::move(rho), std::move(value));
    }
    throw ConfigError("datum: unknown kind '" + kind + "'");
}

std::vector<double> parse_list(const json& j) {
    std::vector<double> out;
    for (const auto& v : j)
        out.push_back(v.get<double>());
    return out;
}

RunConfig parse_config(const json& j) {
    RunConfig cfg;
    if (!j.contains("domain"))
        throw ConfigError("domain: missing");
    cfg.dim = j.at("domain").at("N").get<int>();
    cfg.radius = j.at("domain").at("R").get<double>();

    if (!j.contains("datum") || j.at("datum").is_null() ||
        (j.at("datum").is_object() && j.at("datum").empty()))
        throw ConfigError("datum: missing");
    cfg.datum = parse_datum(j.at("datum"));

    if (j.contains("params")) {
        const json& p = j.at("params");
        if (p.contains("p"))
            cfg.p = p.at("p").get<double>();
        if (p.contains("eps"))
            cfg.eps = p.at("eps").get<double>();
        if (p.contains("p_list"))
            cfg.p_list = parse_list(p.at("p_list"));
        if (p.contains("eps_list"))
            cfg.eps_list = parse_list(p.at("eps_list"));
    }
    if (j.contains("quadrature")) {
        const json& q = j.at("quadrature");
        if (q.contains("abs_tol"))
            cfg.quad.abs_tol = q.at("abs_tol").get<double>();
        if (q.contains("rel_tol"))
            cfg.quad.rel_tol = q.at("rel_tol").get<double>();
        if (q.contains("max_subdivisions"))
            cfg.quad.max_subdivisions = q.at("max_subdivisions").get<int>();
        if (q.contains("grading_exponent"))
            cfg.quad.grading_exponent = q.at("grading_exponent").get<double>();
    }
    cfg.sections = j;

    const BallDomain dom = cfg.domain(); // validates N, R
    const ValidationReport report = validate_datum(cfg.the_datum(), dom);
    if (!report.valid())
        throw ConfigError("datum: " + report.summary());
    return cfg;
}

json section(const RunConfig& cfg, const char* name) {
    if (cfg.sections.contains(name))
        return cfg.sections.at(name);
    return json::object();
}

std::ofstream open_output(const fs::path& dir, const std::string& name) {
    fs::create_directories(dir);
    std::ofstream out(dir / name, std::ios::binary);
    if (!out)
        throw Error("cannot open output file: " + (dir / name).string());
    return out;
}

std::vector<double> geometric_grid(double lo, double hi, int n) {
    std::vector<double> grid(n);
    const double ratio = std::pow(hi / lo, 1.0 / (n - 1));
    double v = lo;
    for (int i = 0; i < n; ++i) {
        grid[i] = std::min(v, hi);
        v *= ratio;
    }
    grid.back() = hi;
    return grid;
}

std::string verdict_name(const DivergenceVerdict& v) {
    switch (v.status) {
    case ProbeStatus::Finite:
        return "finite";
    case ProbeStatus::Divergent:
        return "divergent";
    case ProbeStatus::Inconclusive:
        return "inconclusive(probe)";
    }
    return "inconclusive(probe)";
}

double value_or_exponent(const DivergenceVerdict& v) {
    return v.finite() ? v.value : v.singularity_exponent;
}

void cmd_rearrange(const RunConfig& cfg, const fs::path& outdir) {
    const BallDomain dom = cfg.domain();
    const Rearrangement re(cfg.the_datum(), dom, cfg.quad);
    const json sec = section(cfg, "rearrange");
    const int points = sec.value("table_points", 256);
    const double T = re.measure();

    {
        auto out = open_output(outdir, "fstar.csv");
        out << "s,fstar\n";
        for (double s : geometric_grid(T * 1e-4, T, points))
            out << fmt(s) << ',' << fmt(re.fstar(s)) << '\n';
    }
    {
        auto out = open_output(outdir, "fstarstar.csv");
        out << "t,fstarstar\n";
        for (double t : geometric_grid(T * 1e-4, 2.0 * T, points))
            out << fmt(t) << ',' << fmt(re.fstarstar(t)) << '\n';
    }
    {
        std::vector<double> indices{double(dom.dim)};
        if (sec.contains("lorentz_indices"))
            indices = parse_list(sec.at("lorentz_indices"));
        json norms = json::array();
        for (double r : indices) {
            const LorentzNorm norm = re.lorentz_quasinorm(r);
            json entry;
            entry["r"] = r;
            if (norm.divergent)
                entry["divergent"] = true;
            else
                entry["value"] = norm.value;
            norms.push_back(entry);
        }
        json doc;
        doc["norms"] = norms;
        auto out = open_output(outdir, "lorentz.json");
        out << doc.dump(2) << '\n';
    }
}

void cmd_solve(const RunConfig& cfg, const fs::path& outdir) {
    const BallDomain dom = cfg.domain();
    const json sec = section(cfg, "solve");
    const int n = sec.value("grid_points", 512);
    if (n < 2)
        throw ConfigError("solve: grid_points must be >= 2");

    std::vector<double> p_values = cfg.p_list.empty() ? std::vector<double>{cfg.p} : cfg.p_list;
    std::vector<double> eps_values =
        cfg.eps_list.empty() ? std::vector<double>{cfg.eps} : cfg.eps_list;

    const double nan = std::numeric_limits<double>::quiet_NaN();
    auto out = open_output(outdir, "profiles.csv");
    out << "r,m,g,u,lambda_rad,lambda_tan,z,p,eps\n";
    for (double p : p_values) {
        for (double eps : eps_values) {
            const RadialSolution sol(dom, cfg.the_datum(), SolverParams{p, eps, cfg.quad});
            std::vector<double> grid(n);
            for (int i = 0; i < n; ++i)
                grid[i] = dom.radius * double(i) / (n - 1);

            // Accumulate u from the boundary inward, one segment at a time.
            std::vector<double> u(n, 0.0);
            double acc = 0.0;
            double upper = dom.radius;
            for (int i = n - 1; i >= 0; --i) {
                acc += adaptive_integrate(
                    [&](double r) { return sol.grad_magnitude(r); }, grid[i], upper,
                    cfg.quad);
                u[i] = acc;
                upper = grid[i];
            }

            for (int i = 0; i < n; ++i) {
                const double r = grid[i];
                double m = nan, g = nan, z = nan;
                double lam_rad = nan, lam_tan = nan;
                if (r > 0.0) {
                    m = sol.m(r);
                    g = sol.grad_magnitude(r);
                    z = sol.z_field(r);
                    if (eps == 0.0 && r < dom.radius) {
                        const HessianEigenvalues h = sol.hessian(r);
                        lam_rad = h.radial;
                        lam_tan = h.tangential;
                    }
                }
                out << fmt(r) << ',' << fmt(m) << ',' << fmt(g) << ',' << fmt(u[i]) << ','
                    << fmt(lam_rad) << ',' << fmt(lam_tan) << ',' << fmt(z) << ','
                    << fmt(p) << ',' << fmt(eps) << '\n';
            }
        }
    }
}

void cmd_verify(const RunConfig& cfg, const fs::path& outdir) {
    const BallDomain dom = cfg.domain();
    const json sec = section(cfg, "verify");

    // Exact PDE residual on an interior grid.
    const int grid_n = sec.value("residual_grid", 512);
    std::vector<double> pde_grid(grid_n);
    for (int i = 0; i < grid_n; ++i)
        pde_grid[i] = dom.radius * double(i + 1) / (grid_n + 1);
    const RadialSolution base(dom, cfg.the_datum(), SolverParams{cfg.p, 0.0, cfg.quad});
    const double pde_max = pde_residual(base, pde_grid);

    // Weak-form residuals for a catalog of bumps and p values.
    std::vector<std::pair<double, double>> bumps{{0.2 * dom.radius, 0.8 * dom.radius}};
    if (sec.contains("bumps")) {
        bumps.clear();
        for (const auto& row : sec.at("bumps"))
            bumps.emplace_back(row.at(0).get<double>(), row.at(1).get<double>());
    }
    std::vector<double> weak_p{1.5, 2.0, 3.0};
    if (sec.contains("weak_p_list"))
        weak_p = parse_list(sec.at("weak_p_list"));

    auto residuals = open_output(outdir, "residuals.csv");
    residuals << "check,param,value\n";
    residuals << "pde,grid=" << grid_n << ',' << fmt(pde_max) << '\n';
    double weak_max = 0.0;
    for (double p : weak_p) {
        const RadialSolution sol(dom, cfg.the_datum(), SolverParams{p, 0.0, cfg.quad});
        for (const auto& [lo, hi] : bumps) {
            const double res = weak_residual(sol, BumpTestFunction{lo, hi});
            weak_max = std::max(weak_max, std::abs(res));
            residuals << "weak,p=" << fmt(p) << ";support=" << fmt(lo) << '-' << fmt(hi)
                      << ',' << fmt(res) << '\n';
        }
    }

    // Strong L^2 convergence of H_{p/2} along the eps family.
    std::vector<double> eps_list = cfg.eps_list.empty()
                                       ? std::vector<double>{0.4, 0.2, 0.1, 0.05, 0.025}
                                       : cfg.eps_list;
    const ConvergenceReport eps_report =
        eps_convergence_study(cfg.the_datum(), dom, cfg.p, eps_list, cfg.quad);

    // p -> 1 behavior and the flux-field hypothesis.
    std::vector<double> p_list =
        cfg.p_list.empty() ? std::vector<double>{1.5, 1.1, 1.01, 1.001} : cfg.p_list;
    const double r_min = sec.value("p1_r_min", 0.05 * dom.radius);
    const int p1_n = sec.value("p1_grid", 256);
    const double collar = sec.value("collar", 0.02);
    std::vector<double> p1_grid(p1_n);
    for (int i = 0; i < p1_n; ++i)
        p1_grid[i] = r_min + (dom.radius - r_min) * double(i) / (p1_n - 1);
    const PLimitReport p_report =
        p_limit_study(cfg.the_datum(), dom, p_list, p1_grid, collar, cfg.quad);

    auto convergence = open_output(outdir, "convergence.csv");
    convergence << "study,param,error\n";
    for (std::size_t i = 0; i < eps_report.parameter.size(); ++i)
        convergence << "eps," << fmt(eps_report.parameter[i]) << ','
                    << fmt(eps_report.error[i]) << '\n';
    for (std::size_t i = 0; i < p_report.consecutive_diff.size(); ++i)
        convergence << "p," << fmt(p_report.p_values[i + 1]) << ','
                    << fmt(p_report.consecutive_diff[i]) << '\n';

    json summary;
    summary["pde_residual_max"] = pde_max;
    summary["weak_residual_max"] = weak_max;
    summary["eps_study"] = {{"eps", eps_report.parameter},
                            {"E", eps_report.error},
                            {"fitted_rate", eps_report.fitted_rate},
                            {"bound_ratio", eps_report.bound_ratio}};
    summary["p_limit"] = {{"p", p_report.p_values},
                          {"consecutive_diff", p_report.consecutive_diff},
                          {"sup_diff_vs_limit", p_report.sup_diff_vs_limit},
                          {"z_sup", p_report.z_sup},
                          {"fitted_rate", p_report.fitted_rate}};
    summary["lorentz_hypothesis_holds"] = p_report.lorentz_hypothesis_holds;
    json warnings = json::array();
    if (p_report.limit_diverges) {
        warnings.push_back({{"type", "limit_diverges"},
                            {"interval", {p_report.offending_lo, p_report.offending_hi}}});
    }
    summary["warnings"] = warnings;
    auto out = open_output(outdir, "summary.json");
    out << summary.dump(2) << '\n';
}

void cmd_regularity(const RunConfig& cfg, const fs::path& outdir) {
    const BallDomain dom = cfg.domain();
    const json sec = section(cfg, "regularity");
    const RadialSolution sol(dom, cfg.the_datum(), SolverParams{cfg.p, 0.0, cfg.quad});

    auto out = open_output(outdir, "verdicts.csv");
    out << "quantity,param,verdict,value_or_exponent,predicted_threshold,agree,beta_hat,"
           "alpha,alpha_hat\n";

    const auto emit = [&](const std::string& quantity, const RegularityVerdict& v) {
        const double q_hat = v.predicted_threshold;
        std::string verdict = verdict_name(v.verdict);
        std::string agree;
        if (std::isfinite(q_hat) && std::abs(v.exponent_q - q_hat) <= 0.05 * q_hat) {
            verdict = "inconclusive(borderline)";
            agree = "borderline";
        } else {
            const bool expected = v.quantity == Quantity::Hp2Energy
                                      ? v.datum_lorentz_r > q_hat
                                      : v.exponent_q < q_hat;
            agree = v.verdict.finite() == expected ? "true" : "false";
        }
        out << quantity << ',' << fmt(v.exponent_q) << ',' << verdict << ','
            << fmt(value_or_exponent(v.verdict)) << ',' << fmt(q_hat) << ',' << agree
            << ",,,\n";
    };

    const auto default_scan = [](double q_hat) {
        if (!std::isfinite(q_hat))
            return std::vector<double>{1.5, 3.0, 6.0, 12.0, 24.0};
        std::vector<double> qs;
        for (double q = std::max(1.0, 0.25 * q_hat); q <= 4.0 * q_hat; q *= 1.1) {
            if (std::abs(q - q_hat) <= 0.05 * q_hat)
                continue; // skip the borderline collar
            qs.push_back(q);
        }
        return qs;
    };

    std::vector<std::string> quantities{"grad", "hessian"};
    if (cfg.p >= 2.0)
        quantities.push_back("energy");
    if (sec.contains("quantities")) {
        quantities.clear();
        for (const auto& q : sec.at("quantities"))
            quantities.push_back(q.get<std::string>());
    }

    for (const std::string& quantity : quantities) {
        if (quantity == "grad") {
            std::vector<double> qs;
            if (sec.contains("q_grad"))
                qs = parse_list(sec.at("q_grad"));
            else
                qs = default_scan(lq_norm(sol, Quantity::GradLq, 2.0).predicted_threshold);
            for (double q : qs)
                emit("grad", lq_norm(sol, Quantity::GradLq, q));
        } else if (quantity == "hessian") {
            std::vector<double> qs;
            if (sec.contains("q_hessian"))
                qs = parse_list(sec.at("q_hessian"));
            else
                qs = default_scan(lq_norm(sol, Quantity::HessLq, 1.5).predicted_threshold);
            for (double q : qs)
                emit("hessian", lq_norm(sol, Quantity::HessLq, q));
        } else if (quantity == "energy") {
            const RegularityVerdict v = hp2_sobolev_energy(sol);
            const bool expected = v.datum_lorentz_r > v.predicted_threshold;
            out << "energy," << fmt(v.datum_lorentz_r) << ',' << verdict_name(v.verdict)
                << ',' << fmt(value_or_exponent(v.verdict)) << ','
                << fmt(v.predicted_threshold) << ','
                << (v.verdict.finite() == expected ? "true" : "false") << ",,,\n";
        } else {
            throw ConfigError("regularity: unknown quantity '" + quantity + "'");
        }
    }

    // L^infty row: for data in L^{N,infty} the gradient is bounded by the
    // closed-form constant of Corollary 1.3.
    {
        const LorentzNorm norm = sol.rearrangement().lorentz_quasinorm(double(dom.dim));
        if (!norm.divergent) {
            const double bound = sol.linf_gradient_bound();
            double sup_g = 0.0;
            for (int i = 1; i <= 512; ++i)
                sup_g = std::max(sup_g,
                                 sol.grad_magnitude(dom.radius * double(i) / 512.0));
            out << "grad_linf," << fmt(double(dom.dim)) << ",finite," << fmt(bound) << ','
                << fmt(bound) << ',' << (sup_g <= bound * (1.0 + 1e-12) ? "true" : "false")
                << ",,,\n";
        }
    }

    if (sec.contains("beta_list")) {
        const std::vector<double> betas = parse_list(sec.at("beta_list"));
        const auto rows = sharpness_scan(dom.dim, cfg.p, betas, dom.radius, 1.0, cfg.quad);
        for (const auto& row : rows) {
            if (row.has_energy) {
                out << "sharpness_energy," << fmt(row.beta) << ','
                    << verdict_name(row.energy.verdict) << ','
                    << fmt(value_or_exponent(row.energy.verdict)) << ','
                    << fmt(row.beta_hat) << ',' << (row.energy_agrees ? "true" : "false")
                    << ',' << fmt(row.beta_hat) << ',' << fmt(row.alpha) << ','
                    << fmt(row.alpha_hat) << '\n';
            }
            out << "sharpness_hessian," << fmt(row.beta) << ','
                << verdict_name(row.hessian_below.verdict) << '|'
                << verdict_name(row.hessian_above.verdict) << ','
                << fmt(row.hessian_q_hat) << ',' << fmt(row.hessian_q_hat) << ','
                << (row.hessian_agrees ? "true" : "false") << ',' << fmt(row.beta_hat)
                << ',' << fmt(row.alpha) << ',' << fmt(row.alpha_hat) << '\n';
        }
    }
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Radial solutions and regularity analysis of widely degenerate "
                 "p-Laplace Dirichlet problems on a ball"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    const char* names[] = {"rearrange", "solve", "verify", "regularity"};
    const char* descriptions[] = {
        "Tabulate f*, f** and Lorentz quasi-norms",
        "Tabulate the radial solution profiles (m, g, u, Hessian, z)",
        "Check the PDE, the weak form, eps-convergence and the p->1 limit",
        "Probe L^q / Sobolev finiteness against the critical exponents"};
    for (int i = 0; i < 4; ++i) {
        CLI::App* sub = app.add_subcommand(names[i], descriptions[i]);
        sub->add_option("--config", config_path, "JSON run configuration")->required();
        sub->add_option("--out", out_dir, "output directory")->required();
    }

    std::vector<const char*> argv;
    argv.push_back("degenrad");
    for (const auto& a : args)
        argv.push_back(a.c_str());

    try {
        app.parse(int(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "degenrad: " << e.what() << '\n';
        return 2;
    }

    try {
        std::ifstream in(config_path);
        if (!in)
            throw ConfigError("config: cannot open '" + config_path + "'");
        json doc;
        try {
            doc = json::parse(in);
        } catch (const json::exception& e) {
            throw ConfigError(std::string("config: ") + e.what());
        }
        RunConfig cfg;
        try {
            cfg = parse_config(doc);
        } catch (const json::exception& e) {
            throw ConfigError(std::string("config: ") + e.what());
        }

        const std::string command = app.get_subcommands().front()->get_name();
        const fs::path outdir(out_dir);
        if (command == "rearrange")
            cmd_rearrange(cfg, outdir);
        else if (command == "solve")
            cmd_solve(cfg, outdir);
        else if (command == "verify")
            cmd_verify(cfg, outdir);
        else
            cmd_regularity(cfg, outdir);
        return 0;
    } catch (const ConfigError& e) {
        err << "degenrad: " << e.what() << '\n';
        return 2;
    } catch (const InvalidDatum& e) {
        err << "degenrad: " << e.what() << '\n';
        return 2;
    } catch (const InvalidDomain& e) {
        err << "degenrad: " << e.what() << '\n';
        return 2;
    } catch (const InvalidDimension& e) {
        err << "degenrad: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        err << "degenrad: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        err << "degenrad: " << e.what() << '\n';
        return 3;
    }
}

} // namespace degenrad::cli
