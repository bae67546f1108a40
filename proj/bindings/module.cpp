#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <limits>

#include "degenrad/regularity.hpp"
#include "degenrad/verify.hpp"

namespace py = pybind11;
using namespace degenrad;

namespace {

RadialDatum datum_from_kwargs(const std::string& kind, const py::dict& kw) {
    if (kind == "constant")
        return RadialDatum::constant(kw["value"].cast<double>());
    if (kind == "power_law")
        return RadialDatum::power_law(kw["amplitude"].cast<double>(),
                                      kw["exponent"].cast<double>());
    if (kind == "truncated_power")
        return RadialDatum::truncated_power(kw["amplitude"].cast<double>(),
                                            kw["exponent"].cast<double>(),
                                            kw["cutoff"].cast<double>());
    throw py::value_error("unknown datum kind: " + kind);
}

py::dict verdict_dict(const RegularityVerdict& v) {
    py::dict d;
    switch (v.verdict.status) {
    case ProbeStatus::Finite:
        d["status"] = "finite";
        break;
    case ProbeStatus::Divergent:
        d["status"] = "divergent";
        break;
    case ProbeStatus::Inconclusive:
        d["status"] = "inconclusive";
        break;
    }
    d["value"] = v.verdict.value;
    d["singularity_exponent"] = v.verdict.singularity_exponent;
    d["predicted_threshold"] = v.predicted_threshold;
    d["datum_lorentz_r"] = v.datum_lorentz_r;
    d["resolved_by_analytic"] = v.resolved_by_analytic;
    return d;
}

} // namespace

PYBIND11_MODULE(_degenrad, m) {
    m.doc() = "Radial solutions of widely degenerate p-Laplace Dirichlet problems "
              "on a ball, with rearrangement and regularity analysis";

    py::register_exception<Error>(m, "DegenradError", PyExc_RuntimeError);

    m.def("unit_ball_volume", &unit_ball_volume, py::arg("dim"),
          "Lebesgue measure of the unit ball in the given dimension");

    py::class_<BallDomain>(m, "BallDomain")
        .def(py::init<int, double>(), py::arg("dim"), py::arg("radius"))
        .def_readonly("dim", &BallDomain::dim)
        .def_readonly("radius", &BallDomain::radius)
        .def_readonly("unit_volume", &BallDomain::unit_volume)
        .def("measure", &BallDomain::measure);

    py::class_<RadialDatum>(m, "RadialDatum")
        .def_static("constant", &RadialDatum::constant, py::arg("value"))
        .def_static("power_law", &RadialDatum::power_law, py::arg("amplitude"),
                    py::arg("exponent"))
        .def_static("truncated_power", &RadialDatum::truncated_power,
                    py::arg("amplitude"), py::arg("exponent"), py::arg("cutoff"))
        .def_static("step", &RadialDatum::step, py::arg("levels"))
        .def_static("sampled", &RadialDatum::sampled, py::arg("rho"), py::arg("value"))
        .def_static("make",
                    [](const std::string& kind, const py::kwargs& kw) {
                        return datum_from_kwargs(kind, kw);
                    })
        .def_property_readonly("kind", &RadialDatum::kind_name)
        .def("__call__",
             [](const RadialDatum& d, double rho, const BallDomain& dom) {
                 return eval_datum(d, rho, dom);
             },
             py::arg("rho"), py::arg("domain"))
        .def("validate", [](const RadialDatum& d, const BallDomain& dom) {
            return validate_datum(d, dom).violations;
        });

    py::class_<Rearrangement>(m, "Rearrangement")
        .def(py::init([](const RadialDatum& d, const BallDomain& dom) {
                 return Rearrangement(d, dom);
             }),
             py::arg("datum"), py::arg("domain"))
        .def("measure", &Rearrangement::measure)
        .def("fstar", &Rearrangement::fstar, py::arg("s"))
        .def("fstarstar", &Rearrangement::fstarstar, py::arg("t"))
        .def("lorentz_quasinorm",
             [](const Rearrangement& re, double r) {
                 const LorentzNorm n = re.lorentz_quasinorm(r);
                 return n.divergent ? std::numeric_limits<double>::infinity() : n.value;
             },
             py::arg("r"),
             "sup_t t^(1/r) f**(t); returns math.inf when f is not in L^{r,inf}");

    py::class_<HessianEigenvalues>(m, "HessianEigenvalues")
        .def_readonly("radial", &HessianEigenvalues::radial)
        .def_readonly("tangential", &HessianEigenvalues::tangential)
        .def_readonly("frobenius", &HessianEigenvalues::frobenius);

    py::class_<RadialSolution>(m, "RadialSolution")
        .def(py::init([](const BallDomain& dom, const RadialDatum& d, double p, double eps) {
                 return RadialSolution(dom, d, SolverParams{p, eps, {}});
             }),
             py::arg("domain"), py::arg("datum"), py::arg("p"), py::arg("eps") = 0.0)
        .def("m", &RadialSolution::m, py::arg("r"))
        .def("grad_magnitude", &RadialSolution::grad_magnitude, py::arg("r"))
        .def("u", &RadialSolution::solution_value, py::arg("r"))
        .def("z", &RadialSolution::z_field, py::arg("r"))
        .def("g_prime", &RadialSolution::g_prime, py::arg("r"))
        .def("hessian", &RadialSolution::hessian, py::arg("r"))
        .def("linf_gradient_bound", &RadialSolution::linf_gradient_bound);

    m.def("h_alpha", py::overload_cast<double, double>(&h_alpha), py::arg("t"),
          py::arg("alpha"));
    m.def("h_alpha_vec",
          py::overload_cast<const std::vector<double>&, double>(&h_alpha), py::arg("v"),
          py::arg("alpha"));
    m.def("b_fun", &b_fun, py::arg("eps"), py::arg("p"), py::arg("r"));
    m.def("b_inv", &b_inv, py::arg("eps"), py::arg("p"), py::arg("s"));

    m.def("critical_q_gradient", &critical_q_gradient, py::arg("dim"), py::arg("r"),
          py::arg("p"));
    m.def("critical_q_hessian", &critical_q_hessian, py::arg("dim"), py::arg("r"),
          py::arg("p"));
    m.def("critical_r_hp2", &critical_r_hp2, py::arg("dim"), py::arg("p"));

    m.def("lq_norm",
          [](const RadialSolution& sol, const std::string& quantity, double q) {
              const Quantity kind =
                  quantity == "grad" ? Quantity::GradLq : Quantity::HessLq;
              return verdict_dict(lq_norm(sol, kind, q));
          },
          py::arg("solution"), py::arg("quantity"), py::arg("q"));
    m.def("hp2_sobolev_energy",
          [](const RadialSolution& sol) { return verdict_dict(hp2_sobolev_energy(sol)); },
          py::arg("solution"));

    m.def("pde_residual",
          [](const RadialSolution& sol, const std::vector<double>& grid) {
              return pde_residual(sol, grid);
          },
          py::arg("solution"), py::arg("r_grid"));
    m.def("weak_residual",
          [](const RadialSolution& sol, double lo, double hi) {
              return weak_residual(sol, BumpTestFunction{lo, hi});
          },
          py::arg("solution"), py::arg("support_lo"), py::arg("support_hi"));
    m.def("flux_p_invariance",
          [](const RadialDatum& d, const BallDomain& dom, const std::vector<double>& ps) {
              return flux_p_invariance(d, dom, ps);
          },
          py::arg("datum"), py::arg("domain"), py::arg("p_list"));
    m.def("eps_convergence_study",
          [](const RadialDatum& d, const BallDomain& dom, double p,
             const std::vector<double>& eps_list) {
              const ConvergenceReport rep = eps_convergence_study(d, dom, p, eps_list);
              py::dict out;
              out["eps"] = rep.parameter;
              out["E"] = rep.error;
              out["fitted_rate"] = rep.fitted_rate;
              out["bound_ratio"] = rep.bound_ratio;
              return out;
          },
          py::arg("datum"), py::arg("domain"), py::arg("p"), py::arg("eps_list"));
    m.def("p_limit_study",
          [](const RadialDatum& d, const BallDomain& dom, const std::vector<double>& ps,
             const std::vector<double>& grid, double collar) {
              const PLimitReport rep = p_limit_study(d, dom, ps, grid, collar);
              py::dict out;
              out["p"] = rep.p_values;
              out["consecutive_diff"] = rep.consecutive_diff;
              out["sup_diff_vs_limit"] = rep.sup_diff_vs_limit;
              out["z_sup"] = rep.z_sup;
              out["lorentz_hypothesis_holds"] = rep.lorentz_hypothesis_holds;
              out["limit_diverges"] = rep.limit_diverges;
              if (rep.limit_diverges)
                  out["offending_interval"] =
                      py::make_tuple(rep.offending_lo, rep.offending_hi);
              return out;
          },
          py::arg("datum"), py::arg("domain"), py::arg("p_list"), py::arg("r_grid"),
          py::arg("collar") = 0.02);
}
