import math

import pytest

import degenrad as dg


def test_unit_ball_volume():
    assert dg.unit_ball_volume(2) == pytest.approx(math.pi)
    assert dg.unit_ball_volume(3) == pytest.approx(4.0 * math.pi / 3.0)


def test_rearrangement_and_lorentz():
    dom = dg.BallDomain(2, 1.0)
    re = dg.Rearrangement(dg.RadialDatum.constant(2.0), dom)
    assert re.fstar(0.5) == 2.0
    assert re.fstar(4.0) == 0.0
    assert re.fstarstar(2.0 * math.pi) == pytest.approx(1.0)
    assert re.lorentz_quasinorm(2.0) == pytest.approx(2.0 * math.sqrt(math.pi))

    rough = dg.Rearrangement(dg.RadialDatum.power_law(1.0, 1.0), dom)
    assert math.isinf(rough.lorentz_quasinorm(4.0))


def test_radial_solution_profiles():
    dom = dg.BallDomain(2, 1.0)
    sol = dg.RadialSolution(dom, dg.RadialDatum.constant(2.0), p=2.0)
    assert sol.m(0.5) == pytest.approx(0.5)
    assert sol.grad_magnitude(0.5) == pytest.approx(1.5)
    assert sol.u(0.0) == pytest.approx(1.5, abs=1e-9)
    assert sol.u(1.0) == 0.0
    assert sol.z(0.25) == pytest.approx(0.25)
    hess = sol.hessian(0.5)
    assert hess.radial == pytest.approx(-1.0)
    assert hess.tangential == pytest.approx(-3.0)
    assert sol.linf_gradient_bound() == pytest.approx(2.0)


def test_flux_identity_and_b_inverse():
    dom = dg.BallDomain(2, 1.0)
    assert dg.b_inv(0.5, 2.0, 0.25) == pytest.approx(0.5)
    assert dg.b_fun(0.5, 2.0, dg.b_inv(0.5, 2.0, 0.7)) == pytest.approx(0.7)
    dev = dg.flux_p_invariance(dg.RadialDatum.constant(2.0), dom, [1.5, 2.0, 3.0])
    assert dev < 1e-12


def test_regularity_verdicts():
    dom = dg.BallDomain(2, 1.0)
    sol = dg.RadialSolution(dom, dg.RadialDatum.constant(2.0), p=2.0)
    assert dg.critical_q_hessian(2, 2.0, 2.0) == pytest.approx(2.0)
    assert dg.lq_norm(sol, "hessian", 1.9)["status"] == "finite"
    assert dg.lq_norm(sol, "hessian", 2.1)["status"] == "divergent"

    ball3 = dg.BallDomain(3, 1.0)
    fine = dg.RadialSolution(ball3, dg.RadialDatum.power_law(1.0, 1.4), p=2.0)
    assert dg.hp2_sobolev_energy(fine)["status"] == "finite"


def test_validation_errors_surface_as_exceptions():
    dom = dg.BallDomain(2, 1.0)
    bad = dg.RadialDatum.power_law(1.0, 2.5)
    assert bad.validate(dom)  # non-empty violation list
    with pytest.raises(RuntimeError):
        dg.Rearrangement(bad, dom)


def test_p_limit_study():
    dom = dg.BallDomain(2, 1.0)
    grid = [0.05 + 0.95 * i / 63 for i in range(64)]
    rep = dg.p_limit_study(dg.RadialDatum.constant(2.0), dom, [1.5, 1.01], grid)
    assert rep["lorentz_hypothesis_holds"]
    assert rep["z_sup"] == pytest.approx(1.0)
    assert not rep["limit_diverges"]

    diverging = dg.p_limit_study(dg.RadialDatum.constant(4.0), dom, [1.5, 1.1], grid)
    assert diverging["limit_diverges"]
    lo, hi = diverging["offending_interval"]
    assert lo == pytest.approx(0.5, abs=1e-5)
    assert hi == pytest.approx(1.0)
