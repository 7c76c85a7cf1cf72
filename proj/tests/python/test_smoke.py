import cmath
import json
import math

import pytest

import pcub


def test_norm_of_monomial():
    for j in range(-4, 5):
        want = math.sqrt(2 * math.pi * (1 + 4.0**j))
        assert pcub.h2_norm({j: 1.0}, 1.0, 2.0) == pytest.approx(want, rel=1e-14)


def test_kernel_matches_geometric_series():
    z, tau = 1.2 + 0.3j, 2.0
    assert pcub.kernel(0, 3, z, tau) == pytest.approx(1 / (1 - z / tau), rel=1e-14)
    assert pcub.kernel(1, 3, 2.0, 1.0, "inner") == pytest.approx(0.25)
    assert abs(pcub.kernel(7, 5, z, tau) - pcub.kernel_series(7, 5, z, tau)) < 1e-13
    with pytest.raises(pcub.DomainError):
        pcub.kernel(0, 3, 2.5, 2.0)


def test_lebesgue_rule_is_exact():
    mu = pcub.RadialMeasure(1.0, 2.0, density=[1.0])
    nodes, weights = pcub.gauss_rule(mu, k=0, d=3, N=1)
    assert len(nodes) == 2 and all(w > 0 for w in weights)
    exps = pcub.basis_exponents(0, 3, 2)
    for e, m in zip(exps, mu.moments(exps)):
        assert sum(w * t**e for t, w in zip(nodes, weights)) == pytest.approx(m, rel=1e-12)


def test_degenerate_measure():
    mu = pcub.RadialMeasure(1.0, 2.0, atoms=[(1.5, 1.0)])
    with pytest.raises(pcub.DegenerateMeasure):
        pcub.gauss_rule(mu, k=2, d=3, N=1)
    assert issubclass(pcub.DegenerateMeasure, pcub.DomainError)


def test_interpolation_round_trip():
    exps = pcub.basis_exponents(1, 3, 2)
    coef = [0.5, -1.0, 0.25, 2.0]
    nodes = [1.1, 1.35, 1.6, 1.9]
    values = [sum(c * t**e for c, e in zip(coef, exps)) for t in nodes]
    assert pcub.interpolate(1, 3, 2, nodes, values) == pytest.approx(coef, abs=1e-12)


def test_reproduce_component():
    coeffs = {1: 1.0 + 0.5j, -2: 0.3, 4: -0.2j}
    z = cmath.rect(1.4, 0.7)
    exact = sum(c * z**j for j, c in coeffs.items())
    assert abs(pcub.reproduce_component(1, 3, coeffs, z, 1.0, 2.0) - exact) < 1e-12


def test_cubature_and_report():
    measure = {(0, 1): pcub.RadialMeasure(1.0, 2.0, density=[1.0]),
               (1, 2): pcub.RadialMeasure(1.0, 2.0, atoms=[(1.2, 0.5), (1.5, 0.25), (1.7, 1.0)], density=[0.1])}
    f = {(0, 1): {0: 1.0, 2: 0.5, 5: -1.0}, (1, 2): {-2: 1.0j, 3: 0.25}}
    value = pcub.cubature(f, measure, d=3, L=2.0, a=1.0, b=2.0, N=2)
    report = pcub.error_report(f, measure, d=3, L=2.0, a=1.0, b=2.0, N=2, M_tau=128)
    assert report["abs_error"] < 1e-12
    assert report["passed"]
    assert complex(report["cubature"]["re"], report["cubature"]["im"]) == pytest.approx(value)
    with pytest.raises(pcub.DomainError):
        pcub.cubature({(2, 1): {0: 1.0}}, measure, d=3, L=2.0, a=1.0, b=2.0, N=1)


def test_harmonics():
    assert [pcub.dim_harmonics(3, k) for k in range(4)] == [1, 3, 5, 7]
    north = [0.0, 0.0, 1.0]
    k = 3
    assert pcub.eval_harmonic(3, k, pcub.zonal_order(3, k), north) == pytest.approx(math.sqrt((2 * k + 1) / (4 * math.pi)))


def test_ingest_recovers_components():
    def F(r, theta):
        return r**2 + 0.5 * theta[2] / r**2

    f = pcub.ingest_function(F, d=3, L=2.0, k_max=2, a=1.0, b=2.0, j_min=-4, j_max=4)
    assert set(f) == {(0, 1), (1, 2)}
    assert f[(0, 1)][2] == pytest.approx(math.sqrt(4 * math.pi), rel=1e-8)


def test_verify_and_cli():
    results = pcub.verify(suites=["kernels", "hardy"])
    assert sorted(r["name"] for r in results) == ["hardy", "kernels"]
    assert all(r["passed"] for r in results)
    code, out, err = pcub.run_cli(["verify", "--suite", "sphere"])
    assert code == 0, err
    assert json.loads(out)["passed"]
    code, _, _ = pcub.run_cli(["rule"])
    assert code == 1
