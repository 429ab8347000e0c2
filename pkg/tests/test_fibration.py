import json

import numpy as np
import pytest

from circlespace.circles import canonical_real_basis, from_w, incidence_value, parametrize_circle
from circlespace.errors import CurveFitError, NotDegreeOne, ZeroCurve
from circlespace.fibration import (E, FibrationCurve, curve_degree, fit_curve, hopf_curve,
                                   incidence_polynomial, normalize_curve, reduce_curve,
                                   validate_fibration)
from circlespace.moebius import induced_on_W, random_conformal, reflection
from circlespace.projective import proj_equal, random_s3
from circlespace.quaternion import I, J, ONE
from circlespace.suite import degree_two_curve

E23 = np.eye(6)[3]
E24 = np.eye(6)[4]
HOPF_W = np.array([E[3] + 1j * E[4], E[1] + 1j * E[2]])


def null_conic():
    """``(1 - z^2) e1 + i (1 + z^2) e2 + 2 z e3``: null and spanning three dimensions."""
    return FibrationCurve([E[1] + 1j * E[2], 2 * E[3], -E[1] + 1j * E[2]])


def test_hopf_coefficients_as_bivectors():
    c = hopf_curve().coeffs
    assert np.allclose(from_w(c[0]), -np.sqrt(2) * E23)
    assert np.allclose(from_w(c[1]), np.sqrt(2) * E24)
    assert np.allclose(hopf_curve(canonical_real_basis()).coeffs, c)


def test_hopf_circles_are_the_right_multiplication_orbits():
    k0 = hopf_curve().circle_at((0, 1))
    t = parametrize_circle(k0, n=8)
    assert np.allclose(t.x[:, :2], 0)          # the fiber {j e^{it}}
    assert np.allclose(t.mu, I)                 # along x -> x e^{it}


def test_degree_examples():
    assert curve_degree(hopf_curve()) == 1
    v = E[3] + 1j * E[4]
    assert curve_degree(FibrationCurve([v])) == 0
    assert curve_degree(FibrationCurve([v, 2 * v])) == 0
    assert reduce_curve(FibrationCurve([v, 2 * v])).n == 0
    # (1 + z) * hopf
    h = HOPF_W
    c = FibrationCurve([h[0], h[0] + h[1], h[1]])
    assert curve_degree(c) == 1
    r = reduce_curve(c)
    assert r.n == 1
    assert proj_equal(r.coeffs.ravel(), h.ravel(), tol=1e-9)
    with pytest.raises(ZeroCurve):
        curve_degree(FibrationCurve([0 * v]))


def test_null_polynomial():
    assert hopf_curve().null_defect() == 0
    assert FibrationCurve([E[0], E[1]]).null_defect() > 0.1


def test_incidence_polynomial_examples():
    p = incidence_polynomial(ONE, hopf_curve())
    assert p.degree() == 0 or abs(p.coef[1]) < 1e-12   # root at infinity, [1:0]
    p = incidence_polynomial(J, hopf_curve())
    assert abs(p.coef[0]) < 1e-12 and abs(p.coef[1]) > 0.1


def test_validate_examples():
    report = validate_fibration(hopf_curve(), samples=1000)
    assert report.passed and report.degree == 1 and not report.failures
    assert not validate_fibration(FibrationCurve([E[3] + 1j * E[4]]), samples=10).passed
    bad = validate_fibration(degree_two_curve(), samples=200)
    assert not bad.passed
    assert bad.failures[0]["reason"] == "point lies on several circles"
    assert len(bad.failures) <= 21
    json.dumps(bad.to_dict())
    assert not validate_fibration(FibrationCurve([E[0], E[1]]), samples=10).passed
    conic = null_conic()
    assert conic.null_defect() < 1e-15 and curve_degree(conic) == 2
    assert not validate_fibration(conic, samples=50).passed


def test_normalize_identity():
    n = normalize_curve(hopf_curve())
    assert np.allclose(n.isometry.g, np.eye(5))
    assert np.allclose(n.mobius, np.eye(2))
    assert n.sign == 1 and n.residual < 1e-14


def test_normalize_random_pushforwards():
    for seed in range(20):
        g = induced_on_W(random_conformal(seed))
        n = normalize_curve(hopf_curve().pushforward(g))
        assert n.residual < 1e-8 and n.sign == 1
        assert n.isometry.defect() < 1e-9


def test_normalize_reflected_curve_has_negative_sign():
    curve = hopf_curve().pushforward(reflection())
    n = normalize_curve(curve)
    assert n.sign == -1 and n.residual < 1e-12


def test_normalize_reparametrized_curve(rng):
    m = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    curve = hopf_curve().pushforward(induced_on_W(random_conformal(5))).reparametrize(m)
    assert normalize_curve(curve).residual < 1e-8


def test_normalize_rejects_higher_degree():
    with pytest.raises(NotDegreeOne):
        normalize_curve(degree_two_curve())


def test_fit_curve_recovers_hopf(rng):
    curve = hopf_curve().pushforward(induced_on_W(random_conformal(9)))
    z = rng.standard_normal(10) + 1j * rng.standard_normal(10)
    circles = from_w(curve(z))
    fitted, residual = fit_curve(circles)
    assert residual < 1e-10 and curve_degree(fitted) == 1
    assert normalize_curve(fitted).residual < 1e-8
    # a double cover of a degree-one curve still spans a plane
    doubled, _ = fit_curve(from_w(degree_two_curve()(z)))
    assert curve_degree(doubled) == 1
    with pytest.raises(CurveFitError):
        fit_curve(from_w(null_conic()(z)))


def test_every_point_lies_on_its_fiber(rng):
    curve = hopf_curve()
    for x in random_s3(rng, 10):
        (root,) = incidence_polynomial(x, curve).roots() if curve_degree(curve) else ()
        assert incidence_value(x, from_w(curve(root))) < 1e-10


def test_json_round_trip():
    c = hopf_curve().pushforward(induced_on_W(random_conformal(1)))
    back = FibrationCurve.from_json(json.loads(json.dumps(c.to_json())))
    assert np.array_equal(back.coeffs, c.coeffs)
    with pytest.raises(ValueError):
        FibrationCurve.from_json([[1, 2, 3]])
