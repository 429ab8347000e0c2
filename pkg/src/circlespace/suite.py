"""The invariant suite run by ``circlespace verify``.

Each check returns a :class:`CheckResult` holding the worst observed value,
the threshold it was held to, and the wall time.  ``scale`` shrinks the
sample counts for quick runs.
"""

import time
from dataclasses import dataclass, field

import numpy as np

from . import circles, fibration, foliation, moebius, projective, quaternion, tangent
from .errors import CircleSpaceError


@dataclass
class CheckResult:
    name: str
    passed: bool
    value: float
    threshold: float
    seconds: float = 0.0
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        self.passed = bool(self.passed)
        self.value = float(self.value)

    def to_dict(self):
        return {"name": self.name, "passed": self.passed, "value": self.value,
                "threshold": self.threshold, "seconds": round(self.seconds, 3),
                "details": self.details}


def _random_imaginary(rng, n):
    mu = rng.standard_normal((n, 4))
    mu[:, 0] = 0.0
    return mu / np.linalg.norm(mu, axis=1, keepdims=True)


def check_forms(rng, n=10_000):
    v = rng.standard_normal((n, 2, 4))
    w = rng.standard_normal((n, 2, 4))
    worst = float(np.max(quaternion.decomposition_defect(v, w)))
    om = quaternion.OMEGA
    skew = float(np.max(np.abs(om + om.T)))
    nondeg = abs(np.linalg.det(om)) > 0.5
    return CheckResult("form decomposition", worst < 1e-12 and skew == 0 and nondeg, worst, 1e-12,
                       details={"omega_skew_defect": skew, "omega_det": float(abs(np.linalg.det(om)))})


def check_tangent_round_trip(rng, n=10_000):
    x = projective.random_s3(rng, n)
    mu = _random_imaginary(rng, n)
    # dense sweep towards the branch point mu = -i
    m = n // 4
    eps = np.logspace(-12, -1, m)
    near = -quaternion.I + eps[:, None] * _random_imaginary(rng, m)
    mu[:m] = near / np.linalg.norm(near, axis=1, keepdims=True)
    back = tangent.line_to_tangent(tangent.tangent_to_line((x, mu)))
    err = max(float(np.max(np.abs(back.x - x))), float(np.max(np.abs(back.mu - mu))))
    return CheckResult("tangent/quadric round trip", err < 1e-9, err, 1e-9)


def _unit_lines(t):
    u = tangent.tangent_to_line(t)
    return u / np.linalg.norm(u, axis=-1, keepdims=True)


def check_cotangency(rng, n=1000):
    worst = 0.0
    for _ in range(n):
        k = circles.random_circle(rng)
        t = circles.parametrize_circle(k, thetas=rng.uniform(0, 2 * np.pi, 2))
        u = _unit_lines(t)
        worst = max(worst, float(abs(quaternion.omega(u[0], u[1]))))
    x = projective.random_s3(rng, (2, n))
    mu = _random_imaginary(rng, 2 * n).reshape(2, n, 4)
    u = _unit_lines((x, mu))
    sep = np.abs(quaternion.omega(u[0], u[1]))
    frac = float(np.mean(sep > 1e-3))
    return CheckResult("cotangent pairs are Omega-orthogonal", worst < 1e-9 and frac >= 0.99,
                       worst, 1e-9, details={"separated_fraction": frac})


def check_circle_through_points(rng, n=1000):
    worst = 0.0
    for _ in range(n):
        pts = projective.random_s3(rng, 3)
        k, _ = circles.circle_through_points(*pts)
        thetas = [circles.circle_parameter(k, p) for p in pts]
        xs = circles.parametrize_circle(k, thetas=thetas).x
        d = projective.distance(projective.s3_line(xs), projective.s3_line(pts))
        worst = max(worst, float(np.max(d)))
    return CheckResult("circle through three points", worst < 1e-7, worst, 1e-7)


def check_real_basis():
    b = circles.canonical_real_basis()
    gram_dev = float(np.max(np.abs(b.gram() - circles.ETA)))
    sigma_dev = float(np.max(np.abs(circles.sigma(b.e) - b.e)))
    return CheckResult("real basis Gram form", gram_dev < 1e-12 and sigma_dev < 1e-12,
                       gram_dev, 1e-12, details={"sigma_defect": sigma_dev})


def degree_two_curve():
    """A null curve of degree two; it covers generic points twice."""
    e = fibration.E
    return fibration.FibrationCurve(np.array([e[3] + 1j * e[4], 0 * e[0], e[1] + 1j * e[2]]))


def check_hopf_degree(samples=1000):
    hopf = fibration.hopf_curve()
    deg = fibration.curve_degree(hopf)
    report = fibration.validate_fibration(hopf, samples=samples)
    bad = fibration.validate_fibration(degree_two_curve(), samples=samples)
    ok = deg == 1 and report.passed and not bad.passed
    return CheckResult("Hopf curve has degree one", ok, float(deg), 1.0,
                       details={"hopf_valid": report.passed, "degree_two_rejected": not bad.passed})


def check_normalization(n=100):
    hopf = fibration.hopf_curve()
    worst = 0.0
    failures = 0
    for seed in range(n):
        g = moebius.induced_on_W(moebius.random_conformal(seed))
        try:
            worst = max(worst, fibration.normalize_curve(hopf.pushforward(g)).residual)
        except CircleSpaceError:
            failures += 1
    return CheckResult("normalization of conformal images", failures == 0 and worst < 1e-8,
                       worst, 1e-8, details={"failures": failures})


def check_z4_pipeline(rng, n_leaves=64, n_points=100):
    field_ = foliation.surface_distribution("z4")
    leaves = foliation.integrate_leaves(field_, projective.random_s3(rng, n_leaves))
    closure = max(leaf.closure_error for leaf in leaves)
    all_closed = all(leaf.closed for leaf in leaves)
    circle_dev = max(foliation.leaf_is_circle(leaf)[1] for leaf in leaves)
    conf = max(tangent.conformality_residual(field_, x) for x in projective.random_s3(rng, n_points))
    curve, _ = fibration.fit_curve([foliation.leaf_circle(leaf) for leaf in leaves])
    deg = fibration.curve_degree(curve)
    sign = fibration.normalize_curve(curve).sign
    ok = all_closed and closure < 1e-6 and circle_dev < 1e-6 and conf < 1e-5 and deg == 1
    return CheckResult("z4 surface foliation", ok, max(closure, circle_dev), 1e-6,
                       details={"closure_error": closure, "circle_deviation": circle_dev,
                                "conformality_residual": conf, "degree": deg,
                                "normalization_sign": sign})


def check_equivariance(rng, n=100):
    hopf = fibration.hopf_curve()
    inc = tan = 0.0
    degree_ok = True
    for seed in range(n):
        phi = moebius.random_conformal(1000 + seed)
        pts = projective.random_s3(rng, 3)
        k, _ = circles.circle_through_points(*pts)
        y = moebius.act_on_point(phi, pts[0])
        k2 = moebius.act_on_circle(phi, k)
        inc = max(inc, float(circles.incidence_value(y, k2)))
        t = moebius.act_on_tangent(phi, circles.tangent_at(k, pts[0]))
        t2 = circles.tangent_at(k2, y)
        tan = max(tan, float(np.max(np.abs(t.x - t2.x))), float(np.max(np.abs(t.mu - t2.mu))))
        g = moebius.induced_on_W(phi)
        degree_ok &= fibration.curve_degree(hopf.pushforward(g)) == 1
    worst = max(inc, tan)
    return CheckResult("conformal equivariance", worst < 1e-8 and degree_ok, worst, 1e-8,
                       details={"incidence": inc, "tangency": tan, "degree_preserved": bool(degree_ok)})


def run_suite(seed=0, scale=1.0):
    """Run every check; sample counts are multiplied by ``scale``."""
    rng = np.random.default_rng(seed)

    def count(n):
        return max(4, int(round(n * scale)))

    checks = [
        ("form decomposition", lambda: check_forms(rng, count(10_000))),
        ("tangent/quadric round trip", lambda: check_tangent_round_trip(rng, count(10_000))),
        ("cotangent pairs are Omega-orthogonal", lambda: check_cotangency(rng, count(1000))),
        ("circle through three points", lambda: check_circle_through_points(rng, count(1000))),
        ("real basis Gram form", check_real_basis),
        ("Hopf curve has degree one", lambda: check_hopf_degree(count(1000))),
        ("normalization of conformal images", lambda: check_normalization(count(100))),
        ("z4 surface foliation", lambda: check_z4_pipeline(rng, count(64), count(100))),
        ("conformal equivariance", lambda: check_equivariance(rng, count(100))),
    ]
    results = []
    for name, check in checks:
        t0 = time.perf_counter()
        try:
            r = check()
        except CircleSpaceError as exc:
            r = CheckResult(name, False, float("nan"), float("nan"),
                            details={"error": type(exc).__name__, "message": str(exc)})
        r.seconds = time.perf_counter() - t0
        results.append(r)
    return results
