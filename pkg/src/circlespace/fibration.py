"""Fibration curves CP^1 -> Q^3 and the classification of circle fibrations.

A fibration curve is a polynomial ``gamma(z) = sum_k z^k v_k`` with
coefficients in ``W`` (real-basis coordinates, complex 5-vectors), taken
projectively.  Each parameter gives an oriented circle; the curve describes
a fibration of S^3 when every point lies on exactly one of them.  The
degree-one curves that do are exactly the conformal images of the Hopf
curve ``[z (e1 + i e2) + w (e3 + i e4)]``, and :func:`normalize_curve`
computes the conformal transformation and reparametrization that exhibit
this.
"""

from dataclasses import dataclass, field

import numpy as np

from . import binary, projective, tolerances
from .circles import ETA, G_w, REAL_BASIS, from_w, point_circle, to_w
from .errors import (CurveFitError, NormalizationFailed, NotDegreeOne,
                     ZeroCurve)
from .moebius import WIsometry
from .projective import random_s3

E = np.eye(5)
HOPF_COEFFS = np.array([E[3] + 1j * E[4], E[1] + 1j * E[2]])

# fixed generic weights for the random-combination gcd test
_GCD_WEIGHTS = np.array([0.613 - 0.271j, -0.388 + 0.902j, 0.217 + 0.455j,
                         0.846 - 0.117j, -0.534 - 0.692j])


@dataclass(frozen=True)
class FibrationCurve:
    coeffs: np.ndarray   # (n + 1, 5) complex

    def __post_init__(self):
        c = np.atleast_2d(np.asarray(self.coeffs, dtype=complex))
        if c.shape[-1] != 5:
            raise ValueError("coefficients must be 5-vectors in W coordinates")
        norms = np.linalg.norm(c, axis=1)
        top = np.max(norms, initial=0.0)
        keep = len(c)
        while keep > 1 and norms[keep - 1] <= 1e-14 * top:
            keep -= 1
        object.__setattr__(self, "coeffs", c[:keep].copy())

    @property
    def n(self):
        """Formal degree (number of coefficients minus one)."""
        return len(self.coeffs) - 1

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        powers = z[..., None] ** np.arange(self.n + 1)
        return powers @ self.coeffs

    def homogeneous(self, z, w):
        k = np.arange(self.n + 1)
        z = np.asarray(z, dtype=complex)[..., None]
        w = np.asarray(w, dtype=complex)[..., None]
        return (z ** k * w ** (self.n - k)) @ self.coeffs

    def circle_at(self, point):
        """Bivector of the circle at a parameter pair ``(z, w)``."""
        return from_w(self.homogeneous(*point))

    def null_polynomial(self):
        """Coefficients of ``G(gamma(z), gamma(z))`` in ascending powers."""
        n = self.n
        out = np.zeros(2 * n + 1, dtype=complex)
        for j in range(n + 1):
            for k in range(n + 1):
                out[j + k] += G_w(self.coeffs[j], self.coeffs[k])
        return out

    def null_defect(self):
        scale = np.sum(np.abs(self.coeffs) ** 2)
        return float(np.max(np.abs(self.null_polynomial())) / scale)

    def pushforward(self, g):
        return FibrationCurve(g.apply(self.coeffs))

    def reparametrize(self, m):
        """Curve ``gamma'`` with ``gamma'(Z, W) = gamma(m^{-1} (Z, W))``."""
        ninv = np.linalg.inv(np.asarray(m, dtype=complex))
        # z = n00 Z + n01 W,  w = n10 Z + n11 W; substitute takes U with (z, w) = U (Z, W)
        c = binary.substitute(self.coeffs, ninv)
        return FibrationCurve(c)

    def to_json(self):
        return [[[float(v.real), float(v.imag)] for v in row] for row in self.coeffs]

    @classmethod
    def from_json(cls, data):
        arr = np.asarray(data, dtype=float)
        if arr.ndim != 3 or arr.shape[1:] != (5, 2):
            raise ValueError("curve JSON must be a list of 5 [re, im] pairs per coefficient")
        return cls(arr[..., 0] + 1j * arr[..., 1])


def hopf_curve(basis=None):
    """The standard curve ``gamma(z) = (e3 + i e4) + z (e1 + i e2)``.

    With a custom real basis the curve is expressed through that basis and
    converted to canonical coordinates.
    """
    if basis is None:
        return FibrationCurve(HOPF_COEFFS)
    e = to_w(basis.e)
    return FibrationCurve(np.array([e[3] + 1j * e[4], e[1] + 1j * e[2]]))


def _derivative_ratio(p, t, j):
    """``|p^(j)(t)| / sum_k |c_k| |d^j t^k|`` for a vector polynomial p (ascending)."""
    n = len(p) - 1
    num = np.zeros(p.shape[1], dtype=complex)
    den = 0.0
    for k in range(j, n + 1):
        fac = np.prod(np.arange(k - j + 1, k + 1)) if j else 1.0
        num += fac * t ** (k - j) * p[k]
        den += fac * abs(t) ** (k - j) * np.linalg.norm(p[k])
    return np.linalg.norm(num) / den if den else 0.0


def _common_roots(curve, tol):
    """Common roots of the coordinate polynomials in a generic chart ``s``.

    Returns ``(u, p, [(s_i, multiplicity)])`` where ``p`` are the coefficients
    in the chart ``(z, w) = u (s, 1)``.
    """
    rts = binary.roots(curve.coeffs @ _GCD_WEIGHTS, merge_tol=tol)
    u = binary.chart(binary._CHART_PARAMS[0])
    p = binary.substitute(curve.coeffs, u)
    if not rts:
        return u, p, []
    uinv = np.linalg.inv(u)
    common = []
    for point, mult in rts:
        s_, t_ = uinv @ point
        if abs(t_) < 1e-12:
            continue  # would be a root at infinity of the chart; not generic
        s = s_ / t_
        m = 0
        while m < mult and _derivative_ratio(p, s, m) < tol:
            m += 1
        if m:
            common.append((s, m))
    return u, p, common


def reduce_curve(curve, tol=None):
    """Divide out the common factor of the coordinate polynomials."""
    tol = tolerances.current().gcd if tol is None else tol
    if not np.any(curve.coeffs):
        raise ZeroCurve("all coefficients vanish")
    if curve.n == 0:
        return curve
    u, p, common = _common_roots(curve, tol)
    if not common:
        return curve
    q = p
    for s, m in common:
        for _ in range(m):
            cols = [np.polydiv(q[::-1, i], np.array([1.0, -s]))[0][::-1] for i in range(5)]
            q = np.stack(cols, axis=1)
    return FibrationCurve(binary.substitute(q, np.linalg.inv(u)))


def curve_degree(curve, tol=None):
    """Degree of the curve after removing common factors."""
    tol = tolerances.current().gcd if tol is None else tol
    if not np.any(np.abs(curve.coeffs) > 0):
        raise ZeroCurve("all coefficients vanish")
    if curve.n == 0:
        return 0
    _, _, common = _common_roots(curve, tol)
    return curve.n - sum(m for _, m in common)


def _unit_point_circles(points):
    c = to_w(point_circle(points)).real
    return c / np.linalg.norm(c, axis=-1, keepdims=True)


def incidence_polynomial(x, curve):
    """``z -> G(point_circle(x), gamma(z))`` with a unit point-circle representative."""
    pc = _unit_point_circles(x)
    return np.polynomial.Polynomial(G_w(pc, curve.coeffs), symbol="z")


@dataclass
class FibrationReport:
    passed: bool
    degree: int
    samples: int
    null_defect: float
    failures: list = field(default_factory=list)

    def to_dict(self):
        return {"passed": self.passed, "degree": self.degree, "samples": self.samples,
                "null_defect": self.null_defect, "n_failures": len(self.failures),
                "failures": self.failures}


def validate_fibration(curve, samples=1000, seed=0, max_failures=20):
    """Check that random points of S^3 lie on exactly one circle of the curve.

    A sampled point passes when its incidence form has a single distinct
    root on CP^1 and the circle there is not a point circle.
    """
    tol = tolerances.current()
    defect = curve.null_defect()
    try:
        reduced = reduce_curve(curve)
    except ZeroCurve:
        return FibrationReport(False, -1, 0, defect, [{"reason": "zero curve"}])
    n = reduced.n
    report = FibrationReport(True, n, samples, defect)
    if defect > tol.null:
        report.passed = False
        report.failures.append({"reason": "curve is not null", "defect": defect})
        return report
    if n == 0:
        report.passed = False
        report.failures.append({"reason": "constant curve: a single circle cannot cover S^3"})
        return report
    rng = np.random.default_rng(seed)
    pts = random_s3(rng, samples)
    forms = G_w(_unit_point_circles(pts)[:, None, :], reduced.coeffs[None, :, :])
    scale = np.sqrt(np.sum(np.abs(reduced.coeffs) ** 2))
    n_fail = 0
    for x, a in zip(pts, forms):
        problem = None
        if binary.is_zero_form(a, scale):
            problem = {"reason": "point lies on every circle"}
        else:
            rts = binary.roots(a, merge_tol=tol.root_merge)
            if len(rts) != 1:
                problem = {"reason": "point lies on several circles",
                           "roots": [_root_json(p) for p, _ in rts],
                           "multiplicities": [m for _, m in rts]}
            else:
                k = reduced.circle_at(rts[0][0])
                if projective.distance(np.conj(reduced.homogeneous(*rts[0][0])),
                                       reduced.homogeneous(*rts[0][0])) < tol.real:
                    problem = {"reason": "fiber through point is a point circle",
                               "circle": [[float(c.real), float(c.imag)] for c in k]}
        if problem:
            n_fail += 1
            if len(report.failures) < max_failures:
                problem["point"] = [float(c) for c in x]
                report.failures.append(problem)
    report.passed = n_fail == 0
    if n_fail > len(report.failures):
        report.failures.append({"reason": f"{n_fail - len(report.failures)} more failures omitted"})
    return report


def _root_json(point):
    z = binary.affine(point)
    return "inf" if np.isinf(z.real) else [z.real, z.imag]


def lorentz_boost_to(n):
    """The boost ``L`` in SO+(1,4) with ``L n = e0`` for a unit future timelike ``n``."""
    n0, nv = n[0], n[1:]
    b = np.empty((5, 5))
    b[0, 0] = n0
    b[0, 1:] = nv
    b[1:, 0] = nv
    b[1:, 1:] = np.eye(4) + np.outer(nv, nv) / (1 + n0)
    # b maps e0 -> n; its inverse is eta b^T eta
    return ETA @ b.T @ ETA


@dataclass(frozen=True)
class Normalization:
    isometry: WIsometry     # carries the curve onto the standard Hopf curve
    mobius: np.ndarray      # (Z, W) = mobius @ (z, w) on CP^1
    sign: int               # +1 if no e2-reflection is needed, -1 otherwise
    residual: float

    def to_dict(self):
        return {"isometry": self.isometry.g.ravel().tolist(),
                "mobius": [[[float(v.real), float(v.imag)] for v in row] for row in self.mobius],
                "sign": self.sign, "residual": self.residual}


def normalize_curve(curve, tol=1e-8):
    """Bring a degree-one fibration curve to the standard Hopf curve.

    The curve spans a null plane ``P`` of ``W``.  Its orthogonal complement
    meets the real points in a timelike line ``n``; a boost sends ``n`` to
    ``e0``, after which ``P`` defines an orthogonal complex structure on
    ``span(e1..e4)`` and an orthogonal map of that span carries ``P`` to
    ``span(e1 + i e2, e3 + i e4)``.  The orientation of that map is the
    sign: -1 means the reflection ``e2 -> -e2`` is part of the isometry.
    Finally the parameter is changed by the Moebius map matching the two
    lifts.
    """
    reduced = reduce_curve(curve)
    if reduced.n != 1:
        raise NotDegreeOne(f"curve has degree {reduced.n}")
    v0, v1 = reduced.coeffs
    if curve.null_defect() > 1e-8:
        raise NormalizationFailed("curve does not lie in the circle quadric")

    a = np.stack([(ETA @ v0).real, (ETA @ v0).imag, (ETA @ v1).real, (ETA @ v1).imag])
    _, s, vh = np.linalg.svd(a)
    if s[-1] < 1e-9 * s[0]:
        raise NormalizationFailed("curve and its conjugate are not transversal")
    n = vh[-1]
    norm2 = n @ ETA @ n
    if norm2 >= -1e-12:
        raise NormalizationFailed("the real normal of the null plane is not timelike")
    n = n / np.sqrt(-norm2)
    if n[0] < 0:
        n = -n
    boost = lorentz_boost_to(n)
    w0 = (boost @ v0)[1:]
    w1 = (boost @ v1)[1:]

    u = w0 / np.linalg.norm(w0)
    u1 = w1 - np.vdot(u, w1) * u
    u1 = u1 / np.linalg.norm(u1)
    rows = np.stack([u1.real, u1.imag, u.real, u.imag])
    # the rows are orthogonal of norm 1/sqrt2 for an isotropic plane; project onto O(4)
    uu, _, vvh = np.linalg.svd(rows)
    rot = uu @ vvh
    sign = int(np.sign(np.linalg.det(rot)))
    g = np.eye(5)
    g[1:, 1:] = rot
    g = g @ boost
    iso = WIsometry(g)

    h = HOPF_COEFFS.T                          # (5, 2): columns h0 = e3 + i e4, h1 = e1 + i e2
    c0, *_ = np.linalg.lstsq(h, g @ v0, rcond=None)
    c1, *_ = np.linalg.lstsq(h, g @ v1, rcond=None)
    # g gamma(z, w) = (c0[0] w + c1[0] z) h0 + (c0[1] w + c1[1] z) h1 = Hopf at (Z, W)
    m = np.array([[c1[1], c0[1]], [c1[0], c0[0]]])
    det = np.linalg.det(m)
    m = m / np.sqrt(det)
    transformed = reduced.pushforward(iso).reparametrize(m)
    residual = float(projective.distance(transformed.coeffs.ravel(), HOPF_COEFFS.ravel()))
    if not residual < tol:
        raise NormalizationFailed(f"residual {residual:.3e} exceeds {tol:.1e}")
    return Normalization(iso, m, sign, residual)


def fit_curve(circles, tol=None):
    """Degree-one curve through a family of oriented circles.

    The circles of a degree-one curve span a 2-dimensional null plane of
    ``W``; the principal plane of the samples is taken as the curve.
    Returns ``(curve, residual)`` with ``residual`` the relative size of
    the discarded singular values.  Raises :class:`CurveFitError` when the
    circles span more than a plane.
    """
    tol = tolerances.current().fit if tol is None else tol
    c = to_w(np.asarray(circles, dtype=complex))
    c = c / np.linalg.norm(c, axis=-1, keepdims=True)
    _, s, vh = np.linalg.svd(c)
    rank = int(np.sum(s > tol * s[0]))
    residual = float(s[rank] / s[0]) if rank < len(s) else 0.0
    if rank == 1:
        return FibrationCurve(vh[:1]), residual
    if rank == 2:
        # rows of vh span the data rows, so the data are combinations of vh[0], vh[1]
        return FibrationCurve(vh[:2]), residual
    raise CurveFitError(f"circles span a {rank}-dimensional subspace of W; "
                        f"no degree-one curve fits (degree is at least {rank - 1})")
