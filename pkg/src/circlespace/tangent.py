"""Unit tangent vectors of S^3 as points of the quadric Q, and conformality tests.

A unit tangent at ``x`` is stored as ``(x, mu)`` with ``mu`` a unit
imaginary quaternion; the tangent vector in R^4 is ``x * mu``.  The line of
CP^3 attached to it is ``{(x, 1) lam : mu lam = lam i}``.
"""

from typing import Callable, NamedTuple

import numpy as np

from . import tolerances
from .errors import DegenerateInput, NotImaginary, NotIsotropic
from .projective import check_unit, is_in_Q, normalize, s3_coordinate
from .quaternion import I, J, from_c4, qexp_imag, qinv, qmul, qnorm, qvec, rotate_i, to_c4


class UnitTangent(NamedTuple):
    x: np.ndarray
    mu: np.ndarray

    @property
    def vector(self):
        return qmul(self.x, self.mu)


def unit_tangent(x, mu, tol=None):
    """Validated :class:`UnitTangent`."""
    tol = tolerances.current().unit if tol is None else tol
    x = check_unit(x, tol)
    mu = np.asarray(mu, dtype=float)
    if np.max(np.abs(mu[..., 0]), initial=0.0) >= tol:
        raise NotImaginary("mu must be purely imaginary")
    if np.max(np.abs(qnorm(mu) - 1.0), initial=0.0) >= tol:
        raise NotImaginary("mu must have unit length")
    return UnitTangent(x, mu)


def eigen_quaternion(mu):
    """A nonzero ``lam`` with ``mu lam = lam i``.

    Solutions are ``a - mu a i`` for any quaternion ``a``; ``a = 1`` gives
    ``mu + i`` up to a complex factor and degenerates at ``mu = -i``,
    ``a = j`` gives ``j + mu k`` and degenerates at ``mu = i``.  The larger
    of the two is used.
    """
    mu = np.asarray(mu, dtype=float)
    lam1 = mu + I
    lam2 = J + qmul(mu, np.array([0.0, 0.0, 0.0, 1.0]))
    n1 = qnorm(lam1)[..., None]
    n2 = qnorm(lam2)[..., None]
    return np.where(n1 >= n2, lam1 / np.where(n1 == 0, 1, n1), lam2 / np.where(n2 == 0, 1, n2))


def tangent_to_line(t):
    """The point of Q corresponding to a unit tangent (normalized representative)."""
    t = unit_tangent(*t)
    lam = eigen_quaternion(t.mu)
    u = to_c4(qvec(qmul(t.x, lam), lam))
    return normalize(u)


def tangent_from_line(u):
    """Unchecked inverse of :func:`tangent_to_line` (vectorized)."""
    q = from_c4(u)
    lam = q[..., 1, :]
    x = qmul(q[..., 0, :], qinv(lam))
    x = x / qnorm(x)[..., None]
    mu = rotate_i(lam)
    mu = mu / qnorm(mu)[..., None]
    return UnitTangent(x, mu)


def line_to_tangent(e, tol=None):
    """The unit tangent corresponding to a point of Q."""
    e = np.asarray(e, dtype=complex)
    if not np.all(is_in_Q(e, tol)):
        raise NotIsotropic("line is not isotropic for (,), so not in Q")
    return tangent_from_line(e)


def tangent_space_component(x, a):
    """Remove the normal component of ``a`` at ``x`` in S^3."""
    return a - np.sum(a * x, axis=-1, keepdims=True) * x


def cross(x, a, b, tol=1e-9):
    """Oriented cross product on the tangent space of S^3 at ``x``."""
    x = np.asarray(x, dtype=float)
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    for v in (a, b):
        if np.max(np.abs(np.sum(v * x, axis=-1)) - tol * (1 + qnorm(v)), initial=0.0) > 0:
            raise DegenerateInput("vectors must be tangent to S^3 at x")
    xi = qinv(x)
    c = qmul(qmul(xi, a), qmul(xi, b))
    c[..., 0] = 0.0
    return qmul(x, c)


class TangentField:
    """A unit vector field on (part of) S^3 given by ``x -> mu(x)``.

    ``mu_fn`` receives points of shape ``(..., 4)`` and returns imaginary unit
    quaternions of the same shape.  It must be re-entrant.
    """

    def __init__(self, mu_fn: Callable[[np.ndarray], np.ndarray], name: str = ""):
        self.mu_fn = mu_fn
        self.name = name

    def mu(self, x):
        return np.asarray(self.mu_fn(np.asarray(x, dtype=float)), dtype=float)

    def vector(self, x):
        return qmul(x, self.mu(x))

    def __call__(self, x):
        return UnitTangent(np.asarray(x, dtype=float), self.mu(x))

    def __repr__(self):
        return f"TangentField({self.name or self.mu_fn!r})"


def as_field(T):
    if isinstance(T, TangentField):
        return T

    def mu_fn(x):
        r = T(x)
        return r.mu if isinstance(r, UnitTangent) else r
    return TangentField(mu_fn, getattr(T, "__name__", ""))


def hopf_field():
    """``T(x) = x i``: the fibers are the circles ``x e^{it}``."""
    return TangentField(lambda x: np.broadcast_to(I, np.shape(x)).copy(), "hopf")


def _covariant_derivative(T, x, b, h):
    """Levi-Civita derivative of ``T`` at ``x`` along the unit tangent ``x b``."""
    xp = qmul(x, qexp_imag(h * b))
    xm = qmul(x, qexp_imag(-h * b))
    d = (T.vector(xp) - T.vector(xm)) / (2 * h)
    return tangent_space_component(x, d)


def conformality_residual(T, x, h=1e-3):
    """Defect of ``T x grad_X T = grad_{T x X} T`` at ``x``.

    ``X`` runs over an orthonormal pair ``X, T x X`` orthogonal to ``T(x)``;
    derivatives are central differences along geodesics.  The result is
    ``O(h^2)`` exactly when the foliation by integral curves is conformal
    at ``x``.
    """
    if not 1e-6 <= h <= 1e-2:
        raise ValueError("step h must lie in [1e-6, 1e-2]")
    T = as_field(T)
    x = check_unit(x)
    mu = T.mu(x)
    if not np.isfinite(mu).all() or abs(qnorm(mu) - 1) > 1e-6:
        raise DegenerateInput("field value at x is not a unit tangent")
    # an imaginary unit orthogonal to mu
    e = np.eye(4)[1 + int(np.argmin(np.abs(mu[1:])))]
    a = qmul(mu, e)
    a[0] = 0.0
    a /= qnorm(a)
    t0 = qmul(x, mu)
    worst = 0.0
    for b in (a, qmul(mu, a)):
        X = qmul(x, b)
        JX = cross(x, t0, X, tol=1e-8)
        lhs = cross(x, t0, _covariant_derivative(T, x, b, h), tol=1e-6)
        rhs = _covariant_derivative(T, x, qmul(qinv(x), JX), h)
        worst = max(worst, float(np.linalg.norm(lhs - rhs)))
    return worst


def s3_point_of_line(e):
    """Base point in S^3 of a point of Q."""
    return s3_coordinate(from_c4(e))
