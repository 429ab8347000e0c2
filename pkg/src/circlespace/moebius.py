"""Conformal transformations of S^3 and their actions on Q and on W.

A conformal map is a 2x2 quaternionic matrix (array ``(2, 2, 4)``) that
preserves ``<v, w> = conj(v1) w1 - conj(v2) w2``.  It acts on S^3 by
``x -> (a x + b)(c x + d)^{-1}``, complex-linearly on C^4, and through the
second exterior power on ``W``, where it becomes a real Lorentz
transformation of signature (1, 4).
"""

from dataclasses import dataclass

import numpy as np

from . import tolerances
from .circles import ETA, REAL_BASIS, from_w, point_circle, to_w, wedge, PAIRS
from .errors import NotConformal
from .projective import check_unit, normalize, s3_coordinate
from .quaternion import (I, from_c4, left_mul, qconj, qmul, qnorm, qvec, to_c4)
from .tangent import UnitTangent, tangent_from_line, tangent_to_line

ETA_H = np.array([1.0, -1.0])


def _form_defect(m, sign=1.0):
    # M^* diag(1,-1) M - sign * diag(1,-1), quaternionic entries
    mstar = qconj(np.swapaxes(m, 0, 1))
    prod = np.zeros((2, 2, 4))
    for a in range(2):
        for b in range(2):
            for c in range(2):
                prod[a, b] += ETA_H[c] * qmul(mstar[a, c], m[c, b])
    prod[0, 0, 0] -= sign
    prod[1, 1, 0] += sign
    return float(np.max(np.abs(prod)))


@dataclass(frozen=True)
class ConformalMap:
    m: np.ndarray

    def __matmul__(self, other):
        return ConformalMap(compose(self.m, other.m))

    def inverse(self):
        # M^{-1} = diag(1,-1) M^* diag(1,-1)
        mstar = qconj(np.swapaxes(self.m, 0, 1))
        return ConformalMap(mstar * np.array([[1.0], [-1.0]])[:, :, None]
                            * np.array([[1.0, -1.0]])[:, :, None])

    @property
    def complex_matrix(self):
        return complex_matrix(self.m)


@dataclass(frozen=True)
class WIsometry:
    """A real 5x5 matrix in the canonical real basis of ``W``."""
    g: np.ndarray

    @property
    def time_orientation(self):
        """Sign of ``-G(g e0, e0)``; +1 for conformal maps of S^3."""
        return int(np.sign(self.g[0, 0]))

    def __matmul__(self, other):
        return WIsometry(self.g @ other.g)

    def apply(self, c):
        """Act on real-basis coordinates (shape ``(..., 5)``)."""
        return np.einsum("ij,...j->...i", self.g, np.asarray(c, dtype=complex))

    def on_bivectors(self, a):
        return from_w(self.apply(to_w(a)))

    def defect(self):
        return float(np.max(np.abs(self.g.T @ ETA @ self.g - ETA)))


def compose(m1, m2):
    out = np.zeros((2, 2, 4))
    for a in range(2):
        for b in range(2):
            out[a, b] = qmul(m1[a, 0], m2[0, b]) + qmul(m1[a, 1], m2[1, b])
    return out


def check_conformal(m, tol=None):
    tol = tolerances.current().group if tol is None else tol
    m = np.asarray(m, dtype=float)
    if m.shape != (2, 2, 4):
        raise ValueError("expected a 2x2 quaternionic matrix of shape (2, 2, 4)")
    defect = _form_defect(m)
    if defect >= tol:
        raise NotConformal(defect)
    return ConformalMap(m)


def identity():
    m = np.zeros((2, 2, 4))
    m[0, 0, 0] = m[1, 1, 0] = 1.0
    return ConformalMap(m)


def rotation(u, v):
    """``diag(u, v)`` for unit quaternions u, v: the isometry ``x -> u x v^{-1}``."""
    m = np.zeros((2, 2, 4))
    m[0, 0] = u
    m[1, 1] = v
    return check_conformal(m)


def boost(t):
    """The hyperbolic generator ``[[cosh t, sinh t], [sinh t, cosh t]]``."""
    m = np.zeros((2, 2, 4))
    m[0, 0, 0] = m[1, 1, 0] = np.cosh(t)
    m[0, 1, 0] = m[1, 0, 0] = np.sinh(t)
    return ConformalMap(m)


def random_conformal(seed, max_boost=1.5):
    """Deterministic pseudo-random element ``rotation . boost . rotation``."""
    rng = np.random.default_rng(seed)
    q = rng.standard_normal((4, 4))
    q /= np.linalg.norm(q, axis=1, keepdims=True)
    r1 = rotation(q[0], q[1])
    r2 = rotation(q[2], q[3])
    t = rng.uniform(-max_boost, max_boost)
    return check_conformal((r1 @ boost(t) @ r2).m, 1e-12)


def complex_matrix(m):
    """The 4x4 complex matrix of the map on C^4."""
    m = np.asarray(m, dtype=float)
    cols = [to_c4(left_mul(m, from_c4(e))) for e in np.eye(4, dtype=complex)]
    return np.stack(cols, axis=-1)


def _point_map_matrix(phi):
    if isinstance(phi, ConformalMap):
        return phi.m
    m = np.asarray(phi, dtype=float)
    # anti-isometries (M^* eta M = -eta) also preserve S^3, reversing orientation
    defect = min(_form_defect(m, 1.0), _form_defect(m, -1.0))
    if defect >= tolerances.current().group:
        raise NotConformal(defect)
    return m


def act_on_point(phi, x):
    """Moebius action ``x -> (a x + b)(c x + d)^{-1}`` on S^3.

    ``phi`` is a :class:`ConformalMap` or a raw matrix preserving ``<,>``
    up to sign.
    """
    x = check_unit(x)
    v = left_mul(_point_map_matrix(phi), qvec(x, np.broadcast_to([1.0, 0, 0, 0], x.shape)))
    y = s3_coordinate(v)
    return y / qnorm(y)[..., None]


def act_on_line(phi, e):
    e = np.asarray(e, dtype=complex)
    return normalize(np.einsum("ij,...j->...i", complex_matrix(phi.m), e))


def act_on_tangent(phi, t):
    """Differential action on unit tangents, through the quadric."""
    return tangent_from_line(act_on_line(phi, tangent_to_line(t)))


def lambda2_matrix(c):
    """Matrix of ``v ^ w -> (C v) ^ (C w)`` on bivector coefficients."""
    c = np.asarray(c, dtype=complex)
    cols = [wedge(c[:, a], c[:, b]) for a, b in PAIRS]
    return np.stack(cols, axis=-1)


def induced_on_W(phi, tol=1e-9):
    """The real Lorentz transformation of ``W`` induced by ``phi``."""
    l2 = lambda2_matrix(complex_matrix(phi.m))
    g = to_w(np.einsum("ij,kj->ki", l2, REAL_BASIS)).T
    if np.max(np.abs(g.imag)) > tol * max(1.0, np.max(np.abs(g))):
        raise ArithmeticError("induced map is not real; input is not a conformal map")
    return WIsometry(g.real)


def act_on_circle(phi, k):
    return normalize(induced_on_W(phi).on_bivectors(k))


def reflection(axis=2):
    """The W-isometry flipping one spatial basis vector (``e2`` by default)."""
    g = np.eye(5)
    g[axis, axis] = -1.0
    return WIsometry(g)

