"""Oriented circles of S^3 as null points of the 3-quadric in P(W).

Bivectors of C^4 are complex arrays of shape ``(..., 6)`` with coefficients
ordered ``(c12, c13, c14, c23, c24, c34)`` in the basis ``E_a ^ E_b``.
``W`` is the 5-dimensional subspace ``c12 = c34`` on which ``Omega``
vanishes.  A circle (oriented, or a point circle) is a bivector in ``W``
that is null for the symmetric form ``G``; coordinates with respect to the
real basis ``e0..e4`` are produced by :func:`to_w`.
"""

from typing import NamedTuple

import numpy as np

from . import projective, tolerances
from .errors import (DegenerateCircle, DegenerateInput, NonNull, NotCotangent,
                     NotInW)
from .projective import check_unit, fiber_basis, normalize
from .quaternion import hermitian, omega, qmul
from .tangent import UnitTangent, tangent_from_line, tangent_to_line

PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
LABELS = ("c12", "c13", "c14", "c23", "c24", "c34")

# G(a, b) = a^T GRAM6 b = -(E1234 coefficient of a ^ b)
GRAM6 = -0.5 * np.array([
    [0, 0, 0, 0, 0, 2],
    [0, 0, 0, 0, -2, 0],
    [0, 0, 0, 2, 0, 0],
    [0, 0, 2, 0, 0, 0],
    [0, -2, 0, 0, 0, 0],
    [2, 0, 0, 0, 0, 0],
], dtype=complex)

# sigma(a) = SIGMA6 conj(a); induced by E1 j = E2, E2 j = -E1, E3 j = E4, E4 j = -E3
SIGMA6 = np.array([
    [1, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 0],
    [0, 0, 0, -1, 0, 0],
    [0, 0, -1, 0, 0, 0],
    [0, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 1],
], dtype=complex)

ETA = np.diag([-1.0, 1.0, 1.0, 1.0, 1.0])

_s = 1 / np.sqrt(2)
REAL_BASIS = np.array([
    [_s, 0, 0, 0, 0, _s],           # e0 = (E12 + E34)/sqrt2
    [0, _s, 0, 0, _s, 0],           # e1 = (E13 + E24)/sqrt2
    [0, 1j * _s, 0, 0, -1j * _s, 0],  # e2 = i(E13 - E24)/sqrt2
    [0, 0, _s, -_s, 0, 0],          # e3 = (E14 - E23)/sqrt2
    [0, 0, 1j * _s, 1j * _s, 0, 0],  # e4 = i(E14 + E23)/sqrt2
], dtype=complex)


def wedge(v, w):
    v = np.asarray(v, dtype=complex)
    w = np.asarray(w, dtype=complex)
    return np.stack([v[..., a] * w[..., b] - v[..., b] * w[..., a] for a, b in PAIRS], axis=-1)


def skew_matrix(a):
    """The 4x4 antisymmetric matrix ``M`` with ``a = sum_{i<j} M_ij E_i ^ E_j``."""
    a = np.asarray(a, dtype=complex)
    m = np.zeros(a.shape[:-1] + (4, 4), dtype=complex)
    for k, (i, j) in enumerate(PAIRS):
        m[..., i, j] = a[..., k]
        m[..., j, i] = -a[..., k]
    return m


def G(a, b):
    """``-(E1234`` coefficient of ``a ^ b)``, the form ``1/2 Omega^Omega``."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    return np.einsum("...i,ij,...j->...", a, GRAM6, b)


def omega_pairing(a):
    """``Omega`` applied to a bivector; ``W`` is its kernel."""
    a = np.asarray(a, dtype=complex)
    return a[..., 0] - a[..., 5]


def sigma(a):
    """The real structure ``v ^ w -> (vj) ^ (wj)``."""
    return np.einsum("ij,...j->...i", SIGMA6, np.conj(np.asarray(a, dtype=complex)))


class RealBasis(NamedTuple):
    e: np.ndarray   # (5, 6) bivectors

    def gram(self):
        return G(self.e[:, None, :], self.e[None, :, :])


def canonical_real_basis():
    return RealBasis(REAL_BASIS.copy())


def to_w(a, basis=None):
    """Coordinates of a bivector of ``W`` in a real basis (``c_k = eta_k G(e_k, a)``)."""
    e = REAL_BASIS if basis is None else basis.e
    a = np.asarray(a, dtype=complex)
    return np.diag(ETA) * np.einsum("kj,ji,...i->...k", e, GRAM6, a)


def from_w(c, basis=None):
    e = REAL_BASIS if basis is None else basis.e
    return np.einsum("...k,kj->...j", np.asarray(c, dtype=complex), e)


def G_w(c, d):
    """``G`` in real-basis coordinates: ``-c0 d0 + c1 d1 + ... + c4 d4``."""
    c = np.asarray(c, dtype=complex)
    d = np.asarray(d, dtype=complex)
    return np.sum(c * d * np.diag(ETA), axis=-1)


def _scale(a):
    return np.sum(np.abs(np.asarray(a)) ** 2, axis=-1)


def circle_rep(a, tol=None):
    """Validate membership in the circle quadric and normalize."""
    tol = tolerances.current().null if tol is None else tol
    a = np.asarray(a, dtype=complex)
    s = _scale(a)
    if np.any(np.abs(omega_pairing(a)) ** 2 >= tol ** 2 * s):
        raise NotInW("bivector is not Omega-null")
    if np.any(np.abs(G(a, a)) >= tol * s):
        raise NonNull("bivector is not null for G")
    return normalize(a)


def is_real(k, tol=None):
    """Whether ``k`` is sigma-fixed projectively, i.e. a point circle."""
    tol = tolerances.current().real if tol is None else tol
    return projective.distance(sigma(k), k) < tol


def point_circle(x):
    """``[v ^ vj]`` for the twistor fiber over ``x``."""
    v, vj = fiber_basis(x)
    return normalize(wedge(v, vj))


def incidence_value(x, k):
    """``|G(point_circle(x), k)|`` on unit-norm representatives."""
    p = point_circle(x)
    k = np.asarray(k, dtype=complex)
    return np.abs(G(p, k)) / np.sqrt(_scale(p) * _scale(k))


def is_incident(x, k, tol=None):
    tol = tolerances.current().incidence if tol is None else tol
    return incidence_value(x, k) < tol


def circle_from_tangents(t1, t2, tol=None):
    """The oriented circle positively tangent to both unit tangents."""
    tol = tolerances.current().null if tol is None else tol
    t1 = UnitTangent(*t1)
    t2 = UnitTangent(*t2)
    if np.linalg.norm(np.asarray(t1.x) - np.asarray(t2.x)) < 1e-9:
        raise DegenerateInput("tangents must sit over distinct points")
    u1 = tangent_to_line(t1)
    u2 = tangent_to_line(t2)
    om = abs(omega(u1, u2)) / (np.linalg.norm(u1) * np.linalg.norm(u2))
    if om >= tol:
        raise NotCotangent(f"|Omega| = {om:.3e}: no circle is tangent to both")
    return normalize(wedge(u1, u2))


def factor(k):
    """A basis ``(v, w)`` of the contact plane of a decomposable bivector."""
    m = skew_matrix(k)
    a, b = np.unravel_index(np.argmax(np.abs(m)), m.shape)
    return m[a], m[b]


def frame(k):
    """Basis ``(p, q)`` of the contact plane with ``(p,p) = 1, (q,q) = -1, (p,q) = 0``.

    The null lines of the plane are then ``[e^{it} p + q]``.
    """
    v, w = factor(k)
    basis = np.stack([v, w])
    h = hermitian(basis[:, None, :], basis[None, :, :])
    h = 0.5 * (h + h.conj().T)
    vals, vecs = np.linalg.eigh(h)
    scale = np.max(np.abs(vals))
    if scale == 0 or vals[0] > -1e-7 * scale or vals[1] < 1e-7 * scale:
        raise DegenerateCircle("contact plane is degenerate: k is a point circle")
    p = vecs[:, 1] @ basis / np.sqrt(vals[1])
    q = vecs[:, 0] @ basis / np.sqrt(-vals[0])
    # fix phases so the frame is a deterministic function of [k]
    return _real_pivot(p), _real_pivot(q)


def _real_pivot(u):
    i = np.argmax(np.abs(u))
    return u * (abs(u[i]) / u[i])


def parametrize_circle(k, n=None, thetas=None):
    """Sample an oriented circle as unit tangents.

    Points are ``[e^{i theta} p + q]`` with ``(p, q)`` from :func:`frame`;
    increasing ``theta`` runs along the circle's orientation.  Pass either
    ``n`` (equally spaced samples) or explicit ``thetas``.
    """
    k = np.asarray(k, dtype=complex)
    if abs(omega_pairing(k)) ** 2 >= 1e-18 * _scale(k):
        raise NotInW("bivector is not Omega-null")
    if abs(G(k, k)) >= 1e-9 * _scale(k):
        raise NonNull("bivector is not null for G")
    p, q = frame(k)
    if thetas is None:
        thetas = 2 * np.pi * np.arange(n) / n
    thetas = np.asarray(thetas, dtype=float)
    u = np.exp(1j * thetas)[..., None] * p + q
    return tangent_from_line(u)


def _fiber_intersection(k, x):
    """The line of the contact plane of ``k`` lying over ``x``, in frame coordinates."""
    p, q = frame(k)
    v, vj = fiber_basis(x)
    m = np.stack([p, q, -v, -vj], axis=1)
    _, s, vh = np.linalg.svd(m)
    coef = vh[-1].conj()
    return coef[:2], s[-1] / s[0]


def circle_parameter(k, x):
    """Angle ``theta`` of a point ``x`` of the circle ``k`` in :func:`parametrize_circle`."""
    (a, b), _ = _fiber_intersection(k, x)
    return float(np.angle(a / b))


def tangent_at(k, x):
    """Positive unit tangent of the circle ``k`` at its point ``x``."""
    p, q = frame(k)
    (a, b), _ = _fiber_intersection(k, x)
    return tangent_from_line(a * p + b * q)


def _point_circles_real(points):
    c = to_w(wedge(*fiber_basis(points)))
    # v ^ vj is sigma-fixed, so its coordinates are real
    return c.real


def circle_through_points(p1, p2, p3):
    """Both orientations of the circle through three distinct points.

    The first returned circle runs ``p1 -> p2 -> p3``, the second is its
    reverse.
    """
    pts = check_unit(np.stack([np.asarray(p, dtype=float) for p in (p1, p2, p3)]))
    for i, j in ((0, 1), (0, 2), (1, 2)):
        if np.linalg.norm(pts[i] - pts[j]) < 1e-7:
            raise DegenerateInput("points must be pairwise distinct")
    a = _point_circles_real(pts) @ ETA
    _, s, vh = np.linalg.svd(a)
    if s[2] < 1e-9 * s[0]:
        raise DegenerateInput("point circles are linearly dependent")
    null = vh[3:].T                     # (5, 2) real
    gram = null.T @ ETA @ null
    vals, vecs = np.linalg.eigh(gram)
    if vals[0] <= 0:
        raise DegenerateInput("orthogonal complement is not spacelike")
    f = null @ vecs / np.sqrt(vals)
    c = f[:, 0] + 1j * f[:, 1]
    k = normalize(from_w(c))
    kr = normalize(from_w(np.conj(c)))
    d = qmul(pts[0], tangent_at(k, pts[0]).mu)
    chord, second = pts[1] - pts[0], pts[2] - pts[0]
    if np.dot(d, chord) * np.dot(chord, second) - np.dot(d, second) * np.dot(chord, chord) < 0:
        k, kr = kr, k
    return k, kr


def random_circle(rng):
    from .projective import random_s3
    return circle_through_points(*random_s3(rng, 3))[0]
