"""Projective points, the twistor projection CP^3 -> HP^1, S^3 and the quadric Q."""

import numpy as np

from . import tolerances
from .errors import NotUnit
from .quaternion import (from_c4, hermitian, jmap, qinv, qmul, qnorm, qvec,
                         quaternionic_form, to_c4)


def normalize(rep):
    """Scale a complex representative so its largest-modulus coordinate is 1."""
    rep = np.asarray(rep, dtype=complex)
    idx = np.argmax(np.abs(rep), axis=-1)
    pivot = np.take_along_axis(rep, idx[..., None], axis=-1)
    if np.any(pivot == 0):
        raise ValueError("zero vector has no projective class")
    return rep / pivot


def normalize_h(l):
    """Right-normalize an H^2 representative by its larger coordinate."""
    l = np.asarray(l, dtype=float)
    n = qnorm(l)
    idx = np.argmax(n, axis=-1)
    pivot = np.take_along_axis(l, idx[..., None, None], axis=-2)[..., 0, :]
    return qmul(l, qinv(pivot)[..., None, :])


def cos2(u, v):
    """Squared cosine of the angle between the complex lines through u and v."""
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    num = np.abs(np.sum(np.conj(u) * v, axis=-1)) ** 2
    den = np.sum(np.abs(u) ** 2, axis=-1) * np.sum(np.abs(v) ** 2, axis=-1)
    return num / den


def distance(u, v):
    """Projective distance ``sin(angle)`` between the complex lines through u and v."""
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    u = u / np.linalg.norm(u, axis=-1, keepdims=True)
    v = v / np.linalg.norm(v, axis=-1, keepdims=True)
    # the orthogonal residual avoids the cancellation in sqrt(1 - cos^2)
    r = v - np.sum(np.conj(u) * v, axis=-1, keepdims=True) * u
    return np.linalg.norm(r, axis=-1)


def proj_equal(u, v, tol=None):
    tol = tolerances.current().proj if tol is None else tol
    return bool(np.all(cos2(u, v) >= 1.0 - tol))


def twistor_project(e):
    """The quaternionic line ``e*H`` spanned by a complex line of C^4."""
    return normalize_h(from_c4(e))


def s3_coordinate(l):
    """Affine coordinate ``x = q1 q2^{-1}`` of a point ``[q1:q2]`` of HP^1."""
    l = np.asarray(l, dtype=float)
    return qmul(l[..., 0, :], qinv(l[..., 1, :]))


def is_in_Q(e, tol=None):
    tol = tolerances.current().null if tol is None else tol
    e = np.asarray(e, dtype=complex)
    scale = np.sum(np.abs(e) ** 2, axis=-1)
    return np.abs(hermitian(e, e)) < tol * scale


def is_in_S3(l, tol=None):
    tol = tolerances.current().null if tol is None else tol
    l = normalize_h(l)
    return np.abs(quaternionic_form(l, l)[..., 0]) < tol


def check_unit(x, tol=None):
    tol = tolerances.current().unit if tol is None else tol
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != 4:
        raise NotUnit(f"expected quaternion(s), got shape {x.shape}")
    err = np.max(np.abs(qnorm(x) - 1.0), initial=0.0)
    if err >= tol:
        raise NotUnit(f"point is off S^3 by {err:.3e}")
    return x


def s3_line(x):
    """C^4 representative of the isotropic line ``[x:1]``."""
    x = np.asarray(x, dtype=float)
    return to_c4(qvec(x, np.broadcast_to([1.0, 0, 0, 0], x.shape)))


def fiber_basis(x):
    """Basis ``(v, vj)`` of the twistor line over ``x`` in S^3.

    Every point of the fiber is ``[a v + b vj]``; both vectors are null for
    ``(,)`` and the fiber lies entirely in Q.
    """
    x = check_unit(x)
    v = s3_line(x)
    return v, jmap(v)


def random_s3(rng, size=None):
    shape = (4,) if size is None else (*np.atleast_1d(size), 4)
    x = rng.standard_normal(shape)
    return x / np.linalg.norm(x, axis=-1, keepdims=True)
