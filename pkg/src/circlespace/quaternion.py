"""Quaternions, the right H-module H^2, and its identification with C^4.

Quaternions are float arrays of shape ``(..., 4)`` holding the coefficients
of ``1, i, j, k``.  Vectors of H^2 have shape ``(..., 2, 4)`` and vectors of
C^4 are complex arrays of shape ``(..., 4)``.  Every function broadcasts
over leading axes.

A quaternion is split as ``q = z + j*w`` with complex ``z, w``; this makes
right multiplication by ``i`` complex linear, so that ``(q1, q2)`` in H^2
corresponds to ``(z1, z2, z3, z4)`` in C^4.
"""

from typing import NamedTuple

import numpy as np

ONE = np.array([1.0, 0.0, 0.0, 0.0])
I = np.array([0.0, 1.0, 0.0, 0.0])
J = np.array([0.0, 0.0, 1.0, 0.0])
K = np.array([0.0, 0.0, 0.0, 1.0])

# Omega(z, w) = z^T OMEGA w
OMEGA = np.array([[0, 1, 0, 0],
                  [-1, 0, 0, 0],
                  [0, 0, 0, -1],
                  [0, 0, 1, 0]], dtype=complex)

# (z, w) = conj(z)^T HERM w, signature (2, 2)
HERM = np.diag([1.0, 1.0, -1.0, -1.0]).astype(complex)


def quat(w=0.0, x=0.0, y=0.0, z=0.0):
    return np.array([w, x, y, z], dtype=float)


def qmul(p, q):
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    a1, b1, c1, d1 = p[..., 0], p[..., 1], p[..., 2], p[..., 3]
    a2, b2, c2, d2 = q[..., 0], q[..., 1], q[..., 2], q[..., 3]
    out = np.empty(np.broadcast_shapes(p.shape, q.shape))
    out[..., 0] = a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2
    out[..., 1] = a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2
    out[..., 2] = a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2
    out[..., 3] = a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2
    return out


def rotate_i(lam):
    """``lam i lam^{-1}``, the image of ``i`` under conjugation by ``lam``."""
    lam = np.asarray(lam, dtype=float)
    a, b, c, d = lam[..., 0], lam[..., 1], lam[..., 2], lam[..., 3]
    n2 = a * a + b * b + c * c + d * d
    out = np.empty(lam.shape)
    out[..., 0] = 0.0
    out[..., 1] = (a * a + b * b - c * c - d * d) / n2
    out[..., 2] = 2 * (b * c + a * d) / n2
    out[..., 3] = 2 * (b * d - a * c) / n2
    return out


def qconj(q):
    q = np.asarray(q, dtype=float)
    return q * np.array([1.0, -1.0, -1.0, -1.0])


def qnorm(q):
    return np.linalg.norm(np.asarray(q, dtype=float), axis=-1)


def qinv(q):
    q = np.asarray(q, dtype=float)
    return qconj(q) / np.sum(q * q, axis=-1, keepdims=True)


def qexp_imag(a):
    """exp of a purely imaginary quaternion ``a``."""
    a = np.asarray(a, dtype=float)
    theta = np.linalg.norm(a[..., 1:], axis=-1, keepdims=True)
    # sin(theta)/theta, safe at 0
    sinc = np.sinc(theta / np.pi)
    out = a * sinc
    out[..., :1] = np.cos(theta)
    return out


def qcomplex(z):
    """Embed complex numbers as quaternions in span(1, i)."""
    z = np.asarray(z, dtype=complex)
    zero = np.zeros(z.shape)
    return np.stack([z.real, z.imag, zero, zero], axis=-1)


def qvec(q1, q2):
    """Stack two quaternions into an element of H^2."""
    q1, q2 = np.broadcast_arrays(np.asarray(q1, dtype=float), np.asarray(q2, dtype=float))
    return np.stack([q1, q2], axis=-2)


def right_mul(v, lam):
    """Right scalar multiplication ``v * lam`` on H^2."""
    return qmul(v, np.asarray(lam, dtype=float)[..., None, :])


def left_mul(m, v):
    """Apply a 2x2 quaternionic matrix ``m`` (shape ``(..., 2, 2, 4)``) to ``v``."""
    m = np.asarray(m, dtype=float)
    v = np.asarray(v, dtype=float)
    return qmul(m[..., :, 0, :], v[..., None, 0, :]) + qmul(m[..., :, 1, :], v[..., None, 1, :])


def _split(q):
    q = np.asarray(q, dtype=float)
    z = q[..., 0] + 1j * q[..., 1]
    w = q[..., 2] - 1j * q[..., 3]
    return z, w


def _join(z, w):
    return np.stack([z.real, z.imag, w.real, -w.imag], axis=-1)


def to_c4(v):
    """H^2 -> C^4, ``q = z + j*w`` per quaternionic slot."""
    v = np.asarray(v, dtype=float)
    z1, z2 = _split(v[..., 0, :])
    z3, z4 = _split(v[..., 1, :])
    return np.stack([z1, z2, z3, z4], axis=-1)


def from_c4(z):
    """C^4 -> H^2, inverse of :func:`to_c4`."""
    z = np.asarray(z, dtype=complex)
    return np.stack([_join(z[..., 0], z[..., 1]), _join(z[..., 2], z[..., 3])], axis=-2)


def jmap(z):
    """Right multiplication by ``j`` in C^4 coordinates (conjugate linear)."""
    z = np.asarray(z, dtype=complex)
    return np.stack([-np.conj(z[..., 1]), np.conj(z[..., 0]),
                     -np.conj(z[..., 3]), np.conj(z[..., 2])], axis=-1)


def hermitian(z, w):
    """The split Hermitian form ``(z, w)``, conjugate linear in ``z``."""
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    return np.sum(np.conj(z) * w * np.array([1, 1, -1, -1]), axis=-1)


def omega(z, w):
    """The complex symplectic form ``Omega(z, w)``."""
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    return (z[..., 0] * w[..., 1] - z[..., 1] * w[..., 0]
            - z[..., 2] * w[..., 3] + z[..., 3] * w[..., 2])


def quaternionic_form(v, w):
    """``<v, w> = conj(v1) w1 - conj(v2) w2`` evaluated in quaternion arithmetic."""
    v = np.asarray(v, dtype=float)
    w = np.asarray(w, dtype=float)
    return (qmul(qconj(v[..., 0, :]), w[..., 0, :])
            - qmul(qconj(v[..., 1, :]), w[..., 1, :]))


class FormValues(NamedTuple):
    h: np.ndarray       # quaternion, <v, w>
    herm: complex       # (v, w)
    omega: complex      # Omega(v, w)


def eval_forms(v, w):
    """Evaluate ``<,>``, ``(,)`` and ``Omega`` on a pair of H^2 vectors.

    The three values satisfy ``h = herm + j * omega``.
    """
    zv, zw = to_c4(v), to_c4(w)
    return FormValues(quaternionic_form(v, w), hermitian(zv, zw), omega(zv, zw))


def j_times(c):
    """The quaternion ``j * c`` for complex ``c``."""
    c = np.asarray(c, dtype=complex)
    zero = np.zeros(c.shape)
    return np.stack([zero, zero, c.real, -c.imag], axis=-1)


def decomposition_defect(v, w):
    """``|<v, w> - ((v, w) + j Omega(v, w))|``; zero up to rounding."""
    f = eval_forms(v, w)
    return qnorm(f.h - qcomplex(f.herm) - j_times(f.omega))
