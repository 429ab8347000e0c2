"""JSON encodings: quaternions ``[w, x, y, z]``, complex numbers ``[re, im]``."""

import numpy as np

from .circles import LABELS
from .moebius import ConformalMap, WIsometry


def complex_to_json(z):
    z = np.asarray(z, dtype=complex)
    return np.stack([z.real, z.imag], axis=-1).tolist()


def complex_from_json(data):
    a = np.asarray(data, dtype=float)
    if a.shape[-1:] != (2,):
        raise ValueError("complex numbers are encoded as [re, im]")
    return a[..., 0] + 1j * a[..., 1]


def quaternion_to_json(q):
    return np.asarray(q, dtype=float).tolist()


def quaternion_from_json(data):
    q = np.asarray(data, dtype=float)
    if q.shape[-1:] != (4,):
        raise ValueError("quaternions are encoded as [w, x, y, z]")
    return q


def bivector_to_json(a):
    """Six ``[re, im]`` pairs in the order c12, c13, c14, c23, c24, c34."""
    return complex_to_json(a)


def bivector_from_json(data):
    a = complex_from_json(data)
    if a.shape[-1:] != (len(LABELS),):
        raise ValueError("bivectors have six complex coefficients")
    return a


def isometry_to_json(g):
    return np.asarray(g.g if isinstance(g, WIsometry) else g, dtype=float).ravel().tolist()


def isometry_from_json(data):
    g = np.asarray(data, dtype=float)
    if g.size != 25:
        raise ValueError("a W-isometry is encoded as 25 reals, row-major")
    return WIsometry(g.reshape(5, 5))


def matrix_to_json(phi):
    """A quaternionic 2x2 matrix as its four entries, row-major."""
    m = phi.m if isinstance(phi, ConformalMap) else phi
    return np.asarray(m, dtype=float).reshape(4, 4).tolist()


def matrix_from_json(data):
    m = np.asarray(data, dtype=float)
    if m.shape != (4, 4):
        raise ValueError("a quaternionic 2x2 matrix is encoded as 4 quaternions")
    return ConformalMap(m.reshape(2, 2, 4))
