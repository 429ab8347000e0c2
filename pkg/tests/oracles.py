"""Independent reference computations used by the tests.

These avoid the package's own formulas: quaternions go through their 2x2
complex matrix representation, bivectors through explicit antisymmetric
tensors and 4x4 determinants, and point maps through finite differences.
"""

import itertools

import numpy as np


def qmat(q):
    """``a + bi + cj + dk`` as ``[[a + bi, c + di], [-c + di, a - bi]]``."""
    a, b, c, d = q
    return np.array([[a + 1j * b, c + 1j * d], [-c + 1j * d, a - 1j * b]])


def mat_q(m):
    return np.array([m[0, 0].real, m[0, 0].imag, m[0, 1].real, m[0, 1].imag])


def qmul(p, q):
    return mat_q(qmat(p) @ qmat(q))


def qinv(q):
    return mat_q(np.linalg.inv(qmat(q)))


def split(q):
    """``(z, w)`` with ``q = z + j w``, solved from ``q = z + j*w`` by brute force."""
    # j*(u + vi) = u j + v ji = u j - v k
    a, b, c, d = q
    return a + 1j * b, c - 1j * d


def to_c4(q1, q2):
    z1, z2 = split(q1)
    z3, z4 = split(q2)
    return np.array([z1, z2, z3, z4])


def bivector_tensor(a):
    """Antisymmetric 4x4 tensor of a bivector in (c12, c13, c14, c23, c24, c34)."""
    t = np.zeros((4, 4), dtype=complex)
    for (i, j), c in zip(itertools.combinations(range(4), 2), a):
        t[i, j] = c
        t[j, i] = -c
    return t


def wedge_tensor(v, w):
    return np.outer(v, w) - np.outer(w, v)


def four_form(a, b):
    """Coefficient of E1^E2^E3^E4 in a ^ b, from the antisymmetric tensors."""
    ta, tb = bivector_tensor(a), bivector_tensor(b)
    total = 0
    for perm in itertools.permutations(range(4)):
        sign = np.linalg.det(np.eye(4)[list(perm)])
        total += sign * ta[perm[0], perm[1]] * tb[perm[2], perm[3]]
    return total / 4


def G(a, b):
    return -four_form(a, b)


def from_tensor(t):
    return np.array([t[i, j] for i, j in itertools.combinations(range(4), 2)])


def mobius_point(m, x):
    """``(a x + b)(c x + d)^{-1}`` with explicit quaternion matrices."""
    num = qmul(m[0][0], x) + m[0][1]
    den = qmul(m[1][0], x) + m[1][1]
    return qmul(num, qinv(den))


def differential(f, x, v, h=1e-6):
    """Central difference of ``f`` at ``x`` in direction ``v`` along the sphere."""
    xp = (x + h * v) / np.linalg.norm(x + h * v)
    xm = (x - h * v) / np.linalg.norm(x - h * v)
    return (f(xp) - f(xm)) / (2 * h)
