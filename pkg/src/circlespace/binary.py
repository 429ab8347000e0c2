"""Roots of binary forms on CP^1 and vector-valued binary polynomials.

A binary form of degree ``n`` is stored by its coefficients ``a[0..n]`` in
ascending powers of ``z``: ``f(z, w) = sum_k a[k] z^k w^(n-k)``.  Roots are
returned as unit-norm pairs ``(z, w)``; the root ``[1:0]`` is the point at
infinity of the affine chart ``w = 1``.
"""

import numpy as np

from .errors import RootFindingFailed

# generic unitary chart changes; the first one almost never puts a root at infinity
_CHART_PARAMS = (0.3716 + 0.6124j, -0.8313 + 0.2291j, 0.1402 - 1.3377j)


def chart(c):
    """Unitary matrix ``U`` with ``(z, w) = U (s, t)``."""
    return np.array([[1.0, -np.conj(c)], [c, 1.0]]) / np.sqrt(1 + abs(c) ** 2)


def substitute(coeffs, u):
    """Coefficients of ``f(U (s, t))`` as a binary form in ``(s, t)``.

    Works on trailing vector axes: ``coeffs`` has shape ``(n+1, ...)``.
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    n = coeffs.shape[0] - 1
    out = np.zeros_like(coeffs)
    # z = u00 s + u01 t, w = u10 s + u11 t; polynomials in s (t = 1), ascending
    zpoly = np.array([u[0, 1], u[0, 0]])
    wpoly = np.array([u[1, 1], u[1, 0]])
    zpow = [np.array([1.0 + 0j])]
    wpow = [np.array([1.0 + 0j])]
    for _ in range(n):
        zpow.append(np.convolve(zpow[-1], zpoly))
        wpow.append(np.convolve(wpow[-1], wpoly))
    for k in range(n + 1):
        term = np.convolve(zpow[k], wpow[n - k])
        out += np.multiply.outer(term, coeffs[k])
    return out


def _chordal(p, q):
    return abs(p[0] * q[1] - p[1] * q[0])


def _merge_radius(size, tol):
    # a root of multiplicity m is perturbed by about eps^(1/m)
    return max(tol, 10 * np.finfo(float).eps ** (1.0 / size))


def _cluster(points, tol):
    """Group unit pairs that are numerically one multiple root.

    Around each remaining point the largest group of its nearest neighbours
    whose diameter stays below a size-dependent radius is taken, since an
    ``m``-fold root splits by roughly ``eps^(1/m)``.
    """
    remaining = list(points)
    clusters = []
    while remaining:
        p = remaining[0]
        order = sorted(range(len(remaining)), key=lambda i: _chordal(p, remaining[i]))
        for m in range(len(order), 0, -1):
            group = [remaining[i] for i in order[:m]]
            diam = max(_chordal(a, b) for a in group for b in group)
            if m == 1 or diam < _merge_radius(m, tol):
                break
        clusters.append(group)
        taken = set(order[:m])
        remaining = [q for i, q in enumerate(remaining) if i not in taken]
    out = []
    for c in clusters:
        arr = np.array(c)
        # average in a common phase
        ref = arr[0]
        phases = np.array([np.vdot(ref, a) for a in arr])
        mean = np.mean(arr * (np.conj(phases) / np.abs(phases))[:, None], axis=0)
        out.append((mean / np.linalg.norm(mean), len(c)))
    return out


def roots(coeffs, merge_tol=1e-6, zero_tol=1e-13):
    """Distinct roots of a binary form with multiplicities.

    Returns a list of ``(point, multiplicity)``; multiplicities add up to
    the degree.  Returns ``None`` when the form vanishes identically.
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    scale = np.max(np.abs(coeffs), initial=0.0)
    if scale == 0 or not np.isfinite(scale):
        if not np.isfinite(scale):
            raise RootFindingFailed("non-finite coefficients")
        return None
    coeffs = coeffs / scale
    n = len(coeffs) - 1
    if n == 0:
        return []
    for c in _CHART_PARAMS:
        u = chart(c)
        b = substitute(coeffs, u)
        if abs(b[-1]) > 1e-8 * np.max(np.abs(b)):
            break
    else:
        raise RootFindingFailed("could not find a chart without a root at infinity")
    ts = np.roots(b[::-1])
    pts = np.stack([ts, np.ones_like(ts)], axis=-1) @ u.T
    pts /= np.linalg.norm(pts, axis=-1, keepdims=True)
    return _cluster(list(pts), merge_tol)


def is_zero_form(coeffs, ref_scale, tol=1e-10):
    return np.max(np.abs(coeffs), initial=0.0) <= tol * ref_scale


def affine(point):
    """``z/w`` for a root pair, ``inf`` at infinity."""
    z, w = point
    return complex(z / w) if abs(w) > 1e-14 * abs(z) else complex("inf")
