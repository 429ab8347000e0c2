"""Foliations of S^3 cut out by algebraic surfaces of CP^3.

A homogeneous polynomial ``F`` on C^4 meets the twistor line over each
point ``x`` of S^3 in the roots of the binary form ``F(a v + b vj)``.  Where
there is exactly one such point of Q it is a unit tangent at ``x``; the
resulting direction field is integrated to leaves with RK4 on S^3.
"""

import re
from dataclasses import dataclass, field

import numpy as np

from . import binary
from .circles import circle_through_points, incidence_value
from .errors import (DegenerateInput, FieldUndefined, MultiValued,
                     RootFindingFailed)
from .projective import check_unit, s3_line
from .quaternion import jmap, qmul, qnorm
from .tangent import TangentField, as_field, tangent_from_line


@dataclass(frozen=True)
class SurfaceSpec:
    """Sparse homogeneous polynomial ``sum c * z1^e1 z2^e2 z3^e3 z4^e4``."""
    terms: tuple   # ((coef, (e1, e2, e3, e4)), ...)
    text: str = ""

    def __post_init__(self):
        combined = {}
        for c, exps in self.terms:
            key = tuple(int(e) for e in exps)
            combined[key] = combined.get(key, 0) + complex(c)
        terms = tuple((c, e) for e, c in combined.items() if c != 0)
        if not terms:
            raise ValueError("surface polynomial is identically zero")
        degrees = {sum(e) for _, e in terms}
        if len(degrees) != 1:
            raise ValueError(f"polynomial is not homogeneous (degrees {sorted(degrees)})")
        if any(len(e) != 4 or min(e) < 0 for _, e in terms):
            raise ValueError("exponents must be four non-negative integers")
        object.__setattr__(self, "terms", terms)

    @property
    def degree(self):
        return sum(self.terms[0][1])

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        out = 0
        for c, e in self.terms:
            out = out + c * np.prod(z ** np.array(e), axis=-1)
        return out

    def restrict(self, v, w):
        """Coefficients of ``a -> F(a v + b w)`` in ascending powers of ``a``.

        ``v, w`` may carry leading batch axes; the result has shape
        ``(..., degree + 1)``.
        """
        v = np.asarray(v, dtype=complex)
        w = np.asarray(w, dtype=complex)
        d = self.degree
        out = np.zeros(np.broadcast_shapes(v.shape, w.shape)[:-1] + (d + 1,), dtype=complex)
        for c, exps in self.terms:
            poly = np.ones(out.shape[:-1] + (1,), dtype=complex) * c
            for i, e in enumerate(exps):
                lin = np.stack(np.broadcast_arrays(w[..., i], v[..., i]), axis=-1)
                for _ in range(e):
                    poly = _batched_convolve(poly, lin)
            out += poly
        return out


def _batched_convolve(a, b):
    n, m = a.shape[-1], b.shape[-1]
    out = np.zeros(np.broadcast_shapes(a.shape[:-1], b.shape[:-1]) + (n + m - 1,), dtype=complex)
    for i in range(n):
        out[..., i:i + m] += a[..., i:i + 1] * b
    return out


_TERM_SPLIT = re.compile(r"([+-])")
_COMPLEX = re.compile(r"^\(\s*([+-]?[\d.]+(?:[eE][+-]?\d+)?)?\s*(?:([+-])\s*([\d.]+(?:[eE][+-]?\d+)?)?\s*i)?\s*\)$")
_VAR = re.compile(r"^z([1-4])(?:\^(\d+))?$")
_REAL = re.compile(r"^[\d.]+(?:[eE][+-]?\d+)?$")


def _split_terms(text):
    """Split at top-level + and - signs (not inside parentheses or exponents)."""
    terms, depth, start, sign = [], 0, 0, 1
    s = text.replace(" ", "")
    i = 0
    while i < len(s):
        ch = s[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and i > 0 and s[i - 1] not in "eE^*":
            terms.append((sign, s[start:i]))
            sign = 1 if ch == "+" else -1
            start = i + 1
        elif ch in "+-" and i == 0:
            sign = 1 if ch == "+" else -1
            start = 1
        i += 1
    terms.append((sign, s[start:]))
    return terms


def _parse_coefficient(tok):
    if _REAL.match(tok):
        return complex(float(tok))
    m = _COMPLEX.match(tok)
    if not m:
        raise ValueError(f"cannot parse coefficient {tok!r}")
    re_part, im_sign, im_val = m.groups()
    re_val = float(re_part) if re_part else 0.0
    if im_sign is None:
        return complex(re_val)
    im = float(im_val) if im_val else 1.0
    return complex(re_val, im if im_sign == "+" else -im)


def parse_surface(text):
    """Parse ``"z1^2*z4 - (1+2i)*z2*z3^2"`` into a :class:`SurfaceSpec`."""
    if not text or not text.strip():
        raise ValueError("empty surface expression")
    terms = []
    for sign, body in _split_terms(text):
        if not body:
            raise ValueError(f"dangling sign in {text!r}")
        coef = complex(sign)
        exps = [0, 0, 0, 0]
        for factor in body.split("*"):
            m = _VAR.match(factor)
            if m:
                exps[int(m.group(1)) - 1] += int(m.group(2) or 1)
            else:
                coef *= _parse_coefficient(factor)
        terms.append((coef, tuple(exps)))
    return SurfaceSpec(tuple(terms), text)


def surface_tangents(F, x, merge_tol=1e-6):
    """All unit tangents at ``x`` cut out by ``F`` (one per distinct root)."""
    x = check_unit(x)
    v = s3_line(x)
    vj = jmap(v)
    rts = binary.roots(F.restrict(v, vj), merge_tol=merge_tol)
    if rts is None:
        raise FieldUndefined("the twistor line over x lies in the surface")
    lines = [a * v + b * vj for (a, b), _ in rts]
    return [tangent_from_line(u) for u in lines], [m for _, m in rts]


def surface_distribution(F):
    """The partial direction field of the surface ``F = 0`` intersected with Q.

    The returned field raises :class:`MultiValued` where the surface meets
    a twistor line in several distinct points and :class:`FieldUndefined`
    where it contains the whole line.
    """
    if isinstance(F, str):
        F = parse_surface(F)

    def mu_fn(x):
        x = np.asarray(x, dtype=float)
        flat = x.reshape(-1, 4)
        v = s3_line(flat)
        vj = jmap(v)
        coeffs = F.restrict(v, vj)
        scale = np.max(np.abs(coeffs), axis=-1)
        if not np.all(np.isfinite(coeffs)):
            raise RootFindingFailed("non-finite restriction of the surface")
        if F.degree == 1:
            # a1 a + a0 b = 0  ->  [a : b] = [-a0 : a1]
            if np.any(scale == 0):
                raise FieldUndefined("the twistor line over x lies in the surface")
            a, b = -coeffs[:, 0], coeffs[:, 1]
        else:
            a = np.empty(len(flat), dtype=complex)
            b = np.empty(len(flat), dtype=complex)
            for i in range(len(flat)):
                rts = binary.roots(coeffs[i])
                if rts is None:
                    raise FieldUndefined("the twistor line over x lies in the surface")
                if len(rts) != 1:
                    raise MultiValued(flat[i], len(rts))
                a[i], b[i] = rts[0][0]
        u = a[:, None] * v + b[:, None] * vj
        return tangent_from_line(u).mu.reshape(x.shape)

    return TangentField(mu_fn, F.text or "surface")


@dataclass
class Leaf:
    samples: np.ndarray          # (N, 4) points of S^3 in integration order
    closed: bool
    closure_error: float = np.inf
    period: float = np.nan
    seed: np.ndarray = field(default=None, repr=False)

    def to_json(self):
        return {"samples": self.samples.tolist(), "closed": self.closed,
                "closure_error": None if np.isinf(self.closure_error) else self.closure_error,
                "period": None if np.isnan(self.period) else self.period}

    @classmethod
    def from_json(cls, d):
        err = d.get("closure_error")
        per = d.get("period")
        return cls(np.asarray(d["samples"], dtype=float), bool(d["closed"]),
                   np.inf if err is None else float(err), np.nan if per is None else float(per))


def _velocity(T, x):
    try:
        mu = T.mu(x)
    except (MultiValued, FieldUndefined, RootFindingFailed) as exc:
        raise FieldUndefined(f"field undefined along the trajectory: {exc}") from exc
    return qmul(x, mu)


def _rk4_step(T, x, h):
    h = np.asarray(h, dtype=float)[..., None] if np.ndim(h) else h
    k1 = _velocity(T, x)
    k2 = _velocity(T, _renorm(x + 0.5 * h * k1))
    k3 = _velocity(T, _renorm(x + 0.5 * h * k2))
    k4 = _velocity(T, _renorm(x + h * k3))
    return _renorm(x + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4))


def _renorm(x):
    return x / qnorm(x)[..., None]


def integrate_leaves(T, seeds, step=1e-3, max_t=8 * np.pi, tol_close=1e-6):
    """Integrate ``x' = x mu(x)`` from several seeds at once.

    A leaf closes when it crosses the hyperplane through its seed orthogonal
    to the initial direction, close to the seed and moving the same way; the
    crossing time is found by re-stepping from the last sample.
    """
    T = as_field(T)
    seeds = check_unit(np.atleast_2d(np.asarray(seeds, dtype=float)))
    n_steps = int(np.ceil(max_t / step))
    d0 = _velocity(T, seeds)
    x = seeds.copy()
    prev_s = np.zeros(len(seeds))
    active = np.ones(len(seeds), dtype=bool)
    paths = [x.copy()]
    results = [None] * len(seeds)
    min_steps = max(8, int(0.1 / step))
    for i in range(1, n_steps + 1):
        if not active.any():
            break
        idx = np.flatnonzero(active)
        x_new = x.copy()
        x_new[idx] = _rk4_step(T, x[idx], step)
        s = np.einsum("ij,ij->i", x_new - seeds, d0)
        near = np.linalg.norm(x_new - seeds, axis=1) < max(20 * step, 1e-2)
        crossed = active & (prev_s < 0) & (s >= 0) & near & (i > min_steps)
        for j in np.flatnonzero(crossed):
            h, xc = _refine_crossing(T, x[j], seeds[j], d0[j], step)
            err = float(np.linalg.norm(xc - seeds[j]))
            same_dir = np.dot(_velocity(T, xc), d0[j]) > 0
            closed = bool(same_dir and err < tol_close)
            samples = np.array([p[j] for p in paths] + [xc])
            results[j] = Leaf(samples, closed, err, (i - 1) * step + h, seeds[j])
            active[j] = False
        paths.append(x_new)
        x = x_new
        prev_s = s
    for j in np.flatnonzero(active):
        results[j] = Leaf(np.array([p[j] for p in paths]), False, seed=seeds[j])
    return results


def integrate_leaf(T, x0, step=1e-3, max_t=8 * np.pi, tol_close=1e-6):
    """Integrate a single leaf; see :func:`integrate_leaves`."""
    return integrate_leaves(T, [x0], step, max_t, tol_close)[0]


def _refine_crossing(T, x, seed, d0, step, iters=60):
    def section(h):
        y = _rk4_step(T, x, h)
        return float(np.dot(y - seed, d0)), y
    lo, hi = 0.0, step
    f_lo, _ = section(lo)
    f_hi, y_hi = section(hi)
    y = y_hi
    h = hi
    # Illinois regula falsi
    side = 0
    for _ in range(iters):
        h = (lo * f_hi - hi * f_lo) / (f_hi - f_lo)
        f, y = section(h)
        if abs(f) < 1e-15:
            break
        if (f < 0) == (f_lo < 0):
            lo, f_lo = h, f
            if side == -1:
                f_hi /= 2
            side = -1
        else:
            hi, f_hi = h, f
            if side == 1:
                f_lo /= 2
            side = 1
    return h, y


def _spread_triples(n, count=5):
    for r in range(count):
        off = r * max(1, n // (6 * count))
        yield off % n, (off + n // 3) % n, (off + 2 * n // 3) % n


def leaf_circle(leaf):
    """Oriented circle through three spread samples, oriented along the leaf."""
    pts = np.asarray(leaf.samples)
    n = len(pts)
    if n < 8:
        raise DegenerateInput("leaf needs at least 8 samples")
    last_error = None
    for i, j, k in _spread_triples(n - 1 if leaf.closed else n):
        try:
            return circle_through_points(pts[i], pts[j], pts[k])[0]
        except DegenerateInput as exc:
            last_error = exc
    raise DegenerateInput(f"no well-spread sample triple: {last_error}")


def leaf_is_circle(leaf, tol=1e-6):
    """Fit a circle to the leaf and report the largest incidence defect."""
    k = leaf_circle(leaf)
    dev = float(np.max(incidence_value(np.asarray(leaf.samples), k)))
    return dev < tol, dev
