"""Tolerance bundle shared by all modules.

The defaults can be overridden for a whole process with the environment
variable ``CIRCLESPACE_TOL`` holding a JSON object, e.g.
``CIRCLESPACE_TOL='{"incidence": 1e-7}'``.
"""

import dataclasses
import json
import os

ENV_VAR = "CIRCLESPACE_TOL"


@dataclasses.dataclass(frozen=True)
class Tolerances:
    null: float = 1e-9         # relative, isotropy and Omega-vanishing
    unit: float = 1e-9         # | |x| - 1 |, Re(mu)
    proj: float = 1e-9         # projective equality, squared-cosine defect
    incidence: float = 1e-8    # |G(point, circle)| on unit representatives
    real: float = 1e-7         # projective distance sigma(k) <-> k
    group: float = 1e-10       # conformal-map invariant
    gcd: float = 1e-6          # common-root matching in curve_degree
    root_merge: float = 1e-6   # root clustering on CP^1 (chordal)
    close: float = 1e-6        # leaf closure
    fit: float = 1e-7          # curve fitting rank threshold


DEFAULT = Tolerances()
_cache = {}


def from_env(environ=None):
    """Build a bundle from ``CIRCLESPACE_TOL`` (falls back to defaults)."""
    environ = os.environ if environ is None else environ
    raw = environ.get(ENV_VAR)
    if not raw:
        return DEFAULT
    try:
        overrides = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ValueError(f"{ENV_VAR} is not valid JSON: {exc}") from None
    if not isinstance(overrides, dict):
        raise ValueError(f"{ENV_VAR} must be a JSON object")
    known = {f.name for f in dataclasses.fields(Tolerances)}
    unknown = set(overrides) - known
    if unknown:
        raise ValueError(f"unknown tolerance(s) in {ENV_VAR}: {sorted(unknown)}")
    return dataclasses.replace(DEFAULT, **{k: float(v) for k, v in overrides.items()})


def current():
    raw = os.environ.get(ENV_VAR)
    if raw not in _cache:
        _cache[raw] = from_env()
    return _cache[raw]
