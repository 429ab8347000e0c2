import numpy as np
import pytest
from hypothesis import given, strategies as st

from circlespace.binary import affine, chart, roots, substitute
from circlespace.errors import RootFindingFailed


def test_simple_roots():
    # z^2 - w^2
    vals = sorted(affine(p).real for p, _ in roots([-1, 0, 1]))
    assert np.allclose(vals, [-1, 1])


def test_root_at_infinity():
    # f = w (z - 2 w): roots z = 2 and [1:0]
    out = roots([-2, 1, 0])
    zs = [affine(p) for p, _ in out]
    assert any(np.isinf(z.real) for z in zs)
    assert any(np.isclose(z, 2) for z in zs if np.isfinite(z.real))


def test_multiplicities():
    # (z - w)^3
    out = roots([-1, 3, -3, 1])
    assert len(out) == 1
    assert out[0][1] == 3
    assert np.isclose(affine(out[0][0]), 1, atol=1e-4)
    # (z - w)^2 (z + w)
    out = sorted(roots([1, -1, -1, 1]), key=lambda r: r[1])
    assert [m for _, m in out] == [1, 2]
    assert np.isclose(affine(out[1][0]), 1, atol=1e-6)


def test_degenerate_forms():
    assert roots([0, 0, 0]) is None
    assert roots([2.0]) == []
    with pytest.raises(RootFindingFailed):
        roots([np.nan, 1])


def test_chart_is_unitary():
    u = chart(0.3 + 0.2j)
    assert np.allclose(u.conj().T @ u, np.eye(2))


@given(st.lists(st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False),
                min_size=1, max_size=4))
def test_roots_reconstruct_random_forms(zs):
    zs = np.array(zs)
    if len(zs) > 1 and np.min(np.abs(zs[:, None] - zs[None, :]) + 10 * np.eye(len(zs))) < 1e-2:
        return
    coeffs = np.poly(zs)[::-1]
    found = roots(coeffs)
    assert sum(m for _, m in found) == len(zs)
    got = np.array([affine(p) for p, _ in found])
    for z in zs:
        assert np.min(np.abs(got - z)) < 1e-6 * (1 + abs(z))


def test_substitute_matches_direct_evaluation(rng):
    a = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    u = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    b = substitute(a, u)
    s, t = 0.4 - 0.3j, 1.2 + 0.1j
    z, w = u @ np.array([s, t])
    f = sum(a[k] * z ** k * w ** (3 - k) for k in range(4))
    g = sum(b[k] * s ** k * t ** (3 - k) for k in range(4))
    assert np.isclose(f, g)
