import numpy as np
from hypothesis import strategies as st

finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)
quaternions = st.lists(finite, min_size=4, max_size=4).map(np.array)


def _unit(v):
    n = np.linalg.norm(v)
    return v / n


s3_points = (st.lists(st.floats(-1, 1, allow_nan=False), min_size=4, max_size=4)
             .map(np.array)
             .filter(lambda v: np.linalg.norm(v) > 1e-2)
             .map(_unit))

imaginary_units = (st.lists(st.floats(-1, 1, allow_nan=False), min_size=3, max_size=3)
                   .map(lambda v: np.array([0.0, *v]))
                   .filter(lambda v: np.linalg.norm(v) > 1e-2)
                   .map(_unit))

h2_vectors = st.lists(finite, min_size=8, max_size=8).map(lambda v: np.array(v).reshape(2, 4))
seeds = st.integers(0, 2**31 - 1)
