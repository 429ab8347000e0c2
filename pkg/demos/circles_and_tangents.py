"""
Circles in S^3 as points of a quadric
=====================================

An oriented circle of the 3-sphere is a null bivector in W.  Points of S^3
become degenerate "point circles", and a point lies on a circle exactly
when the two are orthogonal for the quadratic form G.
"""

import numpy as np

from circlespace import (circle_through_points, incidence_value, parametrize_circle,
                         point_circle, tangent_to_line)
from circlespace.circles import G, LABELS
from circlespace.quaternion import I, J, K, ONE, omega

np.set_printoptions(precision=4, suppress=True)

# the circle through 1, i, -1 is the unit circle of C inside H
k, k_rev = circle_through_points(ONE, I, -ONE)
print("circle 1 -> i -> -1:", dict(zip(LABELS, k)))
print("reverse orientation:", dict(zip(LABELS, k_rev)))

# point circles are null, and incidence is G-orthogonality
p = point_circle(ONE)
print("G(p, p) =", G(p, p), "  |G(p, k)| =", incidence_value(ONE, k))
print("j is off the circle: |G| =", incidence_value(J, k))

# sampling the circle returns unit tangents; x * mu is the velocity
t = parametrize_circle(k, n=6)
print("sampled points:\n", t.x)
print("tangent directions mu:\n", t.mu)

# two tangents of one circle are Omega-orthogonal as points of CP^3 ...
u = tangent_to_line(t)
print("|Omega| between tangents of one circle:", abs(omega(u[0], u[3])))
# ... while unrelated tangents are not
v = tangent_to_line((J, K))
print("|Omega| for an unrelated tangent:", abs(omega(u[0], v)))
