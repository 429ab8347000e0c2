"""
Conformal maps move circles to circles
======================================

A 2x2 quaternionic matrix preserving the indefinite form acts on S^3 by
fractional linear maps.  The same matrix acts on CP^3 and on W, and all
three actions agree.
"""

import numpy as np

from circlespace import (act_on_circle, act_on_point, circle_through_points, incidence_value,
                         parametrize_circle, random_conformal, random_s3)
from circlespace.moebius import induced_on_W

rng = np.random.default_rng(5)
phi = random_conformal(seed=3)
print("quaternionic matrix entries:\n", phi.m.reshape(4, 4).round(3))

g = induced_on_W(phi)
print("preserves G on W to", g.defect(), " time orientation", g.time_orientation)

k, _ = circle_through_points(*random_s3(rng, 3))
pts = parametrize_circle(k, n=200).x
image_pts = act_on_point(phi, pts)
image_circle = act_on_circle(phi, k)
print("mapped points lie on the mapped circle to", np.max(incidence_value(image_pts, image_circle)))

# distances are not preserved, only angles
print("chord lengths before:", np.linalg.norm(pts[1] - pts[0]).round(5),
      " after:", np.linalg.norm(image_pts[1] - image_pts[0]).round(5))
