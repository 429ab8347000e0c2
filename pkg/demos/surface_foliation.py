"""
A foliation cut out by the plane z4 = 0
=======================================

Intersecting the surface z4 = 0 with the quadric of unit tangents gives one
tangent direction at each point of S^3.  Its integral curves are circles,
they fit a degree one curve, and the picture is a ring of linked fibers.
"""

from pathlib import Path

import numpy as np

from circlespace import (curve_degree, fit_curve, integrate_leaves, leaf_is_circle,
                         normalize_curve, random_s3, render_svg, surface_distribution)
from circlespace.foliation import leaf_circle
from circlespace.tangent import conformality_residual

rng = np.random.default_rng(0)
field = surface_distribution("z4")

leaves = integrate_leaves(field, random_s3(rng, 12))
print("closed leaves:", sum(leaf.closed for leaf in leaves), "of", len(leaves))
print("periods:", np.round([leaf.period for leaf in leaves], 6))
print("largest distance from a circle:", max(leaf_is_circle(leaf)[1] for leaf in leaves))
print("conformality residual at a random point:", conformality_residual(field, random_s3(rng)))

curve, residual = fit_curve([leaf_circle(leaf) for leaf in leaves])
print("fitted curve degree", curve_degree(curve), "fit residual", residual)
print("normalization sign", normalize_curve(curve).sign)

out = Path("z4_leaves.svg")
out.write_text(render_svg(leaves))
print("wrote", out)
