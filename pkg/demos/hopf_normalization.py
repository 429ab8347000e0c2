"""
Recognising the Hopf fibration
==============================

A circle fibration of S^3 is described by a curve of circles.  The Hopf
fibration x -> x e^{it} has a degree one curve, and so does every conformal
image of it.  normalize_curve undoes an unknown conformal map.
"""

import numpy as np

from circlespace import (curve_degree, hopf_curve, induced_on_W, normalize_curve, random_conformal,
                         validate_fibration)
from circlespace.moebius import reflection

np.set_printoptions(precision=3, suppress=True)

hopf = hopf_curve()
print("Hopf curve degree:", curve_degree(hopf))
print("every sampled point on exactly one fiber:", validate_fibration(hopf, samples=500).passed)

# scramble it with a random conformal map of S^3, acting on W as a Lorentz map
g = induced_on_W(random_conformal(seed=11))
print("Lorentz matrix of the map:\n", g.g)
moved = hopf.pushforward(g)
print("moved curve still degree", curve_degree(moved), "and a fibration:",
      validate_fibration(moved, samples=500).passed)

n = normalize_curve(moved)
print("normalizing isometry recovers the map:", np.allclose(n.isometry.g @ g.g, np.eye(5)))
print("residual:", n.residual, " sign:", n.sign)

# a mirror image of the Hopf fibration needs an orientation reversal
mirrored = hopf.pushforward(reflection())
print("mirror image normalizes with sign", normalize_curve(mirrored).sign)
