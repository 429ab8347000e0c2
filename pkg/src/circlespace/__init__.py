"""Oriented circles in the 3-sphere through the quadric model in CP^3.

Unit tangents of S^3 are the points of an isotropic quadric ``Q`` in CP^3,
oriented circles are Omega-null, G-null bivectors (the quadric ``Q^3`` in
``P(W)``), and conformal maps of S^3 act on both.  On top of this the
package analyses fibration curves and integrates foliations cut out by
algebraic surfaces.
"""

from .circles import (canonical_real_basis, circle_from_tangents, circle_parameter,
                      circle_through_points, incidence_value, is_incident, is_real,
                      parametrize_circle, point_circle, random_circle, tangent_at)
from .errors import CircleSpaceError
from .fibration import (FibrationCurve, curve_degree, fit_curve, hopf_curve, normalize_curve,
                        validate_fibration)
from .foliation import (Leaf, integrate_leaf, integrate_leaves, leaf_is_circle, parse_surface,
                        surface_distribution)
from .moebius import (ConformalMap, WIsometry, act_on_circle, act_on_point, act_on_tangent,
                      check_conformal, induced_on_W, random_conformal)
from .projective import fiber_basis, is_in_Q, random_s3, twistor_project
from .quaternion import eval_forms, from_c4, jmap, to_c4
from .render import RenderOptions, render_svg
from .tangent import (TangentField, UnitTangent, conformality_residual, cross, hopf_field,
                      line_to_tangent, tangent_to_line, unit_tangent)
from .tolerances import Tolerances

__all__ = [
    "CircleSpaceError", "ConformalMap", "FibrationCurve", "Leaf", "RenderOptions",
    "TangentField", "Tolerances", "UnitTangent", "WIsometry",
    "act_on_circle", "act_on_point", "act_on_tangent", "canonical_real_basis", "check_conformal",
    "circle_from_tangents", "circle_parameter", "circle_through_points", "conformality_residual",
    "cross", "curve_degree", "eval_forms", "fiber_basis", "fit_curve", "from_c4", "hopf_curve",
    "hopf_field", "incidence_value", "induced_on_W", "integrate_leaf", "integrate_leaves",
    "is_in_Q", "is_incident", "is_real", "jmap", "leaf_is_circle", "line_to_tangent",
    "normalize_curve", "parametrize_circle", "parse_surface", "point_circle", "random_circle",
    "random_conformal", "random_s3", "render_svg", "surface_distribution", "tangent_at",
    "tangent_to_line", "to_c4", "twistor_project", "unit_tangent", "validate_fibration",
]
