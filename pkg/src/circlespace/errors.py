"""Exception hierarchy.

Every error raised by the package derives from :class:`CircleSpaceError`,
which is a ``ValueError`` so that callers validating user input can catch
either.
"""


class CircleSpaceError(ValueError):
    pass


class NotUnit(CircleSpaceError):
    pass


class NotImaginary(CircleSpaceError):
    pass


class NotIsotropic(CircleSpaceError):
    pass


class NotCotangent(CircleSpaceError):
    pass


class DegenerateInput(CircleSpaceError):
    pass


class DegenerateCircle(CircleSpaceError):
    pass


class NotInW(CircleSpaceError):
    pass


class NonNull(CircleSpaceError):
    pass


class NotConformal(CircleSpaceError):
    def __init__(self, defect):
        super().__init__(f"matrix does not preserve the indefinite form (defect {defect:.3e})")
        self.defect = defect


class ZeroCurve(CircleSpaceError):
    pass


class NotDegreeOne(CircleSpaceError):
    pass


class NormalizationFailed(CircleSpaceError):
    pass


class CurveFitError(CircleSpaceError):
    pass


class RootFindingFailed(CircleSpaceError):
    pass


class MultiValued(CircleSpaceError):
    def __init__(self, x, n_roots):
        super().__init__(f"surface meets the twistor fiber in {n_roots} distinct points")
        self.x = x
        self.n_roots = n_roots


class FieldUndefined(CircleSpaceError):
    pass


class EmptyInput(CircleSpaceError):
    pass
