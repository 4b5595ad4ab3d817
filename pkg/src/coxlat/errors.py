"""Exception hierarchy shared by all modules.

Verdicts (a class not in the cone, a flat that does not reduce) are returned
as values, not raised; the exceptions below signal bad input or broken
internal invariants.
"""


class CoxlatError(Exception):
    pass


class InvalidRank(CoxlatError, ValueError):
    pass


class ShapeError(CoxlatError, ValueError):
    pass


class RankError(CoxlatError, ValueError):
    pass


class InvalidInput(CoxlatError, ValueError):
    pass


class NotEffectiveLike(CoxlatError, ValueError):
    """A class fails the pairwise test a_i + a_j >= 0 before any descent."""

    def __init__(self, i: int, j: int, coeffs):
        self.i, self.j = i, j
        super().__init__(
            f"pairwise condition fails: a_{i} + a_{j} < 0 for {list(coeffs)}"
        )


class InvalidNormVector(CoxlatError, ValueError):
    pass


class DegenerateCloud(CoxlatError, ValueError):
    pass


class InternalError(CoxlatError, RuntimeError):
    pass
