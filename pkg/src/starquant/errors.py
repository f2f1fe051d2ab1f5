"""Exception types raised across the package.

Index tuples carried by the algebra violations are 1-based, matching the
JSON schema and the way structure constants are usually written down.
"""


class StarQuantError(Exception):
    pass


class AntisymmetryViolation(StarQuantError):
    def __init__(self, i, j, k):
        self.indices = (i, j, k)
        super().__init__(f"c[{i}][{j}][{k}] != -c[{j}][{i}][{k}]")


class JacobiViolation(StarQuantError):
    def __init__(self, i, j, k, l):
        self.indices = (i, j, k, l)
        super().__init__(f"Jacobi identity fails at (i,j,k,l)=({i},{j},{k},{l})")


class DimensionMismatch(StarQuantError):
    pass


class UnknownAlgebra(StarQuantError):
    pass


class AlgebraMismatch(StarQuantError):
    pass


class JetOrderExhausted(StarQuantError):
    pass


class JetNotEvaluable(StarQuantError):
    pass


class NonNormalizableBasis(StarQuantError):
    pass


class GroupDataMismatch(StarQuantError):
    pass


class FiberConstantRequired(StarQuantError):
    pass


class ParseError(StarQuantError):
    pass
