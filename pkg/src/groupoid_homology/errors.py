"""Exception types shared across the package."""


class DimensionMismatch(ValueError):
    """Matrix or vector shapes are incompatible with the requested operation."""


class NoIntegerSolution(ValueError):
    """The linear system has no solution over the integers."""


class NonCommuting(ValueError):
    """A family of matrices or permutations that must commute does not."""


class BrokenComplex(RuntimeError):
    """An internal chain-complex consistency check failed.

    This is always a bug: for commuting endomorphisms the boundary maps
    compose to zero by construction, so any violation means the assembly
    or the downstream algebra is wrong.
    """


class NotACycle(ValueError):
    """A vector passed as a cycle is not annihilated by the boundary map."""


class NotBijective(ValueError):
    """A map on a finite set that must be a bijection is not one."""


class RankUnsupported(ValueError):
    """The requested operation is gated to a range of ranks k."""


class HypothesisViolated(ValueError):
    """Input violates the hypotheses under which a closed form is valid."""


class SkeletonInvalid(ValueError):
    """A skeleton failed validation; carries the list of findings."""

    def __init__(self, findings):
        self.findings = list(findings)
        super().__init__("; ".join(self.findings))


class SchemaError(ValueError):
    """An instance file does not conform to the documented JSON schema."""
