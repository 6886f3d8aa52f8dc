"""Exception types shared across the package."""


class HeightLatError(Exception):
    """Base class for all package errors."""


class DimensionError(HeightLatError):
    """An operation requiring a specific lattice dimension got another one."""


class InvalidHeightFunction(HeightLatError):
    """Candidate values violate the parity or gradient constraints.

    Carries the full violation report in ``self.violations``.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        preview = ", ".join(map(str, self.violations[:4]))
        more = "" if len(self.violations) <= 4 else f" (+{len(self.violations) - 4} more)"
        super().__init__(f"{len(self.violations)} constraint violations: {preview}{more}")


class InfeasibleBoundary(HeightLatError):
    """Boundary values admit no valid extension to the interior."""


class DomainTooLarge(HeightLatError):
    """Enumeration guard tripped: the estimated count exceeds the ceiling."""

    def __init__(self, estimate, ceiling):
        self.estimate = estimate
        self.ceiling = ceiling
        super().__init__(f"estimated {estimate} leaves exceeds ceiling {ceiling}")


class NotInterior(HeightLatError):
    """A chain update was requested at a non-interior vertex."""


class NoCoalescence(HeightLatError):
    """Coupling from the past hit the epoch cap without coalescing."""

    def __init__(self, t_max):
        self.t_max = t_max
        super().__init__(f"no coalescence up to horizon {t_max} sweeps")


class InvalidSwap(HeightLatError):
    """A pair transform produced an invalid configuration (implementation bug)."""


class PreconditionViolation(HeightLatError):
    """Arguments disagree with the documented preconditions of an operation."""


class WindowTooSmall(HeightLatError):
    """The observation window does not contain the probed ball with margin."""


class ParityMixedSupport(HeightLatError):
    """A single-site distribution mixes both height parities."""


class BoundaryNotEven(HeightLatError):
    """The operation requires the outer boundary to lie on the even sublattice."""


class NotNested(HeightLatError):
    """Domination checks need the first domain nested inside the second."""


class ConfigError(HeightLatError):
    """An experiment configuration file is malformed; names the offending field."""

    def __init__(self, field, message):
        self.field = field
        super().__init__(f"config field '{field}': {message}")
