"""Exception hierarchy for the arctanpow core."""


class ArctanPowError(Exception):
    """Base class for every error raised by the core package."""


class DomainError(ArctanPowError, ValueError):
    """Argument outside the domain of the requested function."""


class PoleError(DomainError):
    """A Pochhammer denominator vanished in a terminating sum."""


class DegenerateRecursionError(ArctanPowError):
    """The five-term recurrence was asked for a cell on the line 2k = n + 2."""

    def __init__(self, k: int, n: int):
        super().__init__(f"five-term recurrence is degenerate at (k={k}, n={n}); use the single-sum route")
        self.k = k
        self.n = n


class BasisOverflowError(ArctanPowError):
    """A digamma expression that must be rational kept a gamma or ln2 part."""


class ParityError(ArctanPowError):
    """A coefficient of the wrong parity was nonzero."""


class TableConflictError(ArctanPowError):
    """Two algorithms disagree on a coefficient cell."""

    def __init__(self, k: int, n: int, stored, offered, method: str):
        super().__init__(
            f"coefficient conflict at (k={k}, n={n}): stored {stored}, {method} produced {offered}"
        )
        self.k = k
        self.n = n
        self.stored = stored
        self.offered = offered
        self.method = method


class EmptyGridError(DomainError):
    """A verification grid selected no cases."""

    def __init__(self, identity: str, grid: dict):
        super().__init__(f"{identity}: grid {grid} selects no cases")
        self.identity = identity
        self.grid = grid
