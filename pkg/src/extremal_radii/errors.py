"""Exception types shared across the package.

Everything derives from ValueError so coarse callers can catch one class,
while the specific types carry the context a useful diagnostic needs: the
offending abscissa, the violated pair of disks, the nearby pole.
"""


class DomainError(ValueError):
    """An argument lies outside the domain an operation is defined on."""


class EvaluationError(ValueError):
    """A scan hit a non-finite function value; carries the abscissa."""

    def __init__(self, message: str, abscissa: float):
        super().__init__(f"{message} (at x = {abscissa!r})")
        self.abscissa = abscissa


class InfeasibleConfigurationError(ValueError):
    """A disk configuration violates a separation constraint; names the pair
    of disk indices involved when one applies (index 0 is the center disk)."""

    def __init__(self, message: str, pair: tuple[int, int] | None = None):
        super().__init__(message)
        self.pair = pair


class PoleProximityError(ValueError):
    """An evaluation point sits too close to a pole; carries the pole."""

    def __init__(self, message: str, pole: complex):
        super().__init__(message)
        self.pole = pole


class AmbiguousDirectionError(ValueError):
    """A trajectory was asked to start at a critical point, where the
    direction field has no single continuation."""
