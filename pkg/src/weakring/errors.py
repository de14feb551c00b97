"""Exception hierarchy shared by every module."""


class WeakRingError(Exception):
    pass


class InvalidExpr(WeakRingError):
    """Ring expression is malformed or names an invalid construction."""


class OrderOverflow(WeakRingError):
    """Ring is too large to tabulate and has no structured form."""


class RingMismatch(WeakRingError):
    """Operands belong to different rings."""


class StructuredUnsupported(WeakRingError):
    """Operation needs exhaustive access but the ring is structured."""


class BudgetExceeded(WeakRingError):
    """An exhaustive scan would exceed the configured element budget."""


class PreconditionViolated(WeakRingError):
    pass


class SixNotNilpotent(WeakRingError):
    """6·1 is not nilpotent, so the ring cannot be weakly nil-clean."""


class NotCentralIdempotent(WeakRingError):
    pass


class Singular(WeakRingError):
    """Matrix has no inverse."""
