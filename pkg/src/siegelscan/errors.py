"""Exception types raised across the package."""


class InvalidModulusError(ValueError):
    """The modulus is not an odd prime (or otherwise out of the supported range)."""


class DomainError(ValueError):
    """A quantity was requested outside the range where it is defined."""


class KernelDomainError(DomainError):
    """A kernel was evaluated outside the open interval (0, 1)."""


class MismatchError(ValueError):
    """Two inputs that must describe the same prime do not."""


class ResourceLimitError(MemoryError):
    """An allocation for a per-prime array could not be satisfied."""


class IntegralityError(ArithmeticError):
    """(sqrt(q)/pi) L(1, chi) is too far from an integer to be a class number."""

    def __init__(self, q, value, residual):
        self.q = q
        self.value = value
        self.residual = residual
        super().__init__(
            f"q={q}: (sqrt(q)/pi)*L = {value!r} is {residual:.3e} away from an integer"
        )


class VerificationError(AssertionError):
    """Recomputed values disagree with the reference tables."""

    def __init__(self, failures):
        self.failures = list(failures)
        lines = [f"q={q} {col}: got {got!r}, want {want}" for q, col, got, want in self.failures[:20]]
        more = len(self.failures) - 20
        if more > 0:
            lines.append(f"... and {more} more")
        super().__init__("golden verification failed:\n" + "\n".join(lines))


class CheckpointError(RuntimeError):
    """A checkpoint file is unreadable or belongs to a different scan configuration."""
