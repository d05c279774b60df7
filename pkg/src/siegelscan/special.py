"""Real kernels on (0, 1): log-gamma, the reflected log-sine, and the identity.

``log_gamma`` uses the odd-power expansion

    log Gamma(1+z) = 1/2 log(pi z / sin(pi z)) - gamma z
                     - sum_{n>=1} zeta(2n+1) z^(2n+1) / (2n+1),

applied with |z| <= 1/2 (z = x - 1 on [1/2, 1), z = x on (0, 1/2) together with
Gamma(x) = Gamma(1+x)/x).  Only odd powers appear, and writing the first term
as log1p((u - sin u)/sin u) keeps the relative error small near x = 1 where
the result goes to zero.  Measured error is below 3 ulp against a 300-bit
reference.
"""
from __future__ import annotations

import enum
import math

import numpy as np

from .errors import KernelDomainError

EULER_GAMMA = 0.5772156649015329
LOG_PI = 1.1447298858494002

# zeta(2n+1) for n = 1..30, rounded from 200-bit values
_ZETA_ODD = (
    1.2020569031595942,
    1.03692775514337,
    1.008349277381923,
    1.0020083928260821,
    1.0004941886041194,
    1.0001227133475785,
    1.000030588236307,
    1.0000076371976379,
    1.0000019082127165,
    1.0000004769329869,
    1.000000119219926,
    1.0000000298035034,
    1.0000000074507118,
    1.0000000018626598,
    1.0000000004656628,
    1.0000000001164155,
    1.0000000000291038,
    1.000000000007276,
    1.000000000001819,
    1.0000000000004547,
    1.0000000000001137,
    1.0000000000000284,
    1.000000000000007,
    1.0000000000000018,
    1.0000000000000004,
    1.0000000000000002,
    1.0,
    1.0,
    1.0,
    1.0,
)
_SERIES = tuple(z / (2 * n + 3) for n, z in enumerate(_ZETA_ODD))

# (-1)^k / (2k+3)!, so that u - sin(u) = u^3 * sum_k c_k u^(2k)
_U_MINUS_SIN = (
    0.16666666666666666,
    -0.008333333333333333,
    0.0001984126984126984,
    -2.7557319223985893e-06,
    2.505210838544172e-08,
    -1.6059043836821613e-10,
    7.647163731819816e-13,
    -2.8114572543455206e-15,
    8.22063524662433e-18,
    -1.9572941063391263e-20,
    3.868170170630684e-23,
    -6.446950284384474e-26,
)


class KernelFn(enum.Enum):
    """Which f(x) is summed against the character values."""

    IDENTITY = "identity"
    LOG_GAMMA = "log_gamma"
    LOG_SIN_NEG = "log_sin_neg"

    @property
    def for_even_characters(self) -> bool:
        return self is not KernelFn.IDENTITY


def _check_unit_interval(x):
    arr = np.asarray(x)
    if not np.all((arr > 0.0) & (arr < 1.0)):
        raise KernelDomainError("kernel argument must lie in the open interval (0, 1)")


def _horner(coeffs, t):
    acc = 0.0 * t
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


def _log_gamma_1p(z):
    # valid for |z| <= 1/2, scalar or array
    z2 = z * z
    tail = _horner(_SERIES, z2) * z2 * z
    u = math.pi * z
    d = _horner(_U_MINUS_SIN, u * u) * u * u * u
    if isinstance(z, np.ndarray):
        with np.errstate(invalid="ignore", divide="ignore"):
            head = np.where(z == 0.0, 0.0, 0.5 * np.log1p(d / np.sin(u)))
    else:
        head = 0.5 * math.log1p(d / math.sin(u)) if z else 0.0
    return head - EULER_GAMMA * z - tail


def log_gamma(x: float) -> float:
    """log Gamma(x) for 0 < x < 1."""
    if not 0.0 < x < 1.0:
        raise KernelDomainError(f"log_gamma needs 0 < x < 1, got {x!r}")
    if x >= 0.5:
        return _log_gamma_1p(x - 1.0)
    return _log_gamma_1p(x) - math.log(x)


def log_gamma_array(x) -> np.ndarray:
    """Vectorised ``log_gamma``."""
    x = np.asarray(x, dtype=np.float64)
    _check_unit_interval(x)
    upper = x >= 0.5
    z = np.where(upper, x - 1.0, x)
    out = _log_gamma_1p(z)
    return np.where(upper, out, out - np.log(x))


def neg_log_sin_pi(x: float) -> float:
    """-log(sin(pi x)) for 0 < x < 1, evaluated on the half nearer zero."""
    if not 0.0 < x < 1.0:
        raise KernelDomainError(f"neg_log_sin_pi needs 0 < x < 1, got {x!r}")
    if x > 0.5:
        x = 1.0 - x
    return -math.log(math.sin(math.pi * x))


def neg_log_sin_pi_array(x) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    _check_unit_interval(x)
    x = np.where(x > 0.5, 1.0 - x, x)
    return -np.log(np.sin(np.pi * x))


def neg_log_sin_residues(a: np.ndarray, q: int) -> np.ndarray:
    """-log(sin(pi a/q)) for integer residues 0 < a < q.

    The fold a -> min(a, q-a) happens in integers, so the argument of sin is
    a single rounding of a value in (0, pi/2].
    """
    a = np.asarray(a, dtype=np.int64)
    folded = np.minimum(a, q - a)
    return -np.log(np.sin(np.pi * (folded / q)))


def apply_kernel(kernel: KernelFn, a: np.ndarray, q: int) -> np.ndarray:
    """f(a/q) for residues a in [1, q-1]."""
    if kernel is KernelFn.IDENTITY:
        return np.asarray(a, dtype=np.float64) / q
    if kernel is KernelFn.LOG_SIN_NEG:
        return neg_log_sin_residues(a, q)
    return log_gamma_array(np.asarray(a, dtype=np.float64) / q)
