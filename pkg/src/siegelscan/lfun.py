"""|L(1, chi)| for the quadratic character mod an odd prime q.

Three independent routes:

* ``l1_direct`` sums Legendre symbols (Euler's criterion) against a/q or
  log Gamma(a/q).  It never touches a primitive root and serves as the oracle.
* ``l1_alternating`` walks the primitive-root powers a_k, where the quadratic
  character is (-1)^k, and folds k with k + (q-1)/2 using a_{k+qbar} = q - a_k.
  This is the production path: O(q), no complex arithmetic.
* ``l1_fft_spectrum`` computes the whole spectrum over all characters with two
  length-(q-1)/2 transforms (decimation in frequency); ``extract_quadratic``
  reads off the entry j = (q-1)/2.

Odd characters (q = 3 mod 4) use L = (pi/sqrt q) |sum_a a chi(a) / q|, and the
integer sum is formed exactly.  Even characters (q = 1 mod 4) use
L = (2/sqrt q) |sum_a chi(a) log Gamma(a/q)|; by the reflection formula the
paired terms reduce to -log sin(pi a/q) / 2 plus a constant that the character
sum annihilates.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arith import (
    PowerSequence,
    PrimeContext,
    build_power_sequence,
    check_odd_prime,
    check_same_prime,
    legendre_array,
)
from .fftcheck import EPS_BINARY64, delta_model, norm2_x, norminf_y
from .dft import dft
from .summation import compensated_sum
from .special import KernelFn, apply_kernel, log_gamma_array, neg_log_sin_residues

METHODS = ("direct", "alternating", "fft")

# ulps charged per kernel term: the kernel itself (<= 4), the rounding of a/q,
# and the final correctly rounded summation
_KERNEL_ULPS = 8.0


@dataclass(frozen=True)
class LValue:
    q: int
    value: float
    method: str
    err_bound: float
    even: bool

    @property
    def parity(self) -> str:
        return "even" if self.even else "odd"


@dataclass(frozen=True)
class Spectrum:
    """|L(1, chi_1^j)| indexed by j in [0, q-2], chi_1(g) = exp(2 pi i/(q-1)).

    Entry 0 (principal character) is NaN.  When built for a single kernel, the
    entries whose parity the kernel does not serve are NaN as well.
    """

    q: int
    magnitudes: np.ndarray
    kernel: KernelFn | None = None


def _sum_abs_even_fused(q: int) -> float:
    # sum_{a=1}^{(q-1)/2} -log sin(pi a/q) = ((q-1) log 2 - log q) / 2
    return 0.5 * ((q - 1) * math.log(2.0) - math.log(q))


def _sum_abs_log_gamma(q: int) -> float:
    # sum_{a=1}^{q-1} log Gamma(a/q) = (q-1)/2 log(2 pi) - log(q)/2, all terms > 0
    return 0.5 * (q - 1) * math.log(2.0 * math.pi) - 0.5 * math.log(q)


def fft_sequence_errors(q: int, eps: float) -> tuple[float, float]:
    """Modelled absolute error of one output coefficient of the x and y transforms.

    Returns (Delta * ||x||_2, Delta * sqrt(N) * ||y||_inf), the second using
    ||y||_2 <= sqrt(N) ||y||_inf because y has no closed-form 2-norm.
    """
    n = (q - 1) // 2
    delta = delta_model(n, eps) if n >= 2 else 0.0
    return delta * norm2_x(q), delta * math.sqrt(n) * norminf_y(q)


def estimate_err_bound(q: int, method: str, machine_eps: float = EPS_BINARY64) -> float:
    """A priori absolute error bound for |L(1, chi)| computed by ``method``.

    Depends only on q (not on its residue mod 4): the larger of the odd and
    even character bounds is returned, so the bound is nondecreasing in q.
    """
    if q < 3:
        raise ValueError("q must be >= 3")
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    root_q = math.sqrt(q)
    eps = machine_eps
    # odd: exact integer sum, then a few roundings in the scaling
    odd = 4.0 * eps * math.pi * root_q
    if method == "direct":
        even = (2.0 / root_q) * _KERNEL_ULPS * eps * _sum_abs_log_gamma(q)
    else:
        even = (2.0 / root_q) * _KERNEL_ULPS * eps * _sum_abs_even_fused(q)
    if method == "fft":
        ex, ey = fft_sequence_errors(q, eps)
        odd += (math.pi / root_q) * ex
        even += (1.0 / root_q) * 2.0 * ey
    return max(odd, even)


def l1_direct(q: int) -> LValue:
    """|L(1, chi)| from Legendre symbols, without a primitive root."""
    q = check_odd_prime(q)
    a = np.arange(1, q, dtype=np.int64)
    chi = legendre_array(a, q)
    root_q = math.sqrt(q)
    even = q % 4 == 1
    if even:
        terms = chi * log_gamma_array(a / q)
        value = 2.0 * abs(compensated_sum(terms)) / root_q
    else:
        s = int(np.sum(a * chi))
        value = math.pi * abs(s) / (q * root_q)
    return LValue(q=q, value=value, method="direct",
                  err_bound=estimate_err_bound(q, "direct"), even=even)


def _signs(n: int) -> np.ndarray:
    s = np.ones(n, dtype=np.int64)
    s[1::2] = -1
    return s


def l1_alternating(ctx: PrimeContext, seq: PowerSequence) -> LValue:
    """|L(1, chi)| from sum_k (-1)^k f(a_k/q), folded onto k < (q-1)/2."""
    check_same_prime(ctx, seq)
    q, half = ctx.q, ctx.qbar
    a = seq.values[:half]
    root_q = math.sqrt(q)
    if ctx.even:
        # (q-1)/2 is even, so the partner term has the same sign and the
        # same kernel value: the full sum is twice the folded one
        y = neg_log_sin_residues(a, q)
        y[1::2] *= -1.0
        value = 2.0 * abs(compensated_sum(y)) / root_q
    else:
        # (q-1)/2 is odd: a_k - a_{k+qbar} = 2 a_k - q with the sign (-1)^k
        s = int(np.dot(_signs(half), 2 * a - q))
        value = math.pi * abs(s) / (q * root_q)
    return LValue(q=q, value=value, method="alternating",
                  err_bound=estimate_err_bound(q, "alternating"), even=ctx.even)


_PREFACTOR = {
    KernelFn.IDENTITY: math.pi,
    KernelFn.LOG_GAMMA: 2.0,
    KernelFn.LOG_SIN_NEG: 1.0,
}


def l1_fft_spectrum(ctx: PrimeContext, seq: PowerSequence, kernel: KernelFn | None = None,
                    backend: str = "numpy") -> Spectrum:
    """All |L(1, chi)| at once by two half-length DFTs.

    With ``kernel=None`` the even-j half uses -log sin and the odd-j half uses
    the identity, so every non-principal entry is an L-value.  Passing a
    kernel computes only the half of matching parity.
    """
    check_same_prime(ctx, seq)
    q, half = ctx.q, ctx.qbar
    lo = seq.values[:half]
    hi = seq.values[half:]
    root_q = math.sqrt(q)
    mags = np.full(q - 1, np.nan)

    even_kernel = KernelFn.LOG_SIN_NEG if kernel is None else kernel
    if even_kernel.for_even_characters:
        b = apply_kernel(even_kernel, lo, q) + apply_kernel(even_kernel, hi, q)
        mags[0::2] = _PREFACTOR[even_kernel] * np.abs(dft(b, backend)) / root_q
        mags[0] = np.nan

    if kernel is None or kernel is KernelFn.IDENTITY:
        k = np.arange(half, dtype=np.int64)
        twiddle = np.exp(-1j * np.pi * (k / half))  # e(-k/(q-1)) with q-1 = 2*half
        c = twiddle * ((2 * lo - q) / q)
        mags[1::2] = _PREFACTOR[KernelFn.IDENTITY] * np.abs(dft(c, backend)) / root_q
    return Spectrum(q=q, magnitudes=mags, kernel=kernel)


def extract_quadratic(spec: Spectrum) -> LValue:
    """The spectrum entry of the quadratic character, j = (q-1)/2."""
    q = spec.q
    value = float(spec.magnitudes[(q - 1) // 2])
    if math.isnan(value):
        raise ValueError(f"spectrum for q={q} was built without the quadratic character's parity")
    return LValue(q=q, value=value, method="fft",
                  err_bound=estimate_err_bound(q, "fft"), even=(q % 4 == 1))


def l1(q: int, method: str = "alternating", ctx: PrimeContext | None = None,
       seq: PowerSequence | None = None) -> LValue:
    """Convenience dispatcher over the three methods."""
    if method == "direct":
        return l1_direct(q)
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; choose from {METHODS}")
    if ctx is None:
        ctx = PrimeContext.for_prime(q)
    if seq is None:
        seq = build_power_sequence(ctx)
    if method == "alternating":
        return l1_alternating(ctx, seq)
    kernel = KernelFn.LOG_SIN_NEG if ctx.even else KernelFn.IDENTITY
    return extract_quadratic(l1_fft_spectrum(ctx, seq, kernel))
