"""Quantities derived from L(1, chi) for one prime.

Siegel-zero constants: c1 = L / log q, and with

    S(q) = sum_{n=2}^{q} log(n)/n,
    g(q) = Lapkova's explicit Polya-Vinogradov constant,
    c3 = e S(q) / (log q)^2,   c4 = e g(q) / sqrt(q),

c2 = c1 / (c3 + c4) and a real zero beta of L(s, chi) satisfies
beta < 1 - c2/log q.

Also the Littlewood indices, the two Joshi inequalities and the class number
h(-q) = (sqrt q / pi) L(1, chi) for q = 3 mod 4, q >= 7.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, IntegralityError
from .lfun import LValue

E = 2.718281828459045
EULER_GAMMA = 0.5772156649015329
EXP_GAMMA = 1.781072417990198
# pi^2 / (6 e^gamma) and 12 e^gamma / pi^2
JOSHI2_BOUND = 0.9235638316741814
LLI_FACTOR = 2.165524386521849

CLASS_NUMBER_TOL = 1e-6

_CHUNK = 1 << 20


class PrefixLogSum:
    """Running value of S(n) = sum_{m=2}^{n} log(m)/m that can be extended.

    The sum is carried as an unevaluated pair ``hi + lo`` where ``hi`` is the
    correctly rounded total and ``lo`` the correctly rounded remainder, so a
    sequence of extensions gives the same ``hi`` as one long ``math.fsum``
    except in pathological near-tie cases.
    """

    def __init__(self):
        self.n = 1
        self.hi = 0.0
        self.lo = 0.0

    def copy(self) -> "PrefixLogSum":
        other = PrefixLogSum()
        other.n, other.hi, other.lo = self.n, self.hi, self.lo
        return other

    @property
    def value(self) -> float:
        return self.hi

    def extend_to(self, n: int) -> float:
        if n < self.n:
            raise ValueError(f"cannot shrink the prefix sum from {self.n} to {n}")
        while self.n < n:
            stop = min(n, self.n + _CHUNK)
            m = np.arange(self.n + 1, stop + 1, dtype=np.float64)
            terms = np.log(m) / m
            self._absorb(terms)
            self.n = stop
        return self.hi

    def _absorb(self, terms: np.ndarray) -> None:
        parts = np.concatenate(([self.hi, self.lo], terms))
        hi = math.fsum(parts)
        self.lo = math.fsum(np.append(parts, -hi))
        self.hi = hi


def s_of_q(q: int) -> float:
    """S(q) = sum_{n=2}^{q} log(n)/n."""
    if q < 2:
        raise ValueError("S(q) needs q >= 2")
    return PrefixLogSum().extend_to(q)


def lapkova_g(q: int, even: bool) -> float:
    """Lapkova's g(q) for a primitive character of the given parity."""
    if q < 2:
        raise ValueError("g(q) needs q >= 2")
    log_q = math.log(q)
    root_q = math.sqrt(q)
    if even:
        return 2.0 / math.pi**2 + 0.9467 / log_q + 1.668 / (root_q * log_q)
    return 1.0 / (2.0 * math.pi) + 0.8204 / log_q + 1.0286 / (root_q * log_q)


def c3_c4(q: int, even: bool, s: float) -> tuple[float, float]:
    if q < 3:
        raise ValueError("c3/c4 need q >= 3")
    log_q = math.log(q)
    return E * s / log_q**2, E * lapkova_g(q, even) / math.sqrt(q)


@dataclass(frozen=True)
class BoundsRecord:
    q: int
    S: float
    gq: float
    c1: float
    c2: float
    c3: float
    c4: float
    beta_upper: float


def siegel_bounds(q: int, L: LValue, s: float | None = None) -> BoundsRecord:
    """c1..c4 and the upper bound for a Siegel zero, from a computed L-value.

    ``s`` may carry a precomputed S(q) (the scan extends it incrementally).
    """
    if L.q != q:
        raise ValueError(f"L-value is for q={L.q}, not {q}")
    even = q % 4 == 1
    if s is None:
        s = s_of_q(q)
    log_q = math.log(q)
    c3, c4 = c3_c4(q, even, s)
    c1 = L.value / log_q
    c2 = c1 / (c3 + c4)
    return BoundsRecord(q=q, S=s, gq=lapkova_g(q, even), c1=c1, c2=c2, c3=c3, c4=c4,
                        beta_upper=1.0 - c2 / log_q)


def littlewood_indices(q: int, L: LValue) -> tuple[float, float]:
    """(ULI, LLI); only reported for q >= 5."""
    if q < 5:
        raise DomainError("Littlewood indices are reported for q >= 5 only")
    ll = math.log(math.log(q))
    return L.value / (2.0 * EXP_GAMMA * ll), L.value * LLI_FACTOR * ll


def joshi_flags(q: int, L: LValue) -> tuple[bool, bool]:
    """(L / loglog q >= e^gamma, L * loglog q <= pi^2 / (6 e^gamma))."""
    ll = math.log(math.log(q))
    if ll <= 0:
        raise DomainError(f"loglog q is not positive for q={q}")
    return L.value / ll >= EXP_GAMMA, L.value * ll <= JOSHI2_BOUND


def class_number(q: int, L: LValue) -> tuple[int, float] | None:
    """h(-q) and its distance from (sqrt q / pi) L, or None when q = 1 mod 4."""
    if q < 5:
        raise DomainError("class numbers are reported for q >= 5 only")
    if q % 4 == 1:
        return None
    x = math.sqrt(q) / math.pi * L.value
    h = round(x)
    residual = abs(x - h)
    if residual > CLASS_NUMBER_TOL or h < 1:
        raise IntegralityError(q, x, residual)
    return h, residual


@dataclass(frozen=True)
class IndexRecord:
    q: int
    uli: float | None
    lli: float | None
    joshi1: bool
    joshi2: bool
    h: int | None
    h_residual: float | None


def index_record(q: int, L: LValue) -> IndexRecord:
    uli = lli = None
    h = resid = None
    if q >= 5:
        uli, lli = littlewood_indices(q, L)
        hr = class_number(q, L)
        if hr is not None:
            h, resid = hr
    j1, j2 = joshi_flags(q, L)
    return IndexRecord(q=q, uli=uli, lli=lli, joshi1=j1, joshi2=j2, h=h, h_residual=resid)
