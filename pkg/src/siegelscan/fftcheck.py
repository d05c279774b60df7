"""Accuracy model and forward/inverse diagnostics for the transforms.

The model takes the root-mean-square relative error of a length-N FFT to be
``0.6 * eps * sqrt(log2 N)``.  The two sequences checked are the ones the
L-value transforms are built from:

    x_k = 2 a_k / q - 1            (odd characters)
    y_k = -log sin(pi a_k / q)     (even characters)

for k = 0..N-1, N = (q-1)/2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, fields

import numpy as np

from .arith import PowerSequence, check_odd_prime
from .dft import dft, idft
from .special import neg_log_sin_residues

EPS_BINARY64 = 2.0**-53
EPS_EXTENDED = 2.0**-64
EPS_QUAD = 2.0**-113


def delta_model(n: int, eps: float) -> float:
    """Modelled RMS relative error of a length-n FFT."""
    if n < 2:
        raise ValueError("transform length must be >= 2")
    if eps <= 0:
        raise ValueError("eps must be positive")
    return 0.6 * eps * math.sqrt(math.log2(n))


def roundtrip_factor(n: int, eps: float) -> float:
    """Delta * (2 + Delta): relative error budget of a forward/inverse pair."""
    d = delta_model(n, eps)
    return d * (2.0 + d)


def norm2_x(q: int) -> float:
    """Closed-form Euclidean norm of x_k = 2 a_k/q - 1 over k < (q-1)/2."""
    if q < 3:
        raise ValueError("q must be >= 3")
    return math.sqrt((q - 1) * (q - 2) / (6.0 * q))


def norminf_y(q: int) -> float:
    """Sup norm of y_k, attained at a_k = 1: -log sin(pi/q)."""
    if q < 3:
        raise ValueError("q must be >= 3")
    return -math.log(math.sin(math.pi / q))


def x_sequence(seq: PowerSequence) -> np.ndarray:
    q = seq.q
    a = seq.values[: (q - 1) // 2]
    return (2 * a - q) / q


def y_sequence(seq: PowerSequence) -> np.ndarray:
    q = seq.q
    return neg_log_sin_residues(seq.values[: (q - 1) // 2], q)


@dataclass(frozen=True)
class FftErrorReport:
    q: int
    N: int
    eps: float
    backend: str
    delta: float
    norm2_x: float
    norm2_y: float
    norminf_x: float
    norminf_y: float
    e2_x: float
    e2_y: float
    einf_x: float
    einf_y: float
    bound_e2_x: float
    bound_e2_y: float
    bound_einf_x: float
    bound_einf_y: float

    @property
    def ratio_x(self) -> float:
        return self.e2_x / self.norm2_x

    @property
    def ratio_y(self) -> float:
        return self.e2_y / self.norm2_y

    @property
    def within_model(self) -> bool:
        return self.e2_x <= self.bound_e2_x and self.e2_y <= self.bound_e2_y

    def as_text(self) -> str:
        f = self.delta * (2 + self.delta)
        lines = [
            f"q = {self.q}, N = {self.N}, eps = {self.eps:.6e}, backend = {self.backend}",
            f"Delta(N, eps)          = {self.delta:.6e}",
            f"Delta(2 + Delta)       = {f:.6e}",
            f"||x||_2 = {self.norm2_x:.10f}   ||y||_inf = {self.norminf_y:.10f}",
            f"E2(x)/||x||_2   = {self.ratio_x:.6e}   (model {f:.6e})",
            f"E2(y)/||y||_2   = {self.ratio_y:.6e}   (model {f:.6e})",
            f"Einf(x) = {self.einf_x:.6e}   bound {self.bound_einf_x:.6e}",
            f"Einf(y) = {self.einf_y:.6e}   bound {self.bound_einf_y:.6e}",
            "result: " + ("within model" if self.within_model else "EXCEEDS model"),
        ]
        return "\n".join(lines)

    @classmethod
    def csv_header(cls) -> list[str]:
        return [f.name for f in fields(cls)]

    def csv_row(self) -> list[str]:
        return [repr(getattr(self, name)) if isinstance(getattr(self, name), float)
                else str(getattr(self, name)) for name in self.csv_header()]


def roundtrip_diagnose(q: int, seq: PowerSequence, eps: float = EPS_BINARY64,
                       backend: str = "numpy") -> FftErrorReport:
    """Measure ||F^-1(F(u)) - u|| for u in {x, y} and compare with the model."""
    q = check_odd_prime(q)
    if seq.q != q:
        raise ValueError(f"sequence is for q={seq.q}, not {q}")
    n = (q - 1) // 2
    if n < 2:
        raise ValueError("q = 3 gives a length-1 transform; the model needs N >= 2")
    delta = delta_model(n, eps)
    factor = delta * (2.0 + delta)
    measured = {}
    for name, u in (("x", x_sequence(seq)), ("y", y_sequence(seq))):
        err = idft(dft(u, backend), backend) - u
        measured[name] = (
            float(np.linalg.norm(u)),
            float(np.max(np.abs(u))),
            float(np.linalg.norm(err)),
            float(np.max(np.abs(err))),
        )
    (n2x, nix, e2x, eix), (n2y, niy, e2y, eiy) = measured["x"], measured["y"]
    root_n = math.sqrt(n)
    return FftErrorReport(
        q=q, N=n, eps=eps, backend=backend, delta=delta,
        norm2_x=n2x, norm2_y=n2y, norminf_x=nix, norminf_y=niy,
        e2_x=e2x, e2_y=e2y, einf_x=eix, einf_y=eiy,
        bound_e2_x=factor * n2x, bound_e2_y=factor * n2y,
        bound_einf_x=factor * root_n * nix, bound_einf_y=factor * root_n * niy,
    )
