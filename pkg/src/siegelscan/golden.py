"""Reference values for the primes 3 <= q <= 1000 and the check against them.

``data/golden.csv`` holds the published 20-digit values of L(1, chi),
1 - c2/log q, c1, c2, c3 and c4.  They are kept as strings; comparison is by
relative error in float64.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from importlib import resources

from .bounds import siegel_bounds
from .errors import VerificationError
from .lfun import l1

COLUMNS = ("L", "beta_upper", "c1", "c2", "c3", "c4")
DEFAULT_TOL = 1e-11


def load_fixtures(text: str | None = None) -> dict[int, dict[str, str]]:
    """Fixture rows keyed by q; ``text`` overrides the packaged CSV."""
    if text is None:
        text = resources.files("siegelscan").joinpath("data/golden.csv").read_text(encoding="utf-8")
    table = {}
    for rec in csv.DictReader(io.StringIO(text)):
        table[int(rec["q"])] = {c: rec[c] for c in COLUMNS}
    return table


@dataclass
class GoldenReport:
    tol: float
    count: int
    worst: dict[str, tuple[float, int]] = field(default_factory=dict)
    failures: list[tuple[int, str, float, str]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def as_text(self) -> str:
        lines = [f"golden check over {self.count} primes, tolerance {self.tol:.1e} relative"]
        for col in COLUMNS:
            err, q = self.worst.get(col, (0.0, 0))
            lines.append(f"  {col:<10} worst rel err {err:.3e} at q={q}")
        lines.append("PASS" if self.passed else f"FAIL ({len(self.failures)} mismatches)")
        for q, col, got, want in self.failures[:20]:
            lines.append(f"  q={q} {col}: got {got!r}, want {want}")
        return "\n".join(lines)


def verify_golden(fixtures: dict[int, dict[str, str]] | None = None, method: str = "alternating",
                  tol: float = DEFAULT_TOL, strict: bool = False) -> GoldenReport:
    """Recompute every tabulated column and compare.

    With ``strict`` a failing comparison raises ``VerificationError``.
    """
    if fixtures is None:
        fixtures = load_fixtures()
    report = GoldenReport(tol=tol, count=len(fixtures))
    for q in sorted(fixtures):
        L = l1(q, method)
        b = siegel_bounds(q, L)
        got = {"L": L.value, "beta_upper": b.beta_upper, "c1": b.c1, "c2": b.c2, "c3": b.c3, "c4": b.c4}
        for col in COLUMNS:
            want = fixtures[q][col]
            ref = float(want)
            rel = abs(got[col] - ref) / abs(ref)
            if rel > report.worst.get(col, (-1.0, 0))[0]:
                report.worst[col] = (rel, q)
            if not rel <= tol:
                report.failures.append((q, col, got[col], want))
    if strict and report.failures:
        raise VerificationError(report.failures)
    return report
