"""Range scans: one CSV row per prime, computed in blocks on worker processes.

Blocks of consecutive primes are computed independently and written strictly
in order.  S(q) is a prefix sum over all integers, so the coordinator carries it
from block to block and hands each block its starting value; workers only
extend it across their own block.  Output is therefore identical for any
number of workers.

Checkpointing: after each block the CSV is flushed and a small JSON file is
replaced atomically, recording the next block and the byte length of the
output.  Resuming truncates the output to that length and carries on.
Primitive roots are appended to a ``.roots`` sidecar next to the checkpoint.
"""
from __future__ import annotations

import hashlib
import io
import json
import logging
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import IO, Iterable, Iterator, Sequence

import numpy as np

from .arith import PrimeContext, build_power_sequence, primes_in_range
from .bounds import LLI_FACTOR, PrefixLogSum, index_record, siegel_bounds
from .errors import CheckpointError
from .fftcheck import EPS_BINARY64
from .lfun import METHODS, estimate_err_bound, l1_alternating, l1_direct, l1_fft_spectrum, extract_quadratic

log = logging.getLogger(__name__)

CSV_HEADER = "q,parity,L,err_bound,c1,c2,c3,c4,beta_upper,S,g,uli,lli,h,joshi1,joshi2,method"
CHECKPOINT_VERSION = 1
DEFAULT_BLOCK = 4096


@dataclass(frozen=True)
class ScanConfig:
    qmin: int
    qmax: int
    workers: int = 1
    method: str = "alternating"
    checkpoint_path: Path | None = None
    emit_spectrum: bool = False
    spectrum_dir: Path | None = None
    eps_model: float = EPS_BINARY64
    block_size: int = DEFAULT_BLOCK

    def __post_init__(self):
        if self.qmin < 3:
            raise ValueError("qmin must be >= 3")
        if self.qmax < self.qmin:
            raise ValueError("qmax must be >= qmin")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}")
        if self.block_size < 1:
            raise ValueError("block_size must be >= 1")
        if self.emit_spectrum and self.spectrum_dir is None:
            raise ValueError("emit_spectrum needs a spectrum_dir")

    def fingerprint(self) -> str:
        # worker count and paths do not change the output, so they are left out
        key = json.dumps([self.qmin, self.qmax, self.method, repr(self.eps_model), self.block_size])
        return hashlib.sha256(key.encode()).hexdigest()[:16]


@dataclass(frozen=True)
class ScanRow:
    q: int
    parity: str
    L: float
    err_bound: float
    c1: float
    c2: float
    c3: float
    c4: float
    beta_upper: float
    S: float
    gq: float
    uli: float | None
    lli: float | None
    h: int | None
    joshi1: bool
    joshi2: bool
    method: str

    def csv_line(self) -> str:
        def num(x):
            return "" if x is None else repr(float(x))

        return ",".join([
            str(self.q), self.parity, num(self.L), num(self.err_bound),
            num(self.c1), num(self.c2), num(self.c3), num(self.c4), num(self.beta_upper),
            num(self.S), num(self.gq), num(self.uli), num(self.lli),
            "" if self.h is None else str(self.h),
            str(int(self.joshi1)), str(int(self.joshi2)), self.method,
        ])

    @classmethod
    def from_csv(cls, record: dict) -> "ScanRow":
        def opt(x, kind=float):
            return None if x in ("", None) else kind(x)

        return cls(
            q=int(record["q"]), parity=record["parity"], L=float(record["L"]),
            err_bound=float(record["err_bound"]), c1=float(record["c1"]), c2=float(record["c2"]),
            c3=float(record["c3"]), c4=float(record["c4"]), beta_upper=float(record["beta_upper"]),
            S=float(record["S"]), gq=float(record["g"]), uli=opt(record["uli"]), lli=opt(record["lli"]),
            h=opt(record["h"], int), joshi1=record["joshi1"] == "1", joshi2=record["joshi2"] == "1",
            method=record["method"],
        )


def read_csv(path_or_stream) -> list[ScanRow]:
    import csv

    if isinstance(path_or_stream, (str, os.PathLike)):
        with open(path_or_stream, newline="", encoding="utf-8") as fh:
            return [ScanRow.from_csv(r) for r in csv.DictReader(fh)]
    return [ScanRow.from_csv(r) for r in csv.DictReader(path_or_stream)]


def compute_row(q: int, method: str, s: float, eps: float = EPS_BINARY64,
                ctx: PrimeContext | None = None, spectrum_dir: Path | None = None) -> ScanRow:
    """Every per-prime quantity for one prime, given S(q)."""
    if method == "direct":
        L = l1_direct(q)
    else:
        if ctx is None:
            ctx = PrimeContext.for_prime(q)
        seq = build_power_sequence(ctx)
        if method == "alternating":
            L = l1_alternating(ctx, seq)
        else:
            spec = l1_fft_spectrum(ctx, seq)
            if spectrum_dir is not None:
                np.save(Path(spectrum_dir) / f"q{q}.npy", spec.magnitudes)
            L = extract_quadratic(spec)
    b = siegel_bounds(q, L, s)
    ix = index_record(q, L)
    return ScanRow(
        q=q, parity="E" if L.even else "O", L=L.value,
        err_bound=estimate_err_bound(q, method, eps),
        c1=b.c1, c2=b.c2, c3=b.c3, c4=b.c4, beta_upper=b.beta_upper, S=b.S, gq=b.gq,
        uli=ix.uli, lli=ix.lli, h=ix.h, joshi1=ix.joshi1, joshi2=ix.joshi2, method=method,
    )


@dataclass
class BlockResult:
    index: int
    rows: list[ScanRow]
    roots: list[tuple[int, int]] = field(default_factory=list)


def _run_block(index: int, primes: Sequence[int], base: tuple[int, float, float], method: str,
               eps: float, spectrum_dir: str | None) -> BlockResult:
    prefix = PrefixLogSum()
    prefix.n, prefix.hi, prefix.lo = base
    rows, roots = [], []
    sdir = Path(spectrum_dir) if spectrum_dir else None
    for q in primes:
        s = prefix.extend_to(q)
        try:
            ctx = None
            if method != "direct":
                ctx = PrimeContext.for_prime(q)
                roots.append((q, ctx.g))
            rows.append(compute_row(q, method, s, eps, ctx=ctx, spectrum_dir=sdir))
        except Exception as exc:
            raise RuntimeError(f"evaluation failed at q={q}: {exc}") from exc
    return BlockResult(index, rows, roots)


def _blocks(config: ScanConfig) -> list[list[int]]:
    primes = primes_in_range(config.qmin, config.qmax)
    size = config.block_size
    return [primes[i : i + size] for i in range(0, len(primes), size)]


def iter_blocks(config: ScanConfig, start_block: int = 0) -> Iterator[BlockResult]:
    """Computed blocks in order, starting at ``start_block``."""
    blocks = _blocks(config)
    prefix = PrefixLogSum()
    bases = []
    for blk in blocks:
        prefix.extend_to(blk[0])
        bases.append((prefix.n, prefix.hi, prefix.lo))
    sdir = str(config.spectrum_dir) if config.emit_spectrum else None
    todo = range(start_block, len(blocks))
    if config.workers == 1:
        for i in todo:
            yield _run_block(i, blocks[i], bases[i], config.method, config.eps_model, sdir)
        return
    window = 2 * config.workers
    with ProcessPoolExecutor(max_workers=config.workers) as pool:
        pending = {}
        it = iter(todo)
        try:
            for i in it:
                pending[i] = pool.submit(_run_block, i, blocks[i], bases[i], config.method,
                                         config.eps_model, sdir)
                if len(pending) >= window:
                    break
            nxt = start_block
            while pending:
                yield pending.pop(nxt).result()
                nxt += 1
                for i in it:
                    pending[i] = pool.submit(_run_block, i, blocks[i], bases[i], config.method,
                                             config.eps_model, sdir)
                    break
        except BaseException:
            for fut in pending.values():
                fut.cancel()
            raise


def scan_range(config: ScanConfig) -> Iterator[ScanRow]:
    """One row per prime in [qmin, qmax], ascending."""
    for blk in iter_blocks(config):
        yield from blk.rows


# -- checkpointed file output -------------------------------------------------

def _load_checkpoint(path: Path, config: ScanConfig) -> dict:
    try:
        state = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, ValueError) as exc:
        raise CheckpointError(f"cannot read checkpoint {path}: {exc}") from exc
    if state.get("version") != CHECKPOINT_VERSION:
        raise CheckpointError(f"checkpoint {path} has unsupported version {state.get('version')}")
    if state.get("config") != config.fingerprint():
        raise CheckpointError(f"checkpoint {path} was written for a different scan configuration")
    return state


def _write_checkpoint(path: Path, state: dict) -> None:
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump(state, fh)
        fh.flush()
        os.fsync(fh.fileno())
    os.replace(tmp, path)


def load_roots(checkpoint_path: Path) -> dict[int, int]:
    """Primitive roots cached by a checkpointed scan."""
    roots = {}
    path = Path(str(checkpoint_path) + ".roots")
    if path.exists():
        for line in path.read_text(encoding="utf-8").splitlines():
            q, g = line.split(",")
            roots[int(q)] = int(g)
    return roots


def run_scan(config: ScanConfig, out: Path | IO[str] | None = None, resume: bool = False) -> int:
    """Write the scan as CSV; returns the number of rows written by this call.

    ``out`` is a path, a text stream, or None for stdout.  Checkpointing and
    resuming need a path.
    """
    ckpt = config.checkpoint_path
    if ckpt is None:
        if resume:
            raise CheckpointError("--resume needs a checkpoint path")
        stream = sys.stdout if out is None else out
        if isinstance(stream, (str, os.PathLike)):
            with open(stream, "w", encoding="utf-8", newline="\n") as fh:
                return _stream_rows(config, fh)
        return _stream_rows(config, stream)

    if not isinstance(out, (str, os.PathLike)):
        raise CheckpointError("checkpointed scans must write to a file")
    out = Path(out)
    ckpt = Path(ckpt)
    roots_path = Path(str(ckpt) + ".roots")
    start = 0
    if resume and ckpt.exists():
        state = _load_checkpoint(ckpt, config)
        if state["done"]:
            log.info("checkpoint %s marks the scan as complete; nothing to do", ckpt)
            return 0
        start = state["next_block"]
        _truncate(out, state["out_bytes"])
        _truncate(roots_path, state["roots_bytes"])
        out_bytes, roots_bytes = state["out_bytes"], state["roots_bytes"]
    else:
        header = (CSV_HEADER + "\n").encode("utf-8")
        out.write_bytes(header)
        roots_path.write_bytes(b"")
        out_bytes, roots_bytes = len(header), 0
        _write_checkpoint(ckpt, _state(config, 0, out_bytes, roots_bytes, False))

    written = 0
    nblocks = len(_blocks(config))
    with open(out, "ab") as fh, open(roots_path, "ab") as rh:
        for blk in iter_blocks(config, start):
            data = "".join(r.csv_line() + "\n" for r in blk.rows).encode("utf-8")
            fh.write(data)
            fh.flush()
            os.fsync(fh.fileno())
            rdata = "".join(f"{q},{g}\n" for q, g in blk.roots).encode("utf-8")
            rh.write(rdata)
            rh.flush()
            out_bytes += len(data)
            roots_bytes += len(rdata)
            written += len(blk.rows)
            done = blk.index + 1 == nblocks
            _write_checkpoint(ckpt, _state(config, blk.index + 1, out_bytes, roots_bytes, done))
            log.info("block %d/%d done (q <= %d)", blk.index + 1, nblocks, blk.rows[-1].q)
    if nblocks == 0:
        _write_checkpoint(ckpt, _state(config, 0, out_bytes, roots_bytes, True))
    return written


def _state(config, next_block, out_bytes, roots_bytes, done):
    return {
        "version": CHECKPOINT_VERSION,
        "config": config.fingerprint(),
        "next_block": next_block,
        "out_bytes": out_bytes,
        "roots_bytes": roots_bytes,
        "done": done,
    }


def _truncate(path: Path, size: int) -> None:
    with open(path, "r+b") as fh:
        fh.truncate(size)


def _stream_rows(config: ScanConfig, stream: IO[str]) -> int:
    stream.write(CSV_HEADER + "\n")
    n = 0
    for row in scan_range(config):
        stream.write(row.csv_line() + "\n")
        n += 1
    stream.flush()
    return n


def scan_csv_text(config: ScanConfig) -> str:
    buf = io.StringIO()
    _stream_rows(config, buf)
    return buf.getvalue()


# -- analytics ------------------------------------------------------------------

@dataclass(frozen=True)
class Extremum:
    min_value: float
    argmin: int
    max_value: float
    argmax: int


@dataclass(frozen=True)
class ExtremaReport:
    c1: Extremum
    c2: Extremum
    uli: Extremum | None
    lli: Extremum | None
    lli_exceptions: tuple[int, ...]

    def as_text(self) -> str:
        out = []
        for name in ("c1", "c2", "uli", "lli"):
            e = getattr(self, name)
            if e is None:
                out.append(f"{name}: no data")
                continue
            out.append(f"{name}: min {e.min_value!r} at q={e.argmin}; max {e.max_value!r} at q={e.argmax}")
        if self.lli_exceptions:
            out.append("lli < 1 at q = " + ", ".join(map(str, self.lli_exceptions)))
        return "\n".join(out)


def _extremum(pairs: Iterable[tuple[int, float]]) -> Extremum | None:
    best = None
    for q, v in pairs:
        if best is None:
            best = [v, q, v, q]
            continue
        # rows arrive in ascending q, so strict comparisons keep the smallest q on ties
        if v < best[0]:
            best[0], best[1] = v, q
        if v > best[2]:
            best[2], best[3] = v, q
    return None if best is None else Extremum(*best)


def extrema(rows: Iterable[ScanRow]) -> ExtremaReport:
    """Minima and maxima of c1, c2, ULI and LLI with the primes attaining them.

    ULI is taken over q >= 5.  LLI is taken over q >= 5 excluding the primes
    where LLI < 1; those are listed separately (q = 3 is evaluated from L for
    the list only).
    """
    rows = sorted(rows, key=lambda r: r.q)
    if not rows:
        raise ValueError("extrema of an empty scan")
    exceptions = []
    for r in rows:
        lli = r.lli
        if lli is None and r.q == 3:
            lli = r.L * LLI_FACTOR * math.log(math.log(3))
        if lli is not None and lli < 1.0:
            exceptions.append(r.q)
    return ExtremaReport(
        c1=_extremum((r.q, r.c1) for r in rows),
        c2=_extremum((r.q, r.c2) for r in rows),
        uli=_extremum((r.q, r.uli) for r in rows if r.uli is not None),
        lli=_extremum((r.q, r.lli) for r in rows if r.lli is not None and r.lli >= 1.0),
        lli_exceptions=tuple(exceptions),
    )


@dataclass(frozen=True)
class JoshiCensus:
    count1: int
    count2: int
    first1: tuple[int, ...]
    first2: tuple[int, ...]
    total: int


def joshi_census(rows: Iterable[ScanRow], first_n: int = 10) -> JoshiCensus:
    c1 = c2 = total = 0
    f1, f2 = [], []
    for r in sorted(rows, key=lambda r: r.q):
        total += 1
        if r.joshi1:
            c1 += 1
            if len(f1) < first_n:
                f1.append(r.q)
        if r.joshi2:
            c2 += 1
            if len(f2) < first_n:
                f2.append(r.q)
    if total == 0:
        raise ValueError("census of an empty scan")
    return JoshiCensus(c1, c2, tuple(f1), tuple(f2), total)
