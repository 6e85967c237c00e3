"""Exhaustive check of the width / family biconditional over all simple knots.

For every p in [2, max_p] and every k coprime to p, the knot K(p, k^2, k) is
tested for

    width(p, k^2, k) < 2p   <=>   one of k, -k, k^-1, -k^-1 is Berge or Tange.

Failures of "=>" are conjecture violations; failures of "<=" are
realizability anomalies.  Neither list is ever truncated.

The unit of work is one value of p.  Contiguous blocks of p are handed to a
process pool as workers free up, results are merged in p order, and the
merged prefix is checkpointed atomically so an interrupted run can resume.
"""
from __future__ import annotations

import json
import logging
import multiprocessing as mp
import os
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Callable, Iterator

import numpy as np

from .arith import check_word_budget
from .errors import CheckpointCorrupt, ParameterMismatch, ResourceLimit
from .families import _exceptional_candidates, classify, matched_tags
from .kernels import SWEEP_WORD_LIMIT, berge_congruence_mask, inverse_table, square_widths

log = logging.getLogger(__name__)

CHECKPOINT_VERSION = 1


@dataclass
class SweepException:
    p: int
    k: int
    q: int
    width: int
    kind: str            # "conjecture_violation" | "realizability_anomaly"
    families: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return asdict(self)


@dataclass
class PResult:
    """Tallies for one value of p."""

    p: int
    knots_checked: int
    lspace_count: int
    exceptions: list[SweepException]


@dataclass
class SweepReport:
    max_p: int
    dedup: bool
    tange_negative_j: bool
    knots_checked: int = 0
    lspace_count: int = 0
    conjecture_violations: list[SweepException] = field(default_factory=list)
    realizability_anomalies: list[SweepException] = field(default_factory=list)
    last_completed_p: int = 1
    elapsed: float = 0.0
    worker_count: int = 1

    @property
    def complete(self) -> bool:
        return self.last_completed_p >= self.max_p

    @property
    def clean(self) -> bool:
        return not self.conjecture_violations and not self.realizability_anomalies

    def merge(self, res: PResult) -> None:
        if res.p != self.last_completed_p + 1:
            raise ValueError(f"out-of-order merge: got p={res.p} after {self.last_completed_p}")
        self.knots_checked += res.knots_checked
        self.lspace_count += res.lspace_count
        for exc in res.exceptions:
            if exc.kind == "conjecture_violation":
                self.conjecture_violations.append(exc)
            else:
                self.realizability_anomalies.append(exc)
        self.last_completed_p = res.p

    def result_dict(self) -> dict:
        """Everything except runtime metadata (elapsed, worker_count).

        Two runs with the same parameters must agree on this exactly.
        """
        return {
            "max_p": self.max_p,
            "dedup": self.dedup,
            "tange_negative_j": self.tange_negative_j,
            "last_completed_p": self.last_completed_p,
            "knots_checked": self.knots_checked,
            "lspace_count": self.lspace_count,
            "conjecture_violations": [e.to_json() for e in self.conjecture_violations],
            "realizability_anomalies": [e.to_json() for e in self.realizability_anomalies],
        }

    def to_json(self) -> dict:
        out = self.result_dict()
        out.update(complete=self.complete, elapsed=round(self.elapsed, 3),
                   worker_count=self.worker_count)
        return out

    @classmethod
    def from_json(cls, data: dict) -> "SweepReport":
        def excs(items):
            return [SweepException(**e) for e in items]

        return cls(
            max_p=int(data["max_p"]),
            dedup=bool(data["dedup"]),
            tange_negative_j=bool(data["tange_negative_j"]),
            knots_checked=int(data["knots_checked"]),
            lspace_count=int(data["lspace_count"]),
            conjecture_violations=excs(data["conjecture_violations"]),
            realizability_anomalies=excs(data["realizability_anomalies"]),
            last_completed_p=int(data["last_completed_p"]),
            elapsed=float(data.get("elapsed", 0.0)),
            worker_count=int(data.get("worker_count", 1)),
        )


# -- per-p kernel ----------------------------------------------------------------

def check_p(p: int, dedup: bool = True, tange_negative_j: bool = True) -> PResult:
    """Run the biconditional over every primitive k for one p."""
    ks = np.arange(1, p, dtype=np.int64)
    ks = ks[np.gcd(ks, p) == 1]
    inv = inverse_table(p)
    # every q = k^2 generated is a unit because k is
    assert np.all(np.gcd(ks * ks % p, p) == 1)

    raw = berge_congruence_mask(p)
    for _tag, k_star, _wit in _exceptional_candidates(p, tange_negative_j):
        raw[k_star] = True
    ki = inv[ks]
    member = raw[ks] | raw[p - ks] | raw[ki] | raw[p - ki]

    if dedup:
        rep = np.minimum(np.minimum(ks, p - ks), np.minimum(ki, p - ki))
        keep = rep == ks
        ks, member = ks[keep], member[keep]

    widths = square_widths(p, ks)
    lspace = widths < 2 * p
    exceptions = []
    for idx in np.flatnonzero(lspace != member):
        exceptions.extend(_confirm(p, int(ks[idx]), dedup, tange_negative_j))
    return PResult(p, int(ks.size), int(lspace.sum()), exceptions)


def _orbit(p: int, k: int) -> list[int]:
    ki = pow(k, -1, p)
    return sorted({k, p - k, ki, p - ki})


def _confirm(p: int, k: int, dedup: bool, tange_negative_j: bool) -> list[SweepException]:
    """Re-derive a disagreement with the reference predicates and expand dedup orbits."""
    report = classify(p, k, tange_negative_j)
    if report.agrees:
        raise AssertionError(f"fast path and reference disagree at p={p}, k={k}")
    kind = "conjecture_violation" if report.lspace_criterion else "realizability_anomaly"
    ks = _orbit(p, k) if dedup else [k]
    out = []
    for kk in ks:
        r = classify(p, kk, tange_negative_j)
        out.append(SweepException(p, kk, r.q, r.width, kind, matched_tags(r.matches)))
    return out


def _check_block(args: tuple[int, int, bool, bool]) -> list[PResult]:
    lo, hi, dedup, tange_negative_j = args
    return [check_p(p, dedup, tange_negative_j) for p in range(lo, hi + 1)]


def blocks(start: int, stop: int, target_cost: float = 2e6) -> Iterator[tuple[int, int]]:
    """Contiguous [lo, hi] ranges of p whose cost (~ sum p^2) is near target_cost."""
    lo = start
    while lo <= stop:
        hi, cost = lo, 0.0
        while hi <= stop and cost < target_cost:
            cost += hi * hi
            hi += 1
        yield lo, hi - 1
        lo = hi


# -- checkpoints -----------------------------------------------------------------

def write_checkpoint(path: str | os.PathLike, report: SweepReport) -> None:
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    data = {"format_version": CHECKPOINT_VERSION, "report": report.to_json()}
    with open(tmp, "w") as fh:
        json.dump(data, fh)
        fh.flush()
        os.fsync(fh.fileno())
    os.replace(tmp, path)


def read_checkpoint(path: str | os.PathLike) -> SweepReport:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except FileNotFoundError:
        raise
    except (OSError, ValueError) as exc:
        raise CheckpointCorrupt(f"cannot parse checkpoint {path}: {exc}") from exc
    if not isinstance(data, dict) or data.get("format_version") != CHECKPOINT_VERSION:
        raise CheckpointCorrupt(f"{path}: unsupported or missing format_version")
    try:
        report = SweepReport.from_json(data["report"])
    except (KeyError, TypeError, ValueError) as exc:
        raise CheckpointCorrupt(f"{path}: malformed report ({exc})") from exc
    if not 1 <= report.last_completed_p <= report.max_p:
        raise CheckpointCorrupt(f"{path}: last_completed_p out of range")
    return report


# -- driver ----------------------------------------------------------------------

def estimated_cost(max_p: int, dedup: bool) -> float:
    """Approximate word operations: sum over p of p * phi(p) ~ 0.2 max_p^3."""
    ops = 0.2026 * max_p ** 3
    return ops / 4 if dedup else ops


class _Progress:
    def __init__(self, report: SweepReport, stream, interval: float):
        self.stream = stream
        self.interval = interval
        self.start = time.monotonic()
        self.last = self.start
        self.first_p = report.last_completed_p
        self.max_p = report.max_p
        self.knots0 = report.knots_checked

    def __call__(self, report: SweepReport, force: bool = False) -> None:
        if self.stream is None:
            return
        now = time.monotonic()
        if not force and now - self.last < self.interval:
            return
        self.last = now
        dt = now - self.start
        rate = (report.knots_checked - self.knots0) / dt if dt > 0 else 0.0
        done = report.last_completed_p ** 3 - self.first_p ** 3
        todo = self.max_p ** 3 - report.last_completed_p ** 3
        eta = dt * todo / done if done > 0 else float("nan")
        print(f"sweep: p={report.last_completed_p}/{self.max_p} "
              f"knots={report.knots_checked} rate={rate:.0f}/s eta={eta:.0f}s",
              file=self.stream, flush=True)


def verify_conjecture(
    max_p: int,
    workers: int = 1,
    dedup: bool = True,
    checkpoint_path: str | os.PathLike | None = None,
    *,
    tange_negative_j: bool = True,
    exceptions_path: str | os.PathLike | None = None,
    progress_stream=sys.stderr,
    progress_interval: float = 10.0,
    checkpoint_interval: float = 30.0,
    stop_after: int | None = None,
    _resume_from: SweepReport | None = None,
) -> SweepReport:
    """Check every simple knot K(p, k^2, k) with 2 <= p <= max_p.

    ``stop_after`` ends the run once that p is merged, leaving a resumable
    checkpoint; it exists to exercise interrupt/resume deterministically.
    """
    if max_p < 2:
        raise ValueError("max_p must be >= 2")
    if workers < 1:
        raise ValueError("workers must be >= 1")
    check_word_budget(max_p)
    if max_p > SWEEP_WORD_LIMIT:
        raise ResourceLimit(f"max_p={max_p} exceeds the sweep kernel limit {SWEEP_WORD_LIMIT}")

    report = _resume_from or SweepReport(max_p, dedup, tange_negative_j)
    report.worker_count = workers
    if report.complete:
        return report
    elapsed0 = report.elapsed
    t0 = time.monotonic()
    progress = _Progress(report, progress_stream, progress_interval)
    last_ckpt = t0
    exc_fh = open(exceptions_path, "a") if exceptions_path else None

    def emit(res: PResult) -> None:
        nonlocal last_ckpt
        report.merge(res)
        if exc_fh:
            for exc in res.exceptions:
                exc_fh.write(json.dumps(exc.to_json()) + "\n")
            exc_fh.flush()
        report.elapsed = elapsed0 + time.monotonic() - t0
        progress(report)
        if checkpoint_path and time.monotonic() - last_ckpt >= checkpoint_interval:
            write_checkpoint(checkpoint_path, report)
            last_ckpt = time.monotonic()

    stop = min(max_p, stop_after) if stop_after else max_p
    work = [(lo, hi, dedup, tange_negative_j)
            for lo, hi in blocks(report.last_completed_p + 1, stop)]
    try:
        if workers == 1:
            for args in work:
                for res in _check_block(args):
                    emit(res)
        else:
            _run_pool(work, workers, emit)
    finally:
        report.elapsed = elapsed0 + time.monotonic() - t0
        if checkpoint_path:
            write_checkpoint(checkpoint_path, report)
        if exc_fh:
            exc_fh.close()
    progress(report, force=True)
    return report


def _run_pool(work, workers: int, emit: Callable[[PResult], None]) -> None:
    # Blocks finish out of order; hold them until the contiguous prefix is ready.
    pending: dict[int, list[PResult]] = {}
    order = [lo for lo, *_ in work]
    nxt = 0
    ctx = mp.get_context("spawn") if sys.platform == "darwin" else mp.get_context()
    with ctx.Pool(workers) as pool:
        for results in pool.imap_unordered(_check_block, work):
            pending[results[0].p] = results
            while nxt < len(order) and order[nxt] in pending:
                for res in pending.pop(order[nxt]):
                    emit(res)
                nxt += 1


def resume(
    checkpoint_path: str | os.PathLike,
    workers: int = 1,
    *,
    max_p: int | None = None,
    dedup: bool | None = None,
    tange_negative_j: bool | None = None,
    **kwargs,
) -> SweepReport:
    """Continue a checkpointed run.  Parameters given here must match the checkpoint."""
    report = read_checkpoint(checkpoint_path)
    for name, given in (("max_p", max_p), ("dedup", dedup), ("tange_negative_j", tange_negative_j)):
        stored = getattr(report, name)
        if given is not None and given != stored:
            raise ParameterMismatch(f"{name}={given!r} but checkpoint has {stored!r}")
    if report.complete:
        return report
    return verify_conjecture(report.max_p, workers, report.dedup, checkpoint_path,
                             tange_negative_j=report.tange_negative_j,
                             _resume_from=report, **kwargs)
