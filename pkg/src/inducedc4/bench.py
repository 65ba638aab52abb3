"""Benchmark harness: timed runs, CSV records, log-log slope fitting.

CSV schema (one row per run):

    n,seed,gen,algo,found,ms,ms_decomp,ms_p2,ms_p3,ms_p4

`algo` is fast (the full detector), oracle (quadratic reference scan) or
naive (4-subset enumeration).  Phase columns are zero for the baselines.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .decomposition import DecompConfig
from .detector import detect
from .generate import GraphSpec, format_spec, generate
from .graph import naive_detect, oracle_detect

CSV_HEADER = "n,seed,gen,algo,found,ms,ms_decomp,ms_p2,ms_p3,ms_p4"


@dataclass(frozen=True)
class BenchRecord:
    n: int
    seed: int
    gen: str
    algo: str
    found: int
    ms: float
    ms_decomp: float
    ms_p2: float
    ms_p3: float
    ms_p4: float

    def to_csv(self) -> str:
        return (
            f"{self.n},{self.seed},{self.gen},{self.algo},{self.found},"
            f"{self.ms:.3f},{self.ms_decomp:.3f},{self.ms_p2:.3f},"
            f"{self.ms_p3:.3f},{self.ms_p4:.3f}"
        )

    @classmethod
    def from_csv(cls, line: str) -> "BenchRecord":
        n, seed, gen, algo, found, *times = line.split(",")
        ms, d, p2, p3, p4 = (float(v) for v in times)
        return cls(int(n), int(seed), gen, algo, int(found), ms, d, p2, p3, p4)


def run_one(spec: GraphSpec, algo: str, cfg: Optional[DecompConfig] = None) -> BenchRecord:
    g = generate(spec)
    start = time.perf_counter()
    phase_ms = {"decomp": 0.0, "p2": 0.0, "p3": 0.0, "p4": 0.0}
    if algo == "fast":
        report = detect(g, cfg)
        found = report.found
        phase_ms = report.timings_ms
    elif algo == "oracle":
        found = oracle_detect(g) is not None
    elif algo == "naive":
        found = naive_detect(g) is not None
    else:
        raise ValueError(f"unknown algorithm {algo!r}")
    wall = (time.perf_counter() - start) * 1000
    return BenchRecord(
        g.n, spec.seed, spec.kind, algo, int(found), wall,
        phase_ms["decomp"], phase_ms["p2"], phase_ms["p3"], phase_ms["p4"],
    )


def run_bench(
    sizes: Sequence[int],
    reps: int,
    p: Fraction = Fraction(1, 2),
    oracle_max: int = 2048,
    naive_max: int = 256,
    cfg: Optional[DecompConfig] = None,
    workers: int = 1,
) -> list[BenchRecord]:
    """Fast rows for every (size, rep); baseline rows where tractable."""
    jobs: list[tuple[GraphSpec, str]] = []
    for n in sizes:
        for rep in range(reps):
            spec = GraphSpec("gnp", n=n, p=p, seed=rep + 1)
            jobs.append((spec, "fast"))
            if n <= oracle_max:
                jobs.append((spec, "oracle"))
            if n <= naive_max:
                jobs.append((spec, "naive"))
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        args = [(format_spec(spec), algo) for spec, algo in jobs]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_run_packed, args))
    else:
        records = [run_one(spec, algo, cfg) for spec, algo in jobs]
    _check_agreement(records)
    return records


def _run_packed(packed: tuple[str, str]) -> BenchRecord:
    from .generate import parse_spec

    spec_text, algo = packed
    return run_one(parse_spec(spec_text), algo)


def _check_agreement(records: list[BenchRecord]) -> None:
    verdicts: dict[tuple[int, int], set[int]] = {}
    for rec in records:
        verdicts.setdefault((rec.n, rec.seed), set()).add(rec.found)
    for key, vs in verdicts.items():
        if len(vs) > 1:
            raise AssertionError(f"algorithms disagree on n,seed={key}")


def fitted_slope(records: Sequence[BenchRecord], algo: str = "fast") -> float:
    """Least-squares slope of log(median ms) against log(n)."""
    by_n: dict[int, list[float]] = {}
    for rec in records:
        if rec.algo == algo:
            by_n.setdefault(rec.n, []).append(rec.ms)
    if len(by_n) < 2:
        raise ValueError("need at least two sizes to fit a slope")
    xs, ys = [], []
    for n, times in sorted(by_n.items()):
        times.sort()
        median = times[len(times) // 2]
        xs.append(math.log(n))
        ys.append(math.log(max(median, 1e-6)))
    mean_x = sum(xs) / len(xs)
    mean_y = sum(ys) / len(ys)
    num = sum((x - mean_x) * (y - mean_y) for x, y in zip(xs, ys))
    den = sum((x - mean_x) ** 2 for x in xs)
    return num / den


def write_csv(records: Sequence[BenchRecord], path: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(CSV_HEADER + "\n")
        for rec in records:
            handle.write(rec.to_csv() + "\n")


def read_csv(text: str) -> list[BenchRecord]:
    lines = [ln for ln in text.strip().split("\n") if ln]
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError("missing or wrong CSV header")
    return [BenchRecord.from_csv(ln) for ln in lines[1:]]
