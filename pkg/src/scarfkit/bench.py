"""Benchmark harness: solve every instance in a corpus directory, one CSV row each."""
from __future__ import annotations

import csv
import io
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import astuple, dataclass, fields
from pathlib import Path

from . import io as fileio
from .core import ScarfInstance, solve, verify_solution
from .exceptions import ScarfError
from .kernels import reduce_to_scarf as reduce_digraph
from .matchings import reduce_to_scarf as reduce_hypergraph


@dataclass(frozen=True)
class BenchRecord:
    instance: str
    kind: str
    m: int | None
    n: int | None
    pivots: int | None
    wall_time: str
    outcome: str


def load_as_scarf(data: dict) -> tuple[str, ScarfInstance]:
    """Interpret any supported JSON document as a Scarf instance."""
    if "B" in data:
        return "scarf", fileio.instance_from_json(data)
    if "arcs" in data:
        return "digraph", reduce_digraph(fileio.digraph_from_json(data))[0]
    if "orders" in data:
        return "hypergraph", reduce_hypergraph(fileio.hypergraph_from_json(data))[0]
    raise fileio.InvalidInstance("unrecognised instance document")


def bench_one(path: Path, cap: int | None = None, timing: bool = True) -> BenchRecord:
    kind, m, n, pivots = "?", None, None, None
    start = time.perf_counter()
    try:
        kind, inst = load_as_scarf(fileio.read_json(str(path)))
        m, n = inst.m, inst.n
        sol = solve(inst, cap=cap)
        pivots = sol.n_pivots
        outcome = "ok" if verify_solution(inst, sol) else "unverified"
    except (ScarfError, OSError) as exc:
        outcome = f"error:{type(exc).__name__}"
    elapsed = f"{time.perf_counter() - start:.6f}" if timing else ""
    return BenchRecord(path.stem, kind, m, n, pivots, elapsed, outcome)


def _bench_args(args):
    return bench_one(*args)


def bench(corpus: str | Path, cap: int | None = None, timing: bool = True, workers: int = 1) -> list[BenchRecord]:
    """One record per ``*.json`` file, ordered by file name whatever the worker count."""
    paths = sorted(Path(corpus).glob("*.json"))
    jobs = [(p, cap, timing) for p in paths]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_bench_args, jobs))
    return [bench_one(*job) for job in jobs]


def records_to_csv(records: list[BenchRecord]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow([f.name for f in fields(BenchRecord)])
    for record in records:
        writer.writerow(["" if v is None else v for v in astuple(record)])
    return buffer.getvalue()
