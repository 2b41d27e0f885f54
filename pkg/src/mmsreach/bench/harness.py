"""Benchmark harness: planner and RRT rows per arena, exact cross-verification, CSV/text tables."""

from __future__ import annotations

import csv
import io
import multiprocessing as mp
import queue as queue_mod
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from ..hop import verify_run
from ..model import simulate
from .arenas import ArenaParams, gen_arena
from .rrt import RrtParams, path_plan, rrt_search

CSV_COLUMNS = ("family", "dim", "size", "method", "outcome", "witness_length", "nodes", "time_s")
TIMEOUT = "TO"


@dataclass(frozen=True)
class BenchCase:
    family: str
    dim: int = 2
    size: Fraction = Fraction(4)
    obstacles: Optional[int] = None

    def instance(self):
        return gen_arena(self.family, ArenaParams(dimension=self.dim, size=Fraction(self.size), obstacles=self.obstacles))


@dataclass
class BenchConfig:
    cases: list
    methods: tuple = ("planner", "rrt")
    timeout: float = 300.0  # per row
    smt_cmd: Optional[str] = None
    smt_timeout: float = 60.0
    max_bound: Optional[int] = None  # overrides the cover bound in 2-D
    high_dim_bound: int = 4  # used above dimension 2 when max_bound is unset
    rrt: RrtParams = RrtParams()
    jobs: int = 1


@dataclass
class BenchRow:
    family: str
    dim: int
    size: Fraction
    method: str
    outcome: str
    witness_length: Optional[int] = None
    nodes: Optional[int] = None
    time_s: Optional[float] = None
    verified: bool = False
    note: str = ""

    obstacles: Optional[int] = None

    @property
    def label(self) -> str:
        return self.family if self.obstacles is None else f"{self.family}-o{self.obstacles}"

    def csv_row(self) -> list:
        return [
            self.label,
            self.dim,
            str(self.size),
            self.method,
            self.outcome,
            "" if self.witness_length is None else self.witness_length,
            "" if self.nodes is None else self.nodes,
            "" if self.time_s is None else f"{self.time_s:.3f}",
        ]


@dataclass
class BenchReport:
    rows: list = field(default_factory=list)

    def sorted(self) -> list:
        return sorted(self.rows, key=lambda r: (r.family, r.dim, Fraction(r.size), r.obstacles or 0, r.method))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in self.sorted():
            w.writerow(r.csv_row())
        return buf.getvalue()

    def to_text(self) -> str:
        head = ("family", "dim", "size", "method", "outcome", "witness", "nodes", "time (s)")
        body = [r.csv_row() for r in self.sorted()]
        for r in body:
            if r[4] == TIMEOUT and r[7] == "":
                r[7] = "TO"
        table = [list(map(str, head))] + [list(map(str, r)) for r in body]
        widths = [max(len(row[i]) for row in table) for i in range(len(head))]
        return "\n".join("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in table) + "\n"


def _planner_row(case: BenchCase, config: BenchConfig) -> BenchRow:
    from ..cellcover2d import compute_cover
    from ..planner import PLANNED, SmtBackend, plan

    inst = case.instance()
    t0 = time.perf_counter()
    region = None
    if case.dim == 2:
        cover = compute_cover(inst)
        bound = cover.bound if config.max_bound is None else config.max_bound
        region = [c.polygon for c in cover.component_of(inst.start)]
    else:
        bound = config.high_dim_bound if config.max_bound is None else config.max_bound
    backend = SmtBackend(config.smt_cmd, config.smt_timeout, region=region)
    out = plan(inst, bound, backend)
    elapsed = time.perf_counter() - t0
    row = BenchRow(case.family, case.dim, case.size, "planner", out.tag, time_s=elapsed, obstacles=case.obstacles)
    if out.tag == PLANNED:
        row.witness_length = out.witness_length
        row.verified = _cross_verify(inst, out.plan)
    return row


def _rrt_row(case: BenchCase, config: BenchConfig) -> BenchRow:
    inst = case.instance()
    t0 = time.perf_counter()
    res = rrt_search(inst, config.rrt)
    row = BenchRow(case.family, case.dim, case.size, "rrt", "Found" if res.path else "NotFound", nodes=res.nodes, obstacles=case.obstacles)
    if res.path:
        p = path_plan(inst, res.path)
        row.witness_length = len(res.path) - 1
        row.verified = _cross_verify(inst, p)
    row.time_s = time.perf_counter() - t0
    return row


def _cross_verify(inst, plan) -> bool:
    run = simulate(inst.mms, inst.start, plan.schedule)
    return run.terminal == inst.target and verify_run(inst, run).ok


def run_row(case: BenchCase, method: str, config: BenchConfig) -> BenchRow:
    try:
        if method == "planner":
            return _planner_row(case, config)
        if method == "rrt":
            return _rrt_row(case, config)
        raise ValueError(f"unknown method {method!r}")
    except Exception as exc:  # a row failure must not sink the table
        return BenchRow(case.family, case.dim, case.size, method, "Error", note=str(exc), obstacles=case.obstacles)


def _worker(case, method, config, queue):
    queue.put(run_row(case, method, config))


def run_benchmarks(config: BenchConfig) -> BenchReport:
    """Run every (case, method) row in its own process; rows over the time limit become TO."""
    tasks = [(c, m) for c in config.cases for m in config.methods]
    ctx = mp.get_context("fork") if "fork" in mp.get_all_start_methods() else mp.get_context()
    report = BenchReport()
    pending = list(tasks)
    running = []
    while pending or running:
        while pending and len(running) < max(1, config.jobs):
            case, method = pending.pop(0)
            q = ctx.Queue()
            proc = ctx.Process(target=_worker, args=(case, method, config, q), daemon=True)
            proc.start()
            running.append((case, method, proc, q, time.monotonic()))
        still = []
        for case, method, proc, q, started in running:
            if not q.empty():
                report.rows.append(q.get())
                proc.join()
            elif not proc.is_alive():
                proc.join()
                try:
                    report.rows.append(q.get(timeout=1))
                except queue_mod.Empty:
                    report.rows.append(BenchRow(case.family, case.dim, case.size, method, "Error", note="worker died", obstacles=case.obstacles))
            elif time.monotonic() - started > config.timeout:
                proc.terminate()
                proc.join()
                report.rows.append(BenchRow(case.family, case.dim, case.size, method, TIMEOUT, time_s=config.timeout, obstacles=case.obstacles))
            else:
                still.append((case, method, proc, q, started))
        running = still
        if running:
            time.sleep(0.05)
    return report


def table_cases() -> list:
    """The arenas with reference witness lengths."""
    return [
        BenchCase("LShaped", 2),
        BenchCase("LShaped", 3),
        BenchCase("LShaped", 4),
        BenchCase("Snake", 2, obstacles=3),
        BenchCase("Snake", 2, obstacles=4),
        BenchCase("Maze", 2, obstacles=2),
        BenchCase("ModifiedL", 2),
        BenchCase("UnreachableL", 2),
    ]


__all__ = [
    "BenchCase",
    "BenchConfig",
    "BenchRow",
    "BenchReport",
    "CSV_COLUMNS",
    "run_benchmarks",
    "run_row",
    "table_cases",
]
