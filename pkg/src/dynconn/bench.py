"""Workload replay with timing, the memory cost model, and CSV reporting."""

from __future__ import annotations

import csv
import time
from dataclasses import dataclass

from .core import STRUCTURE_NAMES, make_structure
from .errors import UnknownStructure
from .memmodel import MemoryModel, measure_memory
from .workload import generate_query_pairs

CSV_COLUMNS = (
    "structure",
    "dataset",
    "u_r",
    "op_class",
    "count",
    "total_ns",
    "mean_ns",
    "p99_ns",
    "memory_bytes",
    "max_height",
    "seed",
)

TIMING_COLUMNS = ("total_ns", "mean_ns", "p99_ns")


@dataclass
class BenchRow:
    structure: str
    dataset: str
    u_r: int
    op_class: str
    count: int
    total_ns: int
    mean_ns: float
    p99_ns: int
    memory_bytes: int
    max_height: int
    seed: int

    def as_list(self):
        return [
            self.structure,
            self.dataset,
            self.u_r,
            self.op_class,
            self.count,
            self.total_ns,
            f"{self.mean_ns:.1f}",
            self.p99_ns,
            self.memory_bytes,
            self.max_height,
            self.seed,
        ]


@dataclass
class BenchResult:
    rows: list
    timed_out: bool
    ops_done: int


def _percentile99(durations: list[int]) -> int:
    if not durations:
        return 0
    ordered = sorted(durations)
    idx = max(0, (99 * len(ordered) + 99) // 100 - 1)
    return ordered[min(idx, len(ordered) - 1)]


def run_benchmark(
    structure_name: str,
    dataset_label: str,
    ops,
    n_vertices: int,
    u_r: int,
    seed: int,
    model: MemoryModel | None = None,
    timeout_secs: float = 0.0,
    beta: int = 2,
) -> BenchResult:
    """Replay a workload on one structure, timing each operation class.

    Query markers suspend updates and time a batch of seeded pairs.  A
    positive timeout stops the replay early; whatever completed is still
    reported.
    """
    if structure_name not in STRUCTURE_NAMES:
        raise UnknownStructure(structure_name)
    s = make_structure(structure_name, seed=seed, beta=beta)
    durations: dict[str, list[int]] = {"insert": [], "delete": [], "query": []}
    clock = time.perf_counter_ns
    deadline = time.monotonic() + timeout_secs if timeout_secs > 0 else None
    timed_out = False
    done = 0
    batch_idx = 0
    for op in ops:
        kind = op[0]
        if kind == "I":
            t0 = clock()
            s.insert_edge(op[1], op[2])
            durations["insert"].append(clock() - t0)
        elif kind == "D":
            t0 = clock()
            s.delete_edge(op[1], op[2])
            durations["delete"].append(clock() - t0)
        else:  # Q: suspend updates and time a query batch
            pairs = generate_query_pairs(n_vertices, op[1], seed * 1_000_003 + batch_idx)
            batch_idx += 1
            connected = s.connected
            q = durations["query"]
            for a, b in pairs:
                t0 = clock()
                connected(a, b)
                q.append(clock() - t0)
        done += 1
        if deadline is not None and done % 512 == 0 and time.monotonic() > deadline:
            timed_out = True
            break
    memory = measure_memory(s, model)
    st = s.stats()
    rows = []
    for op_class in ("insert", "delete", "query"):
        d = durations[op_class]
        if not d:
            continue
        total = sum(d)
        rows.append(
            BenchRow(
                structure=structure_name,
                dataset=dataset_label,
                u_r=u_r,
                op_class=op_class,
                count=len(d),
                total_ns=total,
                mean_ns=total / len(d),
                p99_ns=_percentile99(d),
                memory_bytes=memory,
                max_height=st.max_height,
                seed=seed,
            )
        )
    return BenchResult(rows=rows, timed_out=timed_out, ops_done=done)


def emit_csv(rows, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as f:
        w = csv.writer(f)
        w.writerow(CSV_COLUMNS)
        for row in rows:
            w.writerow(row.as_list())


def read_csv(path: str) -> list[dict]:
    with open(path, "r", encoding="utf-8", newline="") as f:
        return list(csv.DictReader(f))


def strip_timing(csv_rows: list[dict]) -> list[dict]:
    """Drop the timing columns; what remains must be seed-deterministic."""
    return [{k: v for k, v in row.items() if k not in TIMING_COLUMNS} for row in csv_rows]
