"""Shared test helpers: oracle-driven random workloads and partition checks."""

from __future__ import annotations

import random

from dynconn.oracle import OracleGraph


def canonical_partition(labels: dict[int, int]) -> dict[int, int]:
    """Relabel components by their smallest member for comparison."""
    rep: dict[int, int] = {}
    for v in sorted(labels):
        lab = labels[v]
        if lab not in rep:
            rep[lab] = v
    return {v: rep[labels[v]] for v in labels}


def partitions_equal(a: dict[int, int], b: dict[int, int]) -> bool:
    if set(a) != set(b):
        return False
    return canonical_partition(a) == canonical_partition(b)


def drive_against_oracle(
    structure,
    n: int = 30,
    steps: int = 300,
    seed: int = 0,
    p_delete: float = 0.35,
    audit_every: int = 0,
    check_labels: bool = True,
    pair_checks: int = 3,
):
    """Random insert/delete stream on vertices 0..n-1, checked per step."""
    rng = random.Random(seed)
    oracle = OracleGraph()
    present: list[tuple[int, int]] = []
    log = []
    for step in range(steps):
        if present and rng.random() < p_delete:
            u, v = present.pop(rng.randrange(len(present)))
            log.append(("D", u, v))
            structure.delete_edge(u, v)
            oracle.delete_edge(u, v)
        else:
            u = rng.randrange(n)
            v = rng.randrange(n - 1)
            if v >= u:
                v += 1
            key = (u, v) if u < v else (v, u)
            log.append(("I", u, v))
            out = structure.insert_edge(u, v)
            if not oracle.has_edge(u, v):
                present.append(key)
            oracle.insert_edge(u, v)
            assert out.kind != "missing_ignored"
        if check_labels:
            got = structure.component_labels()
            want = oracle.component_labels()
            assert partitions_equal(got, want), f"partition mismatch after {log[-1]} at step {step}"
        for _ in range(pair_checks):
            a = rng.randrange(n)
            b = rng.randrange(n)
            assert structure.connected(a, b) == oracle.connected(a, b), (
                f"connected({a},{b}) mismatch after {log[-1]} at step {step}"
            )
        if audit_every and step % audit_every == 0:
            structure.audit()
    if audit_every:
        structure.audit()
    return oracle, log
