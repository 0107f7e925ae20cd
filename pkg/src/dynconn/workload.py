"""Deterministic workload generation and serialization.

A workload is a list of operations: ``("I", u, v)``, ``("D", u, v)`` or
``("Q", k)`` (a testing point running k seeded connectivity queries).
Everything is a pure function of its inputs and seed, so the serialized
form is byte-for-byte reproducible.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import TooFewUpdates

Operation = tuple


@dataclass(frozen=True)
class WorkloadConfig:
    u_r: int = 1000
    test_num: int = 0
    queries_per_point: int = 0
    seed: int = 0


class _EdgePool:
    """Set of edges with O(1) seeded uniform removal."""

    def __init__(self, edges=()):
        self.items: list[tuple[int, int]] = []
        self.pos: dict[tuple[int, int], int] = {}
        for e in edges:
            self.add(e)

    def __len__(self):
        return len(self.items)

    def __contains__(self, e):
        return e in self.pos

    def add(self, e) -> None:
        if e not in self.pos:
            self.pos[e] = len(self.items)
            self.items.append(e)

    def remove(self, e) -> None:
        i = self.pos.pop(e)
        last = self.items.pop()
        if i < len(self.items):
            self.items[i] = last
            self.pos[last] = i

    def pick(self, rng: random.Random) -> tuple[int, int]:
        return self.items[rng.randrange(len(self.items))]


def generate_updates(edges, cfg: WorkloadConfig) -> list[Operation]:
    """Insert the given edges in order; after every u_r-th insertion delete
    one uniformly random currently-present edge."""
    rng = random.Random(cfg.seed)
    present = _EdgePool()
    ops: list[Operation] = []
    inserted = 0
    for u, v in edges:
        key = (u, v) if u < v else (v, u)
        ops.append(("I", u, v))
        present.add(key)
        inserted += 1
        if cfg.u_r > 0 and inserted % cfg.u_r == 0 and len(present):
            a, b = present.pick(rng)
            present.remove((a, b))
            ops.append(("D", a, b))
    return ops


def generate_churn(universe, cfg: WorkloadConfig, num_ops: int) -> list[Operation]:
    """Fixed-length insert/delete stream over a fixed edge universe: one
    delete per u_r inserts, inserts drawn uniformly from the absent edges
    and deletes from the present ones."""
    rng = random.Random(cfg.seed)
    absent = _EdgePool(tuple(sorted(set(universe))))
    present = _EdgePool()
    ops: list[Operation] = []
    for step in range(num_ops):
        want_delete = cfg.u_r > 0 and step % (cfg.u_r + 1) == cfg.u_r
        if (want_delete and len(present)) or not len(absent):
            if not len(present):
                break
            e = present.pick(rng)
            present.remove(e)
            absent.add(e)
            ops.append(("D", e[0], e[1]))
        else:
            e = absent.pick(rng)
            absent.remove(e)
            present.add(e)
            ops.append(("I", e[0], e[1]))
    return ops


def place_testing_points(ops, cfg: WorkloadConfig) -> list[Operation]:
    """Insert one query marker per floor(N_u / test_num) updates."""
    n_u = len(ops)
    if cfg.test_num <= 0:
        return list(ops)
    if n_u < cfg.test_num:
        raise TooFewUpdates(f"{n_u} updates for {cfg.test_num} testing points")
    block = n_u // cfg.test_num
    out: list[Operation] = []
    placed = 0
    for i, op in enumerate(ops, 1):
        out.append(op)
        if i % block == 0 and placed < cfg.test_num:
            out.append(("Q", cfg.queries_per_point))
            placed += 1
    return out


def generate_query_pairs(n: int, count: int, seed: int) -> list[tuple[int, int]]:
    """Seeded uniform vertex pairs with u != v."""
    rng = random.Random(seed)
    pairs = []
    for _ in range(count):
        u = rng.randrange(n)
        v = rng.randrange(n - 1)
        if v >= u:
            v += 1
        pairs.append((u, v))
    return pairs


HEADER_PREFIX = "# dynconn-workload v1"


def write_workload(path: str, ops, seed: int, u_r: int) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(f"{HEADER_PREFIX} seed={seed} ur={u_r}\n")
        for op in ops:
            if op[0] == "Q":
                f.write(f"Q {op[1]}\n")
            else:
                f.write(f"{op[0]} {op[1]} {op[2]}\n")


def read_workload(path: str):
    """Returns (ops, meta) where meta carries the header fields."""
    ops: list[Operation] = []
    meta: dict[str, int] = {}
    with open(path, "r", encoding="utf-8") as f:
        first = f.readline().rstrip("\n")
        if first.startswith(HEADER_PREFIX):
            for token in first[len(HEADER_PREFIX):].split():
                k, _, val = token.partition("=")
                meta[k] = int(val)
        else:
            raise ValueError(f"not a dynconn workload file: {path}")
        for line in f:
            parts = line.split()
            if not parts or parts[0].startswith("#"):
                continue
            if parts[0] == "Q":
                ops.append(("Q", int(parts[1])))
            elif parts[0] in ("I", "D"):
                ops.append((parts[0], int(parts[1]), int(parts[2])))
            else:
                raise ValueError(f"bad workload line: {line!r}")
    return ops, meta


def validate_replay(ops) -> None:
    """Every delete must target an edge present at that point."""
    present = set()
    for op in ops:
        if op[0] == "I":
            key = (op[1], op[2]) if op[1] < op[2] else (op[2], op[1])
            present.add(key)
        elif op[0] == "D":
            key = (op[1], op[2]) if op[1] < op[2] else (op[2], op[1])
            if key not in present:
                raise ValueError(f"delete of absent edge {key}")
            present.discard(key)
