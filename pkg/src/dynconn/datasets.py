"""Graph families for benchmarks plus the edge-list file loader."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import InfeasibleM


@dataclass(frozen=True)
class LoadResult:
    edges: list
    n: int
    dropped_self_loops: int
    dropped_duplicates: int
    reverse_map: dict


def parse_dataset_spec(text: str):
    """Parse 'star:N', 'path:N', 'complete:N', 'gnm:N,M', 'powerlaw:N,M'
    or 'file:PATH' into a (kind, args...) tuple."""
    kind, _, rest = text.partition(":")
    kind = kind.lower()
    if kind == "file":
        return ("file", rest)
    if kind in ("star", "path", "complete"):
        return (kind, int(rest))
    if kind in ("gnm", "powerlaw"):
        n_s, _, m_s = rest.partition(",")
        return (kind, int(n_s), int(m_s))
    raise ValueError(f"unknown dataset spec {text!r}")


def gen_graph(spec, seed: int = 0):
    """Returns (edges, n) for a generated family or loaded file."""
    kind = spec[0]
    if kind == "file":
        res = load_edge_list(spec[1])
        return res.edges, res.n
    if kind == "star":
        n = spec[1]
        return [(0, i) for i in range(1, n)], n
    if kind == "path":
        n = spec[1]
        return [(i, i + 1) for i in range(n - 1)], n
    if kind == "complete":
        n = spec[1]
        return [(i, j) for i in range(n) for j in range(i + 1, n)], n
    if kind == "gnm":
        _, n, m = spec
        limit = n * (n - 1) // 2
        if m > limit:
            raise InfeasibleM(f"{m} edges > {limit} possible on {n} vertices")
        rng = random.Random(seed)
        chosen = set()
        edges = []
        while len(edges) < m:
            u = rng.randrange(n)
            v = rng.randrange(n - 1)
            if v >= u:
                v += 1
            key = (u, v) if u < v else (v, u)
            if key not in chosen:
                chosen.add(key)
                edges.append(key)
        return edges, n
    if kind == "powerlaw":
        _, n, m = spec
        return _preferential_attachment(n, m, seed)
    raise ValueError(f"unknown dataset spec {spec!r}")


def _preferential_attachment(n: int, m: int, seed: int):
    """Seeded preferential attachment, then trimmed or padded to m edges."""
    limit = n * (n - 1) // 2
    if m > limit:
        raise InfeasibleM(f"{m} edges > {limit} possible on {n} vertices")
    rng = random.Random(seed)
    k = max(1, round(m / max(1, n)))
    chosen = set()
    edges = []
    endpoints = [0]  # degree-weighted endpoint pool
    for v in range(1, n):
        targets = set()
        attempts = 0
        want = min(k, v)
        while len(targets) < want and attempts < 20 * want:
            t = endpoints[rng.randrange(len(endpoints))]
            attempts += 1
            if t != v:
                targets.add(t)
        while len(targets) < want:
            t = rng.randrange(v)
            targets.add(t)
        for t in targets:
            key = (v, t) if v < t else (t, v)
            if key not in chosen:
                chosen.add(key)
                edges.append(key)
                endpoints.append(t)
                endpoints.append(v)
        if not targets:
            endpoints.append(v)
    if len(edges) > m:
        edges = edges[:m]
    while len(edges) < m:
        u = rng.randrange(n)
        v = rng.randrange(n - 1)
        if v >= u:
            v += 1
        key = (u, v) if u < v else (v, u)
        if key not in chosen:
            chosen.add(key)
            edges.append(key)
    return edges, n


def load_edge_list(path: str) -> LoadResult:
    """One edge per line, two whitespace-separated non-negative integers;
    '#' comments ignored; self-loops and duplicates dropped with counters;
    external ids densely remapped to 0..n-1."""
    remap: dict[int, int] = {}
    reverse: dict[int, int] = {}
    seen = set()
    edges = []
    self_loops = 0
    dupes = 0
    with open(path, "r", encoding="utf-8") as f:
        for line in f:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            a_s, b_s = line.split()[:2]
            a, b = int(a_s), int(b_s)
            if a == b:
                self_loops += 1
                continue
            for x in (a, b):
                if x not in remap:
                    remap[x] = len(remap)
                    reverse[remap[x]] = x
            u, v = remap[a], remap[b]
            key = (u, v) if u < v else (v, u)
            if key in seen:
                dupes += 1
                continue
            seen.add(key)
            edges.append(key)
    return LoadResult(edges, len(remap), self_loops, dupes, reverse)
