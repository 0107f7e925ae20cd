"""Slow reference simulator for the leveled delete procedure.

Keeps nothing but an explicit edge map and replays the push-down rules
with breadth-first searches: smaller side by vertex count (ties to the
smaller endpoint's side), all of its level-i tree edges pushed one level
down, level-i non-tree candidates visited in ascending edge order, visited
non-replacements pushed down, first edge reaching the other side wins and
becomes the level-i tree edge.  Used to cross-check the histograms of the
real structures, so it deliberately shares no code with them.
"""

from __future__ import annotations

from collections import deque

from .graph import NONTREE, TREE, level_cap, normalize_edge


class LevelSimulator:
    def __init__(self):
        self.edges: dict[tuple[int, int], list] = {}
        self.vertices: set[int] = set()

    def _tree_bfs(self, start: int, min_level: int) -> set[int]:
        adj: dict[int, list[int]] = {}
        for (x, y), (lvl, kind) in self.edges.items():
            if kind == TREE and lvl >= min_level:
                adj.setdefault(x, []).append(y)
                adj.setdefault(y, []).append(x)
        seen = {start}
        q = deque([start])
        while q:
            n = q.popleft()
            for m in adj.get(n, ()):
                if m not in seen:
                    seen.add(m)
                    q.append(m)
        return seen

    def insert_edge(self, u: int, v: int) -> None:
        key = normalize_edge(u, v)
        if key in self.edges:
            return
        self.vertices.add(u)
        self.vertices.add(v)
        connected = v in self._tree_bfs(u, 0)
        self.edges[key] = [0, TREE if not connected else NONTREE]

    def delete_edge(self, u: int, v: int):
        if u == v:
            return None
        key = (u, v) if u < v else (v, u)
        rec = self.edges.pop(key, None)
        if rec is None:
            return None
        lvl, kind = rec
        if kind == NONTREE:
            return None
        a, b = key
        cap = level_cap(len(self.vertices))
        for i in range(lvl, -1, -1):
            side_a = self._tree_bfs(a, i)
            side_b = self._tree_bfs(b, i)
            side = side_a if len(side_a) <= len(side_b) else side_b
            for k, r in self.edges.items():
                if r[0] == i and r[1] == TREE and k[0] in side and k[1] in side:
                    if i + 1 <= cap:
                        r[0] = i + 1
            cands = sorted(
                k
                for k, r in self.edges.items()
                if r[0] == i and r[1] == NONTREE and (k[0] in side or k[1] in side)
            )
            for k in cands:
                if k[0] in side and k[1] in side:
                    if i + 1 <= cap:
                        self.edges[k][0] = i + 1
                else:
                    self.edges[k][1] = TREE
                    return k
        return None

    def edge_levels(self) -> dict[tuple[int, int], tuple[int, int]]:
        return {k: (r[0], r[1]) for k, r in self.edges.items()}

    def level_histogram(self) -> list[int]:
        hist: list[int] = []
        for lvl, _ in self.edges.values():
            while len(hist) <= lvl:
                hist.append(0)
            hist[lvl] += 1
        return hist
