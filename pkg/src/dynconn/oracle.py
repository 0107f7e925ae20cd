"""Brute-force connectivity ground truth.

Plain adjacency sets plus breadth-first search; deliberately independent of
every tree structure so it can serve as the equivalence oracle.
"""

from __future__ import annotations

from collections import deque


class OracleGraph:
    def __init__(self):
        self.adj: dict[int, set[int]] = {}
        self._label: dict[int, int] = {}
        self._members: dict[int, list[int]] = {}

    def add_vertex(self, v: int) -> None:
        if v not in self.adj:
            self.adj[v] = set()
            self._label[v] = v
            self._members[v] = [v]

    def has_edge(self, u: int, v: int) -> bool:
        return u in self.adj and v in self.adj[u]

    def insert_edge(self, u: int, v: int) -> None:
        self.add_vertex(u)
        self.add_vertex(v)
        if v in self.adj[u]:
            return
        self.adj[u].add(v)
        self.adj[v].add(u)
        lu, lv = self._label[u], self._label[v]
        if lu != lv:
            if len(self._members[lu]) < len(self._members[lv]):
                lu, lv = lv, lu
            keep, drop = lu, lv
            for x in self._members[drop]:
                self._label[x] = keep
            self._members[keep].extend(self._members.pop(drop))

    def delete_edge(self, u: int, v: int) -> None:
        if u not in self.adj or v not in self.adj[u]:
            return
        self.adj[u].discard(v)
        self.adj[v].discard(u)
        side = self._bfs_until(u, v)
        if side is None:
            return  # still connected, labels unchanged
        old = self._label[u]
        rest = [x for x in self._members.pop(old) if x not in side]
        for x in side:
            self._label[x] = u
        self._members[u] = list(side)
        if rest:
            anchor = rest[0]
            for x in rest:
                self._label[x] = anchor
            self._members[anchor] = rest

    def _bfs_until(self, src: int, target: int):
        """Component of src, or None as soon as target is reached."""
        seen = {src}
        q = deque([src])
        adj = self.adj
        while q:
            x = q.popleft()
            for y in adj[x]:
                if y == target:
                    return None
                if y not in seen:
                    seen.add(y)
                    q.append(y)
        return seen

    def connected(self, u: int, v: int) -> bool:
        if u == v:
            return True
        if u not in self.adj or v not in self.adj:
            return False
        return self._label[u] == self._label[v]

    def component_labels(self) -> dict[int, int]:
        return dict(self._label)

    def component_count(self) -> int:
        return len(self._members)

    def recompute_labels(self) -> dict[int, int]:
        """Full BFS relabel, used to cross-check the incremental labels."""
        labels: dict[int, int] = {}
        for start in self.adj:
            if start in labels:
                continue
            labels[start] = start
            q = deque([start])
            while q:
                x = q.popleft()
                for y in self.adj[x]:
                    if y not in labels:
                        labels[y] = start
                        q.append(y)
        return labels
