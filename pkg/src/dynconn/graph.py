"""Leveled edge bookkeeping shared by the level-based structures.

Every edge carries a non-negative level (0 on insertion, raised one step
at a time by replacement searches) and a tree / non-tree kind.  Per-vertex
adjacency is kept per level, either split by kind or merged into one set
per level (the variant used by STV / LTV).
"""

from __future__ import annotations

from .errors import DuplicateEdge, LevelSkip, MissingEdge, SelfLoop

TREE = 0
NONTREE = 1


def normalize_edge(u: int, v: int) -> tuple[int, int]:
    """Return the canonical (min, max) form of an undirected edge."""
    if u == v:
        raise SelfLoop(f"self loop at vertex {u}")
    return (u, v) if u < v else (v, u)


def level_cap(n_vertices: int) -> int:
    """Highest level an edge may reach: floor(log2 n), at least 1."""
    if n_vertices < 2:
        return 1
    return max(1, n_vertices.bit_length() - 1)


class LeveledGraph:
    """Authoritative edge set with levels, kinds and per-level adjacency.

    ``merged=True`` keeps one neighbor set per (vertex, level) and an edge
    kind index on the side; the default keeps separate tree / non-tree sets.
    Neighbor sets are insertion-ordered dicts so iteration order is a pure
    function of the operation sequence.
    """

    def __init__(self, merged: bool = False):
        self.merged = merged
        self.vertices: dict[int, None] = {}
        # key -> [level, kind]; doubles as the tree-edge index in merged mode
        self.edges: dict[tuple[int, int], list] = {}
        if merged:
            self.adj: dict[int, dict[int, dict[int, None]]] = {}
        else:
            self.adj_t: dict[int, dict[int, dict[int, None]]] = {}
            self.adj_nt: dict[int, dict[int, dict[int, None]]] = {}
        self.clamped_promotions = 0

    # -- vertices ------------------------------------------------------

    def add_vertex(self, v: int) -> None:
        if v not in self.vertices:
            self.vertices[v] = None
            if self.merged:
                self.adj[v] = {}
            else:
                self.adj_t[v] = {}
                self.adj_nt[v] = {}

    def vertex_count(self) -> int:
        return len(self.vertices)

    def cap(self) -> int:
        return level_cap(len(self.vertices))

    # -- edges ---------------------------------------------------------

    def record_edge(self, key: tuple[int, int], level: int, kind: int) -> None:
        if key in self.edges:
            raise DuplicateEdge(f"edge {key} already present")
        a, b = key
        self.add_vertex(a)
        self.add_vertex(b)
        self.edges[key] = [level, kind]
        self._adj_add(a, b, level, kind)
        self._adj_add(b, a, level, kind)

    def remove_edge(self, key: tuple[int, int]) -> tuple[int, int]:
        """Drop an edge entirely; returns its (level, kind)."""
        rec = self.edges.pop(key, None)
        if rec is None:
            raise MissingEdge(f"edge {key} not present")
        level, kind = rec
        a, b = key
        self._adj_del(a, b, level, kind)
        self._adj_del(b, a, level, kind)
        return level, kind

    def promote_edge(self, key: tuple[int, int], to_level: int) -> bool:
        """Raise an edge one level; clamped (no-op) beyond the level cap."""
        rec = self.edges.get(key)
        if rec is None:
            raise MissingEdge(f"edge {key} not present")
        level, kind = rec
        if to_level != level + 1:
            raise LevelSkip(f"edge {key} at level {level}, cannot jump to {to_level}")
        if to_level > self.cap():
            self.clamped_promotions += 1
            return False
        a, b = key
        self._adj_del(a, b, level, kind)
        self._adj_del(b, a, level, kind)
        rec[0] = to_level
        self._adj_add(a, b, to_level, kind)
        self._adj_add(b, a, to_level, kind)
        return True

    def set_kind(self, key: tuple[int, int], kind: int) -> None:
        """Flip tree / non-tree classification at the edge's current level."""
        rec = self.edges.get(key)
        if rec is None:
            raise MissingEdge(f"edge {key} not present")
        level, old = rec
        if old == kind:
            return
        a, b = key
        self._adj_del(a, b, level, old)
        self._adj_del(b, a, level, old)
        rec[1] = kind
        self._adj_add(a, b, level, kind)
        self._adj_add(b, a, level, kind)

    def classify(self, key: tuple[int, int]):
        """Return (kind, level) for a present edge, None when absent."""
        rec = self.edges.get(key)
        if rec is None:
            return None
        return rec[1], rec[0]

    def level_of(self, key: tuple[int, int]) -> int:
        return self.edges[key][0]

    def is_tree(self, key: tuple[int, int]) -> bool:
        return self.edges[key][1] == TREE

    # -- adjacency -----------------------------------------------------

    def _adj_add(self, u, v, level, kind):
        if self.merged:
            per = self.adj[u]
        else:
            per = self.adj_t[u] if kind == TREE else self.adj_nt[u]
        lv = per.get(level)
        if lv is None:
            per[level] = lv = {}
        lv[v] = None

    def _adj_del(self, u, v, level, kind):
        if self.merged:
            per = self.adj[u]
        else:
            per = self.adj_t[u] if kind == TREE else self.adj_nt[u]
        lv = per[level]
        del lv[v]
        if not lv:
            del per[level]

    def tree_neighbors(self, v: int, level: int) -> dict[int, None]:
        """Level-``level`` tree neighbors of ``v`` (empty dict when none)."""
        if self.merged:
            out = {}
            for w in self.adj[v].get(level, ()):
                k = (v, w) if v < w else (w, v)
                if self.edges[k][1] == TREE:
                    out[w] = None
            return out
        return self.adj_t.get(v, {}).get(level) or {}

    def nontree_neighbors(self, v: int, level: int) -> dict[int, None]:
        if self.merged:
            out = {}
            for w in self.adj[v].get(level, ()):
                k = (v, w) if v < w else (w, v)
                if self.edges[k][1] == NONTREE:
                    out[w] = None
            return out
        return self.adj_nt.get(v, {}).get(level) or {}

    def tree_adj_above(self, v: int, min_level: int):
        """Yield tree neighbors of v over edges with level >= min_level."""
        if self.merged:
            edges = self.edges
            for lvl, nbrs in self.adj[v].items():
                if lvl >= min_level:
                    for y in nbrs:
                        k = (v, y) if v < y else (y, v)
                        if edges[k][1] == TREE:
                            yield y
        else:
            for lvl, nbrs in self.adj_t[v].items():
                if lvl >= min_level:
                    yield from nbrs

    def vertex_level(self, v: int) -> int:
        """1 + max level over incident edges (1 for an isolated vertex)."""
        top = -1
        if self.merged:
            for lvl in self.adj.get(v, ()):
                if lvl > top:
                    top = lvl
        else:
            for lvl in self.adj_t.get(v, ()):
                if lvl > top:
                    top = lvl
            for lvl in self.adj_nt.get(v, ()):
                if lvl > top:
                    top = lvl
        return top + 1 if top >= 0 else 1

    def tree_side(self, start: int, min_level: int) -> set[int]:
        """Vertices reachable from ``start`` via tree edges of level >= min_level."""
        seen = {start}
        stack = [start]
        if self.merged:
            adj, edges = self.adj, self.edges
            while stack:
                x = stack.pop()
                for lvl, nbrs in adj[x].items():
                    if lvl < min_level:
                        continue
                    for y in nbrs:
                        if y not in seen:
                            k = (x, y) if x < y else (y, x)
                            if edges[k][1] == TREE:
                                seen.add(y)
                                stack.append(y)
        else:
            adj_t = self.adj_t
            while stack:
                x = stack.pop()
                for lvl, nbrs in adj_t[x].items():
                    if lvl >= min_level:
                        for y in nbrs:
                            if y not in seen:
                                seen.add(y)
                                stack.append(y)
        return seen

    def level_histogram(self) -> list[int]:
        hist: list[int] = []
        for level, _ in self.edges.values():
            while len(hist) <= level:
                hist.append(0)
            hist[level] += 1
        return hist

    def edge_levels(self) -> dict[tuple[int, int], tuple[int, int]]:
        """Snapshot of key -> (level, kind), for oracle comparisons."""
        return {k: (rec[0], rec[1]) for k, rec in self.edges.items()}
