"""Spanning trees without levels, kept shallow by two placement rules:
attach the smaller tree below the other endpoint on insert, and re-attach a
detached side at the candidate anchor closest to the surviving root on
delete.  Ties break toward the smaller vertex id so runs are replayable.
"""

from __future__ import annotations

from .core import (
    ConnectivityStructure,
    OUT_DUPLICATE,
    OUT_MISSING,
    OUT_NEW_NONTREE,
    OUT_NEW_TREE,
    OUT_NONTREE_REMOVED,
    OUT_SPLIT_PERMANENT,
    StructureStats,
    reconnected,
)
from .errors import UnknownVertex
from .graph import normalize_edge


class DtNode:
    __slots__ = ("key", "parent", "children", "size", "nte")

    def __init__(self, key: int):
        self.key = key
        self.parent = None
        self.children: dict[DtNode, None] = {}
        self.size = 1
        self.nte: dict[int, None] = {}


class DTree(ConnectivityStructure):
    name = "dtree"

    def __init__(self):
        self.nodes: dict[int, DtNode] = {}
        self.tree_edge_count = 0
        self.nontree_edge_count = 0

    # -- helpers --------------------------------------------------------

    def _node(self, v: int) -> DtNode:
        n = self.nodes.get(v)
        if n is None:
            raise UnknownVertex(v)
        return n

    def _ensure(self, v: int) -> DtNode:
        n = self.nodes.get(v)
        if n is None:
            n = self.nodes[v] = DtNode(v)
        return n

    def find_root(self, v: int) -> tuple[int, int]:
        """(root key, depth of v)."""
        n = self._node(v)
        d = 0
        while n.parent is not None:
            n = n.parent
            d += 1
        return n.key, d

    def _root_node(self, n: DtNode) -> DtNode:
        while n.parent is not None:
            n = n.parent
        return n

    def _is_tree_edge(self, a: DtNode, b: DtNode) -> bool:
        return a.parent is b or b.parent is a

    def reroot(self, v: int) -> None:
        """Make v the root of its tree, reversing parent links on its path."""
        n = self._node(v)
        path = [n]
        while n.parent is not None:
            n = n.parent
            path.append(n)
        if len(path) == 1:
            return
        total = path[-1].size
        old_sizes = [p.size for p in path]
        for i in range(len(path) - 1, 0, -1):
            child, par = path[i - 1], path[i]
            del par.children[child]
            child.children[par] = None
            par.parent = child
        path[0].parent = None
        # Each former ancestor keeps its subtree minus the branch toward v,
        # plus the reversed remainder above it.
        running = 0
        for i in range(len(path) - 1, 0, -1):
            running = old_sizes[i] - old_sizes[i - 1] + running
            path[i].size = running
        path[0].size = total

    def _attach(self, child: DtNode, parent: DtNode) -> None:
        child.parent = parent
        parent.children[child] = None
        add = child.size
        n = parent
        while n is not None:
            n.size += add
            n = n.parent

    def _detach(self, child: DtNode) -> None:
        par = child.parent
        del par.children[child]
        child.parent = None
        sub = child.size
        n = par
        while n is not None:
            n.size -= sub
            n = n.parent

    # -- interface ------------------------------------------------------

    def insert_edge(self, u: int, v: int):
        normalize_edge(u, v)  # rejects self loops
        nu, nv = self._ensure(u), self._ensure(v)
        if v in nu.nte or self._is_tree_edge(nu, nv):
            return OUT_DUPLICATE
        ru, rv = self._root_node(nu), self._root_node(nv)
        if ru is rv:
            nu.nte[v] = None
            nv.nte[u] = None
            self.nontree_edge_count += 1
            return OUT_NEW_NONTREE
        if ru.size >= rv.size:
            self.reroot(v)
            self._attach(nv, nu)
        else:
            self.reroot(u)
            self._attach(nu, nv)
        self.tree_edge_count += 1
        return OUT_NEW_TREE

    def delete_edge(self, u: int, v: int):
        if u == v:
            return OUT_MISSING
        nu = self.nodes.get(u)
        nv = self.nodes.get(v)
        if nu is None or nv is None:
            return OUT_MISSING
        if v in nu.nte:
            del nu.nte[v]
            del nv.nte[u]
            self.nontree_edge_count -= 1
            return OUT_NONTREE_REMOVED
        if not self._is_tree_edge(nu, nv):
            return OUT_MISSING
        self.tree_edge_count -= 1
        child = nu if nu.parent is nv else nv
        kept = nv if child is nu else nu
        self._detach(child)
        rest_root = self._root_node(kept)
        searched = child if child.size <= rest_root.size else kept
        side = self._collect_subtree_or_tree(searched)
        best = None
        for x in side:
            xk = x.key
            for y in x.nte:
                if self.nodes[y] in side:
                    continue
                anchor_depth = self.find_root(y)[1]
                cand_key = (xk, y) if xk < y else (y, xk)
                rank = (anchor_depth, y, cand_key)
                if best is None or rank < best[0]:
                    best = (rank, x, y)
        if best is None:
            return OUT_SPLIT_PERMANENT
        _, x, y = best
        ny = self.nodes[y]
        del x.nte[y]
        del ny.nte[x.key]
        self.nontree_edge_count -= 1
        self.reroot(x.key)
        self._attach(x, ny)
        self.tree_edge_count += 1
        xk = x.key
        return reconnected((xk, y) if xk < y else (y, xk))

    def _collect_subtree_or_tree(self, entry: DtNode) -> set[DtNode]:
        """BFS over tree links from ``entry``, bounded to its own tree."""
        seen = {entry}
        queue = [entry]
        i = 0
        while i < len(queue):
            x = queue[i]
            i += 1
            for c in x.children:
                if c not in seen:
                    seen.add(c)
                    queue.append(c)
            p = x.parent
            if p is not None and p not in seen:
                seen.add(p)
                queue.append(p)
        return seen

    def connected(self, u: int, v: int) -> bool:
        if u == v:
            return True
        if u not in self.nodes or v not in self.nodes:
            return False
        return self._root_node(self.nodes[u]) is self._root_node(self.nodes[v])

    def component_labels(self) -> dict[int, int]:
        labels: dict[int, int] = {}
        root_of: dict[DtNode, int] = {}
        for v, n in self.nodes.items():
            path = []
            while n.parent is not None and n not in root_of:
                path.append(n)
                n = n.parent
            rep = root_of.get(n, n.key)
            root_of[n] = rep
            for p in path:
                root_of[p] = rep
            labels[v] = rep
        return labels

    def stats(self) -> StructureStats:
        depth: dict[DtNode, int] = {}
        deepest = 0
        for n in self.nodes.values():
            path = []
            while n is not None and n not in depth:
                path.append(n)
                n = n.parent
            base = depth[n] if n is not None else -1
            for p in reversed(path):
                base += 1
                depth[p] = base
            if path and depth[path[0]] > deepest:
                deepest = depth[path[0]]
        m = self.tree_edge_count + self.nontree_edge_count
        return StructureStats(
            node_count=len(self.nodes),
            max_height=deepest,
            level_histogram=[m] if m else [],
        )

    def memory_inventory(self) -> dict[str, int]:
        n = len(self.nodes)
        return {
            "nodes": n,
            "links": n,  # parent pointers
            "ints": n,  # size counters
            "sets": 2 * n,  # children + nte per node
            "set_entries": self.tree_edge_count + 2 * self.nontree_edge_count,
            "maps": 1,  # key -> node lookup
            "map_entries": n,
            "bitmaps": 0,
        }

    def audit(self) -> None:
        for v, n in self.nodes.items():
            assert n.size == 1 + sum(c.size for c in n.children), f"size off at {v}"
            for c in n.children:
                assert c.parent is n
            if n.parent is not None:
                assert n in n.parent.children
            for y in n.nte:
                assert v in self.nodes[y].nte, f"nte asymmetry {v}-{y}"


def sum_of_depths(tree: DTree, root: int) -> int:
    """S_d of the tree rooted at ``root``: total distance of nodes to it."""
    rnode = tree._node(root)
    total = 0
    stack = [(rnode, 0)]
    while stack:
        n, d = stack.pop()
        total += d
        for c in n.children:
            stack.append((c, d + 1))
    return total
