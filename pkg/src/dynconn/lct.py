"""Link-cut forest over splay-encoded preferred paths.

Plain Sleator-Tarjan machinery (access / splay / lazy reversal for
rerooting) extended with what the connectivity interface needs: non-tree
neighbor sets on the nodes, a shadow tree-edge adjacency used to enumerate
the smaller component after a cut, and a first-found replacement search.
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
from .errors import AlreadyConnected, NotTreeEdge, UnknownVertex
from .graph import normalize_edge


class LctNode:
    __slots__ = ("key", "left", "right", "parent", "path_parent", "flip", "nte")

    def __init__(self, key: int):
        self.key = key
        self.left = None
        self.right = None
        self.parent = None
        self.path_parent = None
        self.flip = False
        self.nte: dict[int, None] = {}


class LinkCutForest(ConnectivityStructure):
    name = "lct"

    def __init__(self):
        self.nodes: dict[int, LctNode] = {}
        # shadow adjacency over current tree edges, drives replacement BFS
        self.tree_adj: dict[int, dict[int, None]] = {}
        self.tree_edge_count = 0
        self.nontree_edge_count = 0

    # -- splay machinery -------------------------------------------------

    @staticmethod
    def _push(x: LctNode) -> None:
        if x.flip:
            x.flip = False
            x.left, x.right = x.right, x.left
            if x.left is not None:
                x.left.flip = not x.left.flip
            if x.right is not None:
                x.right.flip = not x.right.flip

    @staticmethod
    def _rotate(x: LctNode) -> None:
        p = x.parent
        g = p.parent
        x.path_parent, p.path_parent = p.path_parent, None
        if p.left is x:
            p.left = x.right
            if x.right is not None:
                x.right.parent = p
            x.right = p
        else:
            p.right = x.left
            if x.left is not None:
                x.left.parent = p
            x.left = p
        p.parent = x
        x.parent = g
        if g is not None:
            if g.left is p:
                g.left = x
            else:
                g.right = x

    def _splay(self, x: LctNode) -> None:
        push = self._push
        rotate = self._rotate
        # push flips root-down along the access path first
        path = [x]
        n = x
        while n.parent is not None:
            n = n.parent
            path.append(n)
        for n in reversed(path):
            push(n)
        while x.parent is not None:
            p = x.parent
            g = p.parent
            if g is not None:
                if (g.left is p) == (p.left is x):
                    rotate(p)
                else:
                    rotate(x)
            rotate(x)

    def _access(self, x: LctNode) -> None:
        self._splay(x)
        if x.right is not None:
            x.right.parent = None
            x.right.path_parent = x
            x.right = None
        while x.path_parent is not None:
            w = x.path_parent
            self._splay(w)
            if w.right is not None:
                w.right.parent = None
                w.right.path_parent = w
            w.right = x
            x.parent = w
            x.path_parent = None
            self._splay(x)

    # -- represented-tree operations --------------------------------------

    def _node(self, v: int) -> LctNode:
        n = self.nodes.get(v)
        if n is None:
            raise UnknownVertex(v)
        return n

    def _ensure(self, v: int) -> LctNode:
        n = self.nodes.get(v)
        if n is None:
            n = self.nodes[v] = LctNode(v)
            self.tree_adj[v] = {}
        return n

    def find_root(self, v: int) -> int:
        x = self._node(v)
        self._access(x)
        while True:
            self._push(x)
            if x.left is None:
                break
            x = x.left
        self._splay(x)
        return x.key

    def evert(self, v: int) -> None:
        """Make v the root of its represented tree."""
        x = self._node(v)
        self._access(x)
        x.flip = not x.flip
        self._push(x)

    def link(self, u: int, v: int) -> None:
        """Attach u's tree below v; u must be disconnected from v."""
        x, y = self._node(u), self._node(v)
        if self.find_root(u) == self.find_root(v):
            raise AlreadyConnected((u, v))
        self.evert(u)
        self._access(x)
        self._access(y)
        x.left = y
        y.parent = x

    def cut(self, u: int, v: int) -> None:
        """Remove the tree edge (u, v)."""
        x, y = self._node(u), self._node(v)
        self.evert(x.key)
        self._access(y)
        self._push(y)
        if y.left is not None:
            self._push(y.left)
        if y.left is not x or x.right is not None:
            raise NotTreeEdge((u, v))
        y.left = None
        x.parent = None

    # -- interface ---------------------------------------------------------

    def insert_edge(self, u: int, v: int):
        normalize_edge(u, v)
        nu, nv = self._ensure(u), self._ensure(v)
        if v in nu.nte or v in self.tree_adj[u]:
            return OUT_DUPLICATE
        if self.find_root(u) == self.find_root(v):
            nu.nte[v] = None
            nv.nte[u] = None
            self.nontree_edge_count += 1
            return OUT_NEW_NONTREE
        self.evert(u)
        self._access(nu)
        self._access(nv)
        nu.left = nv
        nv.parent = nu
        self.tree_adj[u][v] = None
        self.tree_adj[v][u] = None
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
        if v not in self.tree_adj[u]:
            return OUT_MISSING
        self.cut(u, v)
        del self.tree_adj[u][v]
        del self.tree_adj[v][u]
        self.tree_edge_count -= 1
        order, members = self._smaller_side(u, v)
        cand = None
        for x in order:
            for y in self.nodes[x].nte:
                if y not in members:
                    cand = (x, y)
                    break
            if cand is not None:
                break
        if cand is None:
            return OUT_SPLIT_PERMANENT
        x, y = cand
        nx, ny = self.nodes[x], self.nodes[y]
        del nx.nte[y]
        del ny.nte[x]
        self.nontree_edge_count -= 1
        self.evert(x)
        self._access(nx)
        self._access(ny)
        nx.left = ny
        ny.parent = nx
        self.tree_adj[x][y] = None
        self.tree_adj[y][x] = None
        self.tree_edge_count += 1
        return reconnected((x, y) if x < y else (y, x))

    def _smaller_side(self, u: int, v: int):
        """Nodes of the smaller post-cut component, in traversal order.

        Link-cut trees cannot enumerate one represented tree top-down
        (path pointers are directed), so every node of the forest is
        visited and classified by its represented root; ties go to u's
        side.  This full traversal is what makes deletions expensive.
        """
        memo: dict[LctNode, LctNode] = {}
        reps: dict[int, LctNode] = {}
        for w, start in self.nodes.items():
            n = start
            path = []
            while n not in memo:
                path.append(n)
                up = n.parent if n.parent is not None else n.path_parent
                if up is None:
                    memo[n] = n
                    break
                n = up
            rep = memo[n]
            for p in path:
                memo[p] = rep
            reps[w] = rep
        ru = reps[u]
        rv = reps[v]
        cu = sum(1 for r in reps.values() if r is ru)
        cv = sum(1 for r in reps.values() if r is rv)
        target = ru if cu <= cv else rv
        order = [w for w, r in reps.items() if r is target]
        return order, set(order)

    def connected(self, u: int, v: int) -> bool:
        if u == v:
            return True
        if u not in self.nodes or v not in self.nodes:
            return False
        return self.find_root(u) == self.find_root(v)

    def component_labels(self) -> dict[int, int]:
        # Pure read of the splay/path-parent forest: nodes of one represented
        # tree all reach the same topmost splay node.
        labels: dict[int, int] = {}
        memo: dict[LctNode, int] = {}
        for v, n in self.nodes.items():
            path = []
            while n not in memo:
                path.append(n)
                up = n.parent if n.parent is not None else n.path_parent
                if up is None:
                    break
                n = up
            rep = memo.get(n, n.key)
            memo[n] = rep
            for p in path:
                memo[p] = rep
            labels[v] = rep
        return labels

    def represented_edges(self) -> set[tuple[int, int]]:
        """Decode the represented forest's edge set (test hook)."""
        edges = set()
        for v in self.nodes:
            for w in self.tree_adj[v]:
                edges.add((v, w) if v < w else (w, v))
        return edges

    def decode_forest(self) -> set[tuple[int, int]]:
        """Recover tree edges purely from splay structure + path parents."""
        # In-order of each splay tree is a represented path (depth order);
        # consecutive path nodes are tree edges, and a path's top node hangs
        # from its path_parent.
        edges = set()
        tops: dict[LctNode, LctNode] = {}
        for n in self.nodes.values():
            r = n
            while r.parent is not None:
                r = r.parent
            if r in tops:
                continue
            tops[r] = r
            order: list[int] = []
            self._inorder(r, order)
            for a, b in zip(order, order[1:]):
                edges.add((a, b) if a < b else (b, a))
            if r.path_parent is not None:
                first = order[0]
                pp = r.path_parent.key
                edges.add((first, pp) if first < pp else (pp, first))
        return edges

    def _inorder(self, root: LctNode, out: list[int]) -> None:
        stack = []
        n = root
        while stack or n is not None:
            while n is not None:
                self._push(n)
                stack.append(n)
                n = n.left
            n = stack.pop()
            out.append(n.key)
            n = n.right

    def stats(self) -> StructureStats:
        m = self.tree_edge_count + self.nontree_edge_count
        height = 0
        depth: dict[LctNode, int] = {}
        for n in self.nodes.values():
            path = []
            while n is not None and n not in depth:
                path.append(n)
                n = n.parent if n.parent is not None else n.path_parent
            base = depth[n] if n is not None else -1
            for p in reversed(path):
                base += 1
                depth[p] = base
            if path and depth[path[0]] > height:
                height = depth[path[0]]
        return StructureStats(
            node_count=len(self.nodes),
            max_height=height,
            level_histogram=[m] if m else [],
        )

    def memory_inventory(self) -> dict[str, int]:
        n = len(self.nodes)
        return {
            "nodes": n,
            "links": 4 * n,  # left, right, parent, path_parent
            "ints": n,  # flip mark
            "sets": 2 * n,  # nte + shadow tree adjacency per vertex
            "set_entries": 2 * (self.tree_edge_count + self.nontree_edge_count),
            "maps": 1,
            "map_entries": n,
            "bitmaps": 0,
        }

    def audit(self) -> None:
        decoded = self.decode_forest()
        assert decoded == self.represented_edges(), "splay forest drifted from tree adjacency"
        for v, n in self.nodes.items():
            for y in n.nte:
                assert v in self.nodes[y].nte, f"nte asymmetry {v}-{y}"
