"""Recursive spanning forests behind bounded-height trees.

A component is a hierarchy of super nodes: the root is the level-0 super
node, a level-i super node groups the members of one level-i tree (items of
level i+1), and a vertex leaf sits below the super node of the deepest
tree containing it, so a leaf's depth equals one plus the maximum level on
its incident edges.  Deleting a level-i tree edge walks levels downward:
the side with fewer vertices has its level-i tree edges pushed one level
down (the side becomes a level-(i+1) tree), its level-i non-tree edges are
scanned in ascending edge order, visited non-replacements are pushed down
too, and the first edge reaching the other side reconnects.

``ST`` keeps tree and non-tree adjacency separately; ``STV`` keeps one
merged neighbor set per level and re-checks every scanned edge against the
tree-edge index.  The local-tree structures subclass the same skeleton and
only change how children hang below a structural node.
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
from .graph import LeveledGraph, NONTREE, TREE, normalize_edge


def smaller_side(g: LeveledGraph, a: int, b: int, min_level: int):
    """Alternating BFS over level->=min_level tree edges from both ends.

    Returns (side_set, contains_a) for the side with fewer vertices; an
    exact tie goes to a's side.  Work is bounded by twice the smaller side.
    """
    orders = ([a], [b])
    seen = ({a}, {b})
    fronts = [0, 0]

    def expand(idx: int) -> bool:
        """Grow side idx by one vertex; False when exhausted."""
        order, mark, i = orders[idx], seen[idx], fronts[idx]
        if i >= len(order):
            return False
        x = order[i]
        fronts[idx] += 1
        for y in g.tree_adj_above(x, min_level):
            if y not in mark:
                mark.add(y)
                order.append(y)
        return True

    while True:
        if not expand(0):
            sa = len(orders[0])
            while len(orders[1]) <= sa:
                if not expand(1):
                    break
            sb = len(orders[1])
            if sb < sa:
                return seen[1], False
            return seen[0], True  # strictly smaller or tie
        if not expand(1):
            sb = len(orders[1])
            while len(orders[0]) <= sb:
                if not expand(0):
                    break
            sa = len(orders[0])
            if sa <= sb:
                return seen[0], True
            return seen[1], False


class StNode:
    __slots__ = ("key", "children", "parent", "nl", "level")

    def __init__(self, key: int, level: int):
        self.key = key
        self.children: dict[StNode, None] = {}
        self.parent = None
        self.nl = 1
        self.level = level


class RecursiveForestBase(ConnectivityStructure):
    """Level bookkeeping and the delete walk, over subclass node hooks."""

    merged = False

    def __init__(self):
        self.g = LeveledGraph(merged=self.merged)
        self.leaves: dict[int, object] = {}
        self.super_count = 0
        self.scan_visits = 0
        self._sseq = 0
        self._gc_queue: list = []

    # -- hooks the node layout provides ---------------------------------

    def _make_leaf(self, v: int):
        raise NotImplementedError

    def _new_super(self, level: int):
        raise NotImplementedError

    def _free_super(self, node) -> None:
        raise NotImplementedError

    def _is_live(self, node) -> bool:
        raise NotImplementedError

    def _parent_of(self, node):
        raise NotImplementedError

    def _add_child(self, parent, child) -> None:
        raise NotImplementedError

    def _remove_child(self, parent, child) -> None:
        raise NotImplementedError

    def _children_of(self, node) -> list:
        raise NotImplementedError

    def _has_children(self, node) -> bool:
        raise NotImplementedError

    def _is_super(self, node) -> bool:
        raise NotImplementedError

    def _leaf_adjacency_changed(self, v: int) -> None:
        """Bitmap refresh hook; no-op for plain structural trees."""

    # -- shared structure walks -----------------------------------------

    def _ensure(self, v: int):
        leaf = self.leaves.get(v)
        if leaf is None:
            self.g.add_vertex(v)
            leaf = self._make_leaf(v)
            self.leaves[v] = leaf
            root = self._new_super(0)
            self._add_child(root, leaf)
        return leaf

    def _root_of(self, node):
        p = self._parent_of(node)
        while p is not None:
            node = p
            p = self._parent_of(node)
        return node

    def _anc_at(self, leaf, level: int):
        n = leaf
        while n.level > level:
            n = self._parent_of(n)
        assert n.level == level, "broken level chain"
        return n

    # -- interface --------------------------------------------------------

    def insert_edge(self, u: int, v: int):
        key = normalize_edge(u, v)
        if key in self.g.edges:
            return OUT_DUPLICATE
        lu = self._ensure(u)
        lv = self._ensure(v)
        ru = self._root_of(lu)
        rv = self._root_of(lv)
        if ru is rv:
            self.g.record_edge(key, 0, NONTREE)
            self._leaf_adjacency_changed(u)
            self._leaf_adjacency_changed(v)
            return OUT_NEW_NONTREE
        self.g.record_edge(key, 0, TREE)
        if rv.nl > ru.nl:
            ru, rv = rv, ru
        for child in self._children_of(rv):
            self._remove_child(rv, child)
            self._add_child(ru, child)
        self._free_super(rv)
        self._leaf_adjacency_changed(u)
        self._leaf_adjacency_changed(v)
        return OUT_NEW_TREE

    def delete_edge(self, u: int, v: int):
        if u == v:
            return OUT_MISSING
        key = (u, v) if u < v else (v, u)
        cls = self.g.classify(key)
        if cls is None:
            return OUT_MISSING
        kind, lvl = cls
        self.g.remove_edge(key)
        self._leaf_adjacency_changed(u)
        self._leaf_adjacency_changed(v)
        if kind == NONTREE:
            self._relevel(u)
            self._relevel(v)
            self._gc()
            return OUT_NONTREE_REMOVED
        return self._delete_tree_edge(key, lvl)

    # -- the level walk ----------------------------------------------------

    def _delete_tree_edge(self, key, lvl):
        a, b = key
        home = [None] * (lvl + 1)
        home[lvl] = self._anc_at(self.leaves[a], lvl)
        for i in range(lvl - 1, -1, -1):
            home[i] = self._parent_of(home[i + 1])
        frag = {a: None, b: None}  # floating fragment root per side
        outcome = None
        anchor = a
        members = []
        for i in range(lvl, -1, -1):
            side, is_a = smaller_side(self.g, a, b, i)
            anchor = a if is_a else b
            members = []
            mseen = set()
            for x in side:
                m = self._anc_at(self.leaves[x], i + 1)
                if id(m) not in mseen:
                    mseen.add(id(m))
                    members.append(m)
            promote = self._collect_tree_edges(members, side, i)
            for k in promote:
                self.g.promote_edge(k, i + 1)
            for k in promote:
                self._leaf_adjacency_changed(k[0])
                self._leaf_adjacency_changed(k[1])
            if len(members) >= 2:
                node = self._new_super(i + 1)
                for m in members:
                    par = self._parent_of(m)
                    if par is not None:
                        self._remove_child(par, m)
                        self._touch(par)
                    if self._is_super(m) and m.level == i + 1:
                        for c in self._children_of(m):
                            self._remove_child(m, c)
                            self._add_child(node, c)
                        self._free_super(m)
                    else:
                        m.level = i + 2
                        self._add_child(node, m)
                frag[anchor] = node
            else:
                assert not promote, "tree edges imply at least two members"
                m = members[0]
                if self._parent_of(m) is None and self._is_super(m):
                    frag[anchor] = m
                node = m
            cands = self._collect_candidates(side, i, node)
            replacement = None
            for k in cands:
                x, y = k
                if x in side and y in side:
                    self.g.promote_edge(k, i + 1)
                    self._leaf_adjacency_changed(x)
                    self._leaf_adjacency_changed(y)
                else:
                    replacement = k
                    break
            if replacement is not None:
                self.g.set_kind(replacement, TREE)
                self._leaf_adjacency_changed(replacement[0])
                self._leaf_adjacency_changed(replacement[1])
                for f in (frag[a], frag[b]):
                    if f is not None and self._parent_of(f) is None:
                        self._add_child(home[i], f)
                outcome = reconnected(replacement)
                break
            if frag[anchor] is None:
                # the level-i tree split even though nothing was pushed:
                # the side's single member leaves the shared super node
                m = members[0]
                par = self._parent_of(m)
                if par is not None:
                    self._remove_child(par, m)
                    self._touch(par)
                frag[anchor] = m
            if i > 0:
                # keep floating fragments one level above the next iteration
                for end in (a, b):
                    f = frag[end]
                    if f is not None and self._parent_of(f) is None:
                        while f.level > i:
                            w = self._new_super(f.level - 1)
                            self._add_child(w, f)
                            f = w
                        frag[end] = f
        if outcome is None:
            # permanent split: the level-0 smaller side becomes its own tree
            f_small = frag[anchor]
            if self._parent_of(f_small) is None:
                self._wrap_to_root(f_small)
            other = b if anchor == a else a
            f_other = frag[other]
            if f_other is not None and self._parent_of(f_other) is None:
                self._add_child(home[0], f_other)
            outcome = OUT_SPLIT_PERMANENT
        self._relevel(a)
        self._relevel(b)
        self._gc()
        return outcome

    def _wrap_to_root(self, node) -> None:
        while node.level > 0:
            w = self._new_super(node.level - 1)
            self._add_child(w, node)
            node = w

    def _touch(self, node) -> None:
        self._gc_queue.append(node)

    def _gc(self) -> None:
        for node in self._gc_queue:
            while (
                node is not None
                and self._is_super(node)
                and self._is_live(node)
                and not self._has_children(node)
            ):
                par = self._parent_of(node)
                if par is not None:
                    self._remove_child(par, node)
                self._free_super(node)
                node = par
        self._gc_queue.clear()

    def _relevel(self, v: int) -> None:
        leaf = self.leaves.get(v)
        if leaf is None:
            return
        want = self.g.vertex_level(v)
        if leaf.level > want:
            target = self._anc_at(leaf, want - 1)
            par = self._parent_of(leaf)
            self._remove_child(par, leaf)
            self._touch(par)
            leaf.level = want
            self._add_child(target, leaf)
            self._leaf_adjacency_changed(v)

    # -- edge enumeration (overridden for bitmaps / merged adjacency) -----

    def _collect_tree_edges(self, members, side, i) -> list[tuple[int, int]]:
        out = []
        g = self.g
        for x in side:
            self.scan_visits += 1
            for y in g.tree_neighbors(x, i):
                self.scan_visits += 1
                if x < y:
                    out.append((x, y))
        return out

    def _collect_candidates(self, side, i, frag_node) -> list[tuple[int, int]]:
        cands = set()
        g = self.g
        for x in side:
            self.scan_visits += 1
            for y in g.nontree_neighbors(x, i):
                self.scan_visits += 1
                cands.add((x, y) if x < y else (y, x))
        return sorted(cands)

    # -- queries -----------------------------------------------------------

    def connected(self, u: int, v: int) -> bool:
        if u == v:
            return True
        lu = self.leaves.get(u)
        lv = self.leaves.get(v)
        if lu is None or lv is None:
            return False
        return self._root_of(lu) is self._root_of(lv)

    def find_root(self, v: int):
        """Root super-node key for v's component."""
        return self._root_of(self.leaves[v]).key

    def component_labels(self) -> dict[int, int]:
        labels: dict[int, int] = {}
        memo: dict[int, int] = {}
        for v, leaf in self.leaves.items():
            path = [leaf]
            n = leaf
            while id(n) not in memo:
                p = self._parent_of(n)
                if p is None:
                    break
                n = p
                path.append(n)
            rep = memo.get(id(n), n.key)
            for p in path:
                memo[id(p)] = rep
            labels[v] = rep
        return labels

    def level_histogram(self) -> list[int]:
        return self.g.level_histogram()

    def edge_levels(self):
        return self.g.edge_levels()


class ST(RecursiveForestBase):
    name = "st"

    # -- node hooks -------------------------------------------------------

    def _make_leaf(self, v: int):
        return StNode(v, 1)

    def _new_super(self, level: int):
        self._sseq += 1
        self.super_count += 1
        node = StNode(-self._sseq, level)
        node.nl = 0
        return node

    def _free_super(self, node) -> None:
        assert not node.children
        self.super_count -= 1
        node.children = None  # poison

    def _is_live(self, node) -> bool:
        return node.children is not None

    def _parent_of(self, node):
        return node.parent

    def _add_child(self, parent, child) -> None:
        parent.children[child] = None
        child.parent = parent
        add = child.nl
        n = parent
        while n is not None:
            n.nl += add
            n = n.parent

    def _remove_child(self, parent, child) -> None:
        del parent.children[child]
        child.parent = None
        sub = child.nl
        n = parent
        while n is not None:
            n.nl -= sub
            n = n.parent

    def _children_of(self, node) -> list:
        return list(node.children)

    def _has_children(self, node) -> bool:
        return bool(node.children)

    def _is_super(self, node) -> bool:
        return node.key < 0

    # -- reporting ---------------------------------------------------------

    def stats(self) -> StructureStats:
        height = 0
        for leaf in self.leaves.values():
            d = 0
            n = leaf
            while n.parent is not None:
                n = n.parent
                d += 1
            if d > height:
                height = d
        return StructureStats(
            node_count=len(self.leaves) + self.super_count,
            max_height=height,
            level_histogram=self.level_histogram(),
        )

    def _adj_records(self) -> int:
        """Non-empty (vertex, level, kind) neighbor sets."""
        g = self.g
        if g.merged:
            return sum(len(per) for per in g.adj.values())
        return sum(len(per) for per in g.adj_t.values()) + sum(
            len(per) for per in g.adj_nt.values()
        )

    def _adj_maps(self) -> int:
        """Per-vertex level-index dictionaries."""
        return (1 if self.g.merged else 2) * len(self.leaves)

    def _count_roots(self) -> int:
        return len({id(self._root_of(leaf)) for leaf in self.leaves.values()})

    def memory_inventory(self) -> dict[str, int]:
        n = len(self.leaves)
        nodes = n + self.super_count
        records = self._adj_records()
        return {
            "nodes": nodes,
            "links": nodes,  # parent pointers
            "ints": 2 * nodes,  # nl, level
            "sets": nodes + records,  # children per node + neighbor sets
            "set_entries": (nodes - self._count_roots()) + 2 * len(self.g.edges),
            "maps": self._adj_maps() + 1,  # level indexes + leaf lookup
            "map_entries": records + n,
            "bitmaps": 0,
        }

    # -- invariants ----------------------------------------------------------

    def depth_audit(self) -> None:
        """Height bound only: every leaf within floor(log2 n) + 1 levels."""
        cap = self.g.cap()
        depth: dict[int, int] = {}
        for leaf in self.leaves.values():
            path = []
            n = leaf
            while n.parent is not None and id(n) not in depth:
                path.append(n)
                n = n.parent
            base = depth.get(id(n), 0)
            for p in reversed(path):
                base += 1
                depth[id(p)] = base
            if path:
                assert depth[id(path[0])] <= cap + 1, "height bound exceeded"

    def audit(self) -> None:
        cap = self.g.cap()
        for v, leaf in self.leaves.items():
            assert leaf.level == self.g.vertex_level(v), f"stale level at {v}"
            d = 0
            n = leaf
            while n.parent is not None:
                assert n in n.parent.children
                assert n.level == n.parent.level + 1, "levels must step by one"
                n = n.parent
                d += 1
            assert n.level == 0, "root must be the level-0 super node"
            assert d == leaf.level, "leaf depth must equal its level"
            assert d <= cap + 1, "height bound exceeded"
        self._audit_nl()

    def _audit_nl(self) -> None:
        roots = {}
        for leaf in self.leaves.values():
            r = self._root_of(leaf)
            roots[id(r)] = r

        def count(node) -> int:
            got = 1 if node.key >= 0 else sum(count(c) for c in node.children)
            assert node.nl == got, f"nl mismatch at {node.key}"
            return got

        total = sum(count(r) for r in roots.values())
        assert total == len(self.leaves), "leaves must partition the vertex set"


class STV(ST):
    """Structural tree over one merged neighbor set per (vertex, level)."""

    name = "stv"
    merged = True

    def _collect_tree_edges(self, members, side, i) -> list[tuple[int, int]]:
        out = []
        g = self.g
        for x in side:
            self.scan_visits += 1
            per = g.adj[x].get(i)
            if not per:
                continue
            for y in per:
                self.scan_visits += 1
                if x < y and g.edges[(x, y)][1] == TREE:
                    out.append((x, y))
        return out

    def _collect_candidates(self, side, i, frag_node) -> list[tuple[int, int]]:
        cands = set()
        g = self.g
        for x in side:
            self.scan_visits += 1
            per = g.adj[x].get(i)
            if not per:
                continue
            for y in per:
                self.scan_visits += 1
                k = (x, y) if x < y else (y, x)
                if g.edges[k][1] == NONTREE:
                    cands.add(k)
        return sorted(cands)

    def memory_inventory(self) -> dict[str, int]:
        inv = super().memory_inventory()
        # merged adjacency cannot tell tree from non-tree: carries an
        # edge-keyed tree index on top of the single neighbor structure
        inv["maps"] += 1
        inv["map_entries"] += len(self.g.edges)
        return inv
