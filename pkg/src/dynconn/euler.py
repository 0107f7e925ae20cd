"""Euler-tour forests over randomized search trees, and the three
structures built on them:

* HKS - one tour per component, no levels, exhaustive replacement scan.
* HDT - one forest per level (edges of level >= i), deterministic
  push-down of the smaller side per the standard delete procedure.
* HK  - leveled like HDT, but replacement search first draws
  weight-proportional random non-tree edges before falling back to the
  exhaustive scan; non-tree neighbor sets live in small randomized
  search trees to support the sampling.

A tour of an n-node tree is kept as 2n-1 vertex occurrences in treap
in-order; each vertex has exactly one active occurrence per level, which
carries its non-tree neighbors for that level.  Each tree edge stores the
two occurrences that start its two traversals; the occurrence that follows
a stored start is found through the treap, so only deletions of start
occurrences need fixing up.
"""

from __future__ import annotations

import random
from math import ceil, log2

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
from .errors import AlreadyConnected, EmptyWeight, NotTreeEdge
from .graph import normalize_edge


class Occ:
    """One occurrence of a vertex in a tour."""

    __slots__ = ("v", "left", "right", "parent", "prio", "cnt", "size", "w_own", "weight", "active", "nte")

    def __init__(self, v: int, prio: float):
        self.v = v
        self.left = None
        self.right = None
        self.parent = None
        self.prio = prio
        self.cnt = 1
        self.size = 0
        self.w_own = 0
        self.weight = 0
        self.active = False
        self.nte = None


def _upd(o: Occ) -> None:
    c = 1
    s = 1 if o.active else 0
    w = o.w_own
    l, r = o.left, o.right
    if l is not None:
        c += l.cnt
        s += l.size
        w += l.weight
    if r is not None:
        c += r.cnt
        s += r.size
        w += r.weight
    o.cnt = c
    o.size = s
    o.weight = w


def _upd_up(o: Occ) -> None:
    while o is not None:
        _upd(o)
        o = o.parent


def _root(o: Occ) -> Occ:
    while o.parent is not None:
        o = o.parent
    return o


def _rank(o: Occ) -> int:
    r = o.left.cnt if o.left is not None else 0
    n = o
    p = n.parent
    while p is not None:
        if p.right is n:
            r += (p.left.cnt if p.left is not None else 0) + 1
        n = p
        p = n.parent
    return r


def _leftmost(o: Occ) -> Occ:
    while o.left is not None:
        o = o.left
    return o


def _rightmost(o: Occ) -> Occ:
    while o.right is not None:
        o = o.right
    return o


def _split(o, k: int):
    """First k occurrences to the left part; both parts become roots."""
    if o is None:
        return None, None
    lc = o.left.cnt if o.left is not None else 0
    if lc >= k:
        l, rest = _split(o.left, k)
        o.left = rest
        if rest is not None:
            rest.parent = o
        _upd(o)
        o.parent = None
        if l is not None:
            l.parent = None
        return l, o
    o.right, r = _split(o.right, k - lc - 1)
    if o.right is not None:
        o.right.parent = o
    _upd(o)
    o.parent = None
    if r is not None:
        r.parent = None
    return o, r


def _merge(a, b):
    if a is None:
        return b
    if b is None:
        return a
    if a.prio > b.prio:
        m = _merge(a.right, b)
        a.right = m
        m.parent = a
        _upd(a)
        a.parent = None
        return a
    m = _merge(a, b.left)
    b.left = m
    m.parent = b
    _upd(b)
    b.parent = None
    return b


def _inorder_vertices(root: Occ) -> list[int]:
    out = []
    stack = []
    n = root
    while stack or n is not None:
        while n is not None:
            stack.append(n)
            n = n.left
        n = stack.pop()
        out.append(n.v)
        n = n.right
    return out


def _inorder_occs(root: Occ) -> list[Occ]:
    out = []
    stack = []
    n = root
    while stack or n is not None:
        while n is not None:
            stack.append(n)
            n = n.left
        n = stack.pop()
        out.append(n)
        n = n.right
    return out


class NteSet(dict):
    """Plain neighbor set (insertion-ordered) with the treap's interface."""

    __slots__ = ()

    def add(self, key) -> None:
        self[key] = None

    def remove(self, key) -> None:
        del self[key]


class NteTreap:
    """Neighbor ids in a randomized search tree with subtree counts."""

    __slots__ = ("root", "rng")

    class N:
        __slots__ = ("key", "left", "right", "prio", "cnt")

        def __init__(self, key, prio):
            self.key = key
            self.left = None
            self.right = None
            self.prio = prio
            self.cnt = 1

    def __init__(self, rng: random.Random):
        self.root = None
        self.rng = rng

    def __len__(self):
        return self.root.cnt if self.root is not None else 0

    @staticmethod
    def _upd(n):
        n.cnt = 1 + (n.left.cnt if n.left else 0) + (n.right.cnt if n.right else 0)

    def _split(self, n, key):
        if n is None:
            return None, None
        if n.key < key:
            n.right, r = self._split(n.right, key)
            self._upd(n)
            return n, r
        l, n.left = self._split(n.left, key)
        self._upd(n)
        return l, n

    def _merge(self, a, b):
        if a is None:
            return b
        if b is None:
            return a
        if a.prio > b.prio:
            a.right = self._merge(a.right, b)
            self._upd(a)
            return a
        b.left = self._merge(a, b.left)
        self._upd(b)
        return b

    def add(self, key) -> None:
        l, r = self._split(self.root, key)
        node = self.N(key, self.rng.random())
        self.root = self._merge(self._merge(l, node), r)

    def remove(self, key) -> None:
        l, r = self._split(self.root, key)
        mid, r = self._split(r, key + 1)
        assert mid is not None and mid.cnt == 1 and mid.key == key
        self.root = self._merge(l, r)

    def __contains__(self, key) -> bool:
        n = self.root
        while n is not None:
            if key == n.key:
                return True
            n = n.left if key < n.key else n.right
        return False

    def kth(self, k: int):
        n = self.root
        while True:
            lc = n.left.cnt if n.left else 0
            if k < lc:
                n = n.left
            elif k == lc:
                return n.key
            else:
                k -= lc + 1
                n = n.right

    def __iter__(self):
        stack, n = [], self.root
        while stack or n is not None:
            while n is not None:
                stack.append(n)
                n = n.left
            n = stack.pop()
            yield n.key
            n = n.right

    def node_count(self) -> int:
        return len(self)


class EulerLevel:
    """One forest of tours: active occurrences plus tree-edge start refs."""

    __slots__ = ("act", "starts", "owner")

    def __init__(self, owner):
        self.act: dict[int, Occ] = {}
        self.starts: dict[tuple[int, int], list[Occ]] = {}
        self.owner = owner

    def _new_occ(self, v: int) -> Occ:
        o = Occ(v, self.owner.rng.random())
        self.owner.occ_count += 1
        return o

    def ensure(self, v: int) -> Occ:
        o = self.act.get(v)
        if o is None:
            o = self._new_occ(v)
            o.active = True
            o.nte = self.owner._new_nte()
            _upd(o)
            self.act[v] = o
        return o

    def root_of(self, v: int) -> Occ:
        return _root(self.act[v])

    def _succ(self, o: Occ) -> Occ | None:
        if o.right is not None:
            return _leftmost(o.right)
        n, p = o, o.parent
        while p is not None and p.right is n:
            n, p = p, p.parent
        return p

    def _replace_start(self, a: int, b: int, old: Occ, new: Occ) -> None:
        key = (a, b) if a < b else (b, a)
        pair = self.starts[key]
        if pair[0] is old:
            pair[0] = new
        else:
            assert pair[1] is old, f"start ref of {key} out of sync"
            pair[1] = new

    def _transfer_active(self, old: Occ, new: Occ) -> None:
        new.active = True
        new.nte = old.nte
        new.w_own = old.w_own
        old.active = False
        old.nte = None
        old.w_own = 0
        self.act[old.v] = new

    def reroot(self, u: int) -> Occ:
        """Rotate u's tour to start and end at u; returns the tour root."""
        o = self.act[u]
        r = _root(o)
        if r.cnt == 1:
            return r
        first = _leftmost(r)
        if first.v == u:
            return r
        k = _rank(o)
        a, b = _split(r, k)  # b starts at o
        fpart, a2 = _split(a, 1)
        last = _rightmost(b)
        second_v = _leftmost(a2).v if a2 is not None else u
        self._replace_start(first.v, second_v, first, last)
        if self.act.get(first.v) is fpart:
            self._transfer_active(fpart, last)
            _upd_up(last)
        self.owner.occ_count -= 1
        fresh = self._new_occ(u)
        _upd(fresh)
        return _merge(b, _merge(a2, fresh))

    def link(self, key: tuple[int, int], u: int, v: int) -> None:
        self.ensure(u)
        self.ensure(v)
        ru = self.reroot(u)
        rv = self.reroot(v)
        if ru is rv:
            raise AlreadyConnected(key)
        last_u = _rightmost(ru)
        last_v = _rightmost(rv)
        fresh = self._new_occ(u)
        _upd(fresh)
        _merge(ru, _merge(rv, fresh))
        self.starts[key] = [last_u, last_v]

    def cut(self, key: tuple[int, int], u: int, v: int) -> None:
        pair = self.starts.pop(key, None)
        if pair is None:
            raise NotTreeEdge(key)
        s1, s2 = pair
        k1, k2 = _rank(s1), _rank(s2)
        if k1 > k2:
            s1, s2 = s2, s1
            k1, k2 = k2, k1
        root = _root(s1)
        a, rest = _split(root, k1 + 1)
        mid, c = _split(rest, k2 - k1)
        dfirst, c2 = _split(c, 1)
        if self.act.get(dfirst.v) is dfirst:
            self._transfer_active(dfirst, s1)
            _upd_up(s1)
        if c2 is not None:
            e = _leftmost(c2)
            self._replace_start(dfirst.v, e.v, dfirst, s1)
        self.owner.occ_count -= 1
        _merge(a, c2)

    # -- non-tree neighbor bookkeeping --------------------------------

    def add_nte(self, u: int, v: int) -> None:
        ou = self.ensure(u)
        ov = self.ensure(v)
        ou.nte.add(v)
        ov.nte.add(u)
        ou.w_own += 1
        ov.w_own += 1
        _upd_up(ou)
        _upd_up(ov)

    def remove_nte(self, u: int, v: int) -> None:
        ou = self.act[u]
        ov = self.act[v]
        ou.nte.remove(v)
        ov.nte.remove(u)
        ou.w_own -= 1
        ov.w_own -= 1
        _upd_up(ou)
        _upd_up(ov)

    def tour_vertices(self, root: Occ) -> list[int]:
        return _inorder_vertices(root)

    def active_vertices_under(self, root: Occ) -> list[int]:
        return [o.v for o in _inorder_occs(root) if o.active]

    def roots(self) -> list[Occ]:
        seen = set()
        out = []
        for occ in self.act.values():
            r = _root(occ)
            if id(r) not in seen:
                seen.add(id(r))
                out.append(r)
        return out


class _EulerBase(ConnectivityStructure):
    """Shared insert/cut/query plumbing for HKS, HK and HDT."""

    leveled = True

    def __init__(self, seed: int = 0):
        self.rng = random.Random(seed)
        self.occ_count = 0
        self.levels: list[EulerLevel] = [EulerLevel(self)]
        self.tree_level: dict[tuple[int, int], int] = {}
        self.nontree_level: dict[tuple[int, int], int] = {}

    def _new_nte(self):
        return NteSet()

    def _level(self, i: int) -> EulerLevel:
        while len(self.levels) <= i:
            self.levels.append(EulerLevel(self))
        return self.levels[i]

    # -- interface ----------------------------------------------------

    def insert_edge(self, u: int, v: int):
        key = normalize_edge(u, v)
        if key in self.tree_level or key in self.nontree_level:
            return OUT_DUPLICATE
        l0 = self.levels[0]
        ou = l0.ensure(u)
        ov = l0.ensure(v)
        if _root(ou) is _root(ov):
            l0.add_nte(u, v)
            self.nontree_level[key] = 0
            return OUT_NEW_NONTREE
        l0.link(key, u, v)
        self.tree_level[key] = 0
        return OUT_NEW_TREE

    def delete_edge(self, u: int, v: int):
        if u == v:
            return OUT_MISSING
        key = (u, v) if u < v else (v, u)
        lvl = self.nontree_level.pop(key, None)
        if lvl is not None:
            self.levels[lvl].remove_nte(u, v)
            return OUT_NONTREE_REMOVED
        lvl = self.tree_level.pop(key, None)
        if lvl is None:
            return OUT_MISSING
        for j in range(lvl + 1):
            self.levels[j].cut(key, u, v)
        return self._search_replacement(key, lvl)

    def connected(self, u: int, v: int) -> bool:
        if u == v:
            return True
        act = self.levels[0].act
        ou = act.get(u)
        ov = act.get(v)
        if ou is None or ov is None:
            return False
        return _root(ou) is _root(ov)

    def component_labels(self) -> dict[int, int]:
        labels: dict[int, int] = {}
        memo: dict[int, int] = {}
        for v, o in self.levels[0].act.items():
            path = []
            while o.parent is not None and id(o) not in memo:
                path.append(o)
                o = o.parent
            rep = memo.get(id(o), o.v)
            memo[id(o)] = rep
            for p in path:
                memo[id(p)] = rep
            labels[v] = rep
        return labels

    # -- replacement search helpers ------------------------------------

    def _smaller_root(self, key: tuple[int, int], lvl: int):
        level = self.levels[lvl]
        ra = level.root_of(key[0])
        rb = level.root_of(key[1])
        if ra.size <= rb.size:  # ties go to the side of the smaller endpoint
            return ra, rb
        return rb, ra

    def _promote_tree_edges(self, lvl: int, s_root: Occ) -> None:
        """Push every level-lvl tree edge inside the side up one level."""
        tour = self.levels[lvl].tour_vertices(s_root)
        tl = self.tree_level
        seen = set()
        nxt = self._level(lvl + 1)
        for a, b in zip(tour, tour[1:]):
            k = (a, b) if a < b else (b, a)
            if k not in seen and tl.get(k) == lvl:
                seen.add(k)
                tl[k] = lvl + 1
                nxt.link(k, k[0], k[1])

    def _collect_candidates(self, lvl: int, s_root: Occ) -> list[tuple[int, int]]:
        cands = set()
        for o in _inorder_occs(s_root):
            if o.active and o.w_own:
                x = o.v
                for y in o.nte:
                    cands.add((x, y) if x < y else (y, x))
        return sorted(cands)

    def _use_replacement(self, key: tuple[int, int], lvl: int):
        """Turn a non-tree edge into the level-lvl tree edge reconnecting."""
        x, y = key
        del self.nontree_level[key]
        self.levels[lvl].remove_nte(x, y)
        self.tree_level[key] = lvl
        for j in range(lvl + 1):
            self.levels[j].link(key, x, y)
        return reconnected(key)

    def _promote_nontree(self, key: tuple[int, int], lvl: int) -> None:
        x, y = key
        self.levels[lvl].remove_nte(x, y)
        self._level(lvl + 1).add_nte(x, y)
        self.nontree_level[key] = lvl + 1

    def _search_replacement(self, key, lvl):
        raise NotImplementedError

    # -- reporting ------------------------------------------------------

    def level_histogram(self) -> list[int]:
        hist: list[int] = []
        for src in (self.tree_level, self.nontree_level):
            for level in src.values():
                while len(hist) <= level:
                    hist.append(0)
                hist[level] += 1
        return hist

    def edge_levels(self) -> dict[tuple[int, int], tuple[int, int]]:
        out = {k: (lv, 0) for k, lv in self.tree_level.items()}
        out.update({k: (lv, 1) for k, lv in self.nontree_level.items()})
        return out

    def stats(self) -> StructureStats:
        height = 0
        for root in self.levels[0].roots():
            stack = [(root, 0)]
            while stack:
                o, d = stack.pop()
                if d > height:
                    height = d
                if o.left is not None:
                    stack.append((o.left, d + 1))
                if o.right is not None:
                    stack.append((o.right, d + 1))
        return StructureStats(
            node_count=self.occ_count,
            max_height=height,
            level_histogram=self.level_histogram(),
        )

    # -- invariants -------------------------------------------------------

    def tour_audit(self) -> None:
        """Tours decode to the level forests and have 2n-1 occurrences."""
        for i, level in enumerate(self.levels):
            decoded = set()
            covered = 0
            for root in level.roots():
                verts = _inorder_vertices(root)
                distinct = set(verts)
                assert len(verts) == 2 * len(distinct) - 1, "tour length is not 2n-1"
                assert verts[0] == verts[-1], "tour must close"
                for a, b in zip(verts, verts[1:]):
                    k = (a, b) if a < b else (b, a)
                    decoded.add(k)
                covered += len(distinct)
            assert covered == len(level.act), "active occurrences must cover vertices once"
            want = {k for k, lv in self.tree_level.items() if lv >= i}
            assert decoded == want, f"level {i} tours do not decode to the level forest"

    def audit(self) -> None:
        for i, level in enumerate(self.levels):
            decoded_edges = set()
            covered = set()
            for root in level.roots():
                occs = _inorder_occs(root)
                verts = [o.v for o in occs]
                distinct = set(verts)
                assert len(occs) == 2 * len(distinct) - 1, "tour length is not 2n-1"
                assert verts[0] == verts[-1], "tour must close"
                actives = [o for o in occs if o.active]
                assert len(actives) == len(distinct), "one active occurrence per vertex"
                for a, b in zip(verts, verts[1:]):
                    k = (a, b) if a < b else (b, a)
                    lv = self.tree_level.get(k)
                    assert lv is not None and lv >= i, f"tour transition {k} not a level->= {i} tree edge"
                    decoded_edges.add(k)
                self._audit_aggregates(root)
                covered |= distinct
            want = {k for k, lv in self.tree_level.items() if lv >= i}
            assert decoded_edges == want, f"level {i} forest does not match edge levels"
            for v, o in level.act.items():
                assert o.active and o.v == v
                for y in o.nte:
                    k = (v, y) if v < y else (y, v)
                    assert self.nontree_level.get(k) == i, f"nte entry {k} not registered at level {i}"
                    peer = level.act[y].nte
                    assert v in peer, f"nte asymmetry {k}"
            for k, pair in level.starts.items():
                assert self.tree_level.get(k) is not None and self.tree_level[k] >= i
                for s in pair:
                    nxt = level._succ(s)
                    assert nxt is not None, "stored start lost its transition"
                    kk = (s.v, nxt.v) if s.v < nxt.v else (nxt.v, s.v)
                    assert kk == k, f"start ref of {k} now points at {kk}"

    def _audit_aggregates(self, root: Occ) -> None:
        def rec(o):
            if o is None:
                return 0, 0, 0
            lc, ls, lw = rec(o.left)
            rc, rs, rw = rec(o.right)
            c = 1 + lc + rc
            s = (1 if o.active else 0) + ls + rs
            w = o.w_own + lw + rw
            assert o.cnt == c and o.size == s and o.weight == w, "stale aggregate"
            if o.left is not None:
                assert o.left.parent is o and o.left.prio <= o.prio
            if o.right is not None:
                assert o.right.parent is o and o.right.prio <= o.prio
            return c, s, w

        rec(root)


class HKS(_EulerBase):
    """Single-level tours: cut, scan the smaller side, relink or split."""

    name = "hks"
    leveled = False

    def _search_replacement(self, key, lvl):
        level = self.levels[0]
        s_root, other = self._smaller_root(key, 0)
        for o in _inorder_occs(s_root):
            if not (o.active and o.w_own):
                continue
            x = o.v
            for y in o.nte:
                if _root(level.act[y]) is not s_root:
                    k = (x, y) if x < y else (y, x)
                    return self._use_replacement(k, 0)
        return OUT_SPLIT_PERMANENT

    def memory_inventory(self) -> dict[str, int]:
        l0 = self.levels[0]
        n_active = len(l0.act)
        return {
            "nodes": self.occ_count,
            "links": 3 * self.occ_count + 2 * len(l0.starts),
            "ints": 3 * self.occ_count,  # priority, active, size
            "sets": n_active,  # plain nte set per active occurrence
            "set_entries": 2 * len(self.nontree_level),
            "maps": 2,  # act_dict, tree_edge_pointer
            "map_entries": n_active + len(l0.starts),
            "bitmaps": 0,
        }


class HDT(_EulerBase):
    """Leveled forests with deterministic push-down of the smaller side."""

    name = "hdt"

    def _search_replacement(self, key, lvl):
        for i in range(lvl, -1, -1):
            level = self.levels[i]
            s_root, _ = self._smaller_root(key, i)
            self._promote_tree_edges(i, s_root)
            cands = self._collect_candidates(i, s_root)
            for cand in cands:
                x, y = cand
                in_s_x = _root(level.act[x]) is s_root
                in_s_y = _root(level.act[y]) is s_root
                if in_s_x and in_s_y:
                    self._promote_nontree(cand, i)
                else:
                    return self._use_replacement(cand, i)
        return OUT_SPLIT_PERMANENT

    def memory_inventory(self) -> dict[str, int]:
        active_total = sum(len(level.act) for level in self.levels)
        starts_total = sum(len(level.starts) for level in self.levels)
        nte_entries = sum(2 for _ in self.nontree_level)
        return {
            "nodes": self.occ_count,
            "links": 3 * self.occ_count + 2 * starts_total,
            "ints": 3 * self.occ_count,  # priority, active, size
            "sets": active_total,
            "set_entries": nte_entries,
            "maps": 2 * len(self.levels) + 2,  # act_i, pointers_i, level-of-edge maps
            "map_entries": active_total + starts_total + len(self.tree_level) + len(self.nontree_level),
            "bitmaps": 0,
        }


class HK(_EulerBase):
    """Leveled forests with weight-guided random replacement sampling."""

    name = "hk"
    SAMPLE_FACTOR = 16

    def _new_nte(self):
        return NteTreap(self.rng)

    def sample_nontree(self, tour_root: Occ) -> tuple[int, int]:
        """Draw an incident non-tree edge with probability proportional to
        how many of its endpoints lie in this tour."""
        if tour_root.weight <= 0:
            raise EmptyWeight("tour has no incident non-tree edges")
        idx = self.rng.randrange(tour_root.weight)
        o = tour_root
        while True:
            lw = o.left.weight if o.left is not None else 0
            if idx < lw:
                o = o.left
                continue
            idx -= lw
            if idx < o.w_own:
                x = o.v
                y = o.nte.kth(idx)
                return (x, y) if x < y else (y, x)
            idx -= o.w_own
            o = o.right

    def _search_replacement(self, key, lvl):
        n = max(2, len(self.levels[0].act))
        draws = self.SAMPLE_FACTOR * ceil(log2(n))
        for i in range(lvl, -1, -1):
            level = self.levels[i]
            s_root, _ = self._smaller_root(key, i)
            self._promote_tree_edges(i, s_root)
            if s_root.weight > 0:
                for _ in range(draws):
                    cand = self.sample_nontree(s_root)
                    x, y = cand
                    if _root(level.act[y]) is not s_root or _root(level.act[x]) is not s_root:
                        return self._use_replacement(cand, i)
            cands = self._collect_candidates(i, s_root)
            for cand in cands:
                x, y = cand
                if _root(level.act[x]) is s_root and _root(level.act[y]) is s_root:
                    self._promote_nontree(cand, i)
                else:
                    return self._use_replacement(cand, i)
        return OUT_SPLIT_PERMANENT

    def memory_inventory(self) -> dict[str, int]:
        active_total = sum(len(level.act) for level in self.levels)
        starts_total = sum(len(level.starts) for level in self.levels)
        rst_nodes = 2 * len(self.nontree_level)
        return {
            "nodes": self.occ_count + rst_nodes,
            "links": 3 * self.occ_count + 2 * starts_total + 2 * rst_nodes,
            "ints": 3 * self.occ_count + 2 * rst_nodes,  # prio/active/weight + rst prio/cnt
            "sets": 0,
            "set_entries": 0,
            "maps": 2 * len(self.levels) + 2,
            "map_entries": active_total + starts_total + len(self.tree_level) + len(self.nontree_level),
            "bitmaps": 0,
        }
