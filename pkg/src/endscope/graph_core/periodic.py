"""Exact component structure of induced subgraphs ``G[A]``.

Beyond copy ``K`` both ``A`` and the hub adjacency repeat every ``L``
copies, so each tail past ``K`` is a one-way infinite chain of identical
blocks. The block template (the vertices of one block plus the edges to the
next block, tagged with a +1 voltage) determines everything: a template
component whose cycles have voltage gcd ``g > 0`` lifts to ``g`` infinite
periodic pieces, and one with ``g == 0`` lifts to disjoint finite
translates, one per block. Everything in the first ``J`` blocks is handled
vertex by vertex; deeper material is represented by one node per infinite
class and one node per translate family.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterator

from .epvs import Epvs, VertexId, core, tv
from .presentation import EpgPresentation
from .upis import Upis, lcm


@dataclass(frozen=True)
class Component:
    """A connected component, or a periodic family of pairwise isomorphic
    finite components ``base, base + shift, base + 2*shift, ...``.

    ``vertices`` is always the union of all members.
    """

    vertices: Epvs
    base: Epvs
    shift: int | None = None

    @property
    def is_family(self) -> bool:
        return self.shift is not None

    def members(self, max_copy: int) -> Iterator[Epvs]:
        if self.shift is None:
            yield self.vertices
            return
        lo = self.base.min_vertex().copy
        m = 0
        while lo + m * self.shift <= max_copy:
            yield self.base.shift(m * self.shift)
            m += 1

    def member_containing(self, v: VertexId) -> Epvs | None:
        if v not in self.vertices:
            return None
        if self.shift is None:
            return self.vertices
        for member in self.members(v.copy):
            if v in member:
                return member
        return None


@dataclass
class _QComp:
    tail: int
    verts: list[tuple[int, int]]
    pot: dict[tuple[int, int], int]
    g: int

    @property
    def width(self) -> int:
        return max(self.pot.values()) + 1


class PeriodicView:
    """Block decomposition of ``G[A]``; see the module docstring."""

    def __init__(self, pres: EpgPresentation, a: Epvs):
        self.pres = pres
        self.a = a
        self.K = max(a.threshold, pres.hub_offset())
        self.L = lcm(a.period, pres.hub_period())
        self.qcomps: list[_QComp] = []
        self.qindex: dict[tuple[int, int, int], int] = {}
        width = 0
        for t, spec in enumerate(pres.tails):
            verts = [
                (r, i)
                for r in range(self.L)
                for i in range(spec.period)
                if tv(t, self.K + r, i) in a
            ]
            width = max(width, len(verts))
            self._template_components(t, spec, set(verts))
        self.J = width + 1
        self.deep_start = self.K + self.J * self.L

    def _template_components(self, t: int, spec, verts: set[tuple[int, int]]) -> None:
        adj: dict[tuple[int, int], list[tuple[tuple[int, int], int]]] = {v: [] for v in verts}

        def link(u, v, vol):
            if u in verts and v in verts:
                adj[u].append((v, vol))
                adj[v].append((u, -vol))

        for r in range(self.L):
            for i, j in spec.intra:
                link((r, i), (r, j), 0)
            for i, j in spec.inter:
                if r + 1 < self.L:
                    link((r, i), (r + 1, j), 0)
                else:
                    link((r, i), (0, j), 1)
        seen: set = set()
        for start in sorted(verts):
            if start in seen:
                continue
            pot = {start: 0}
            g = 0
            queue = deque([start])
            seen.add(start)
            while queue:
                u = queue.popleft()
                for v, vol in adj[u]:
                    if v in pot:
                        g = gcd(g, abs(pot[u] + vol - pot[v]))
                    else:
                        pot[v] = pot[u] + vol
                        seen.add(v)
                        queue.append(v)
            low = min(pot.values())
            pot = {v: p - low for v, p in pot.items()}
            idx = len(self.qcomps)
            self.qcomps.append(_QComp(t, sorted(pot), pot, g))
            for r, i in pot:
                self.qindex[(t, r, i)] = idx

    # coordinates -------------------------------------------------------

    def locate(self, v: VertexId) -> tuple[int, int, int]:
        """(template component, block, position) of a periodic-region vertex."""
        off = v.copy - self.K
        r, b = off % self.L, off // self.L
        return self.qindex[(v.tail, r, v.index)], b, r

    def lift(self, t: int, r: int, i: int, b: int) -> VertexId:
        return tv(t, self.K + b * self.L + r, i)

    def is_explicit(self, v: VertexId) -> bool:
        if v.is_core or v.copy < self.K:
            return True
        q, b, r = self.locate(v)
        if b < self.J:
            return True
        qc = self.qcomps[q]
        return qc.g == 0 and b - qc.pot[(r, v.index)] < self.J

    def explicit_vertices(self) -> list[VertexId]:
        out = list(self.a.vertices(self.deep_start - 1))
        for qc in self.qcomps:
            if qc.g:
                continue
            for o in range(self.J):
                for (r, i), p in qc.pot.items():
                    if o + p >= self.J:
                        out.append(self.lift(qc.tail, r, i, o + p))
        return out

    def _class_key(self, v: VertexId):
        q, b, r = self.locate(v)
        qc = self.qcomps[q]
        return ("class", q, (b - qc.pot[(r, v.index)]) % qc.g)

    # sets ---------------------------------------------------------------

    def class_region(self, q: int, c: int, from_block: int = 0) -> Epvs:
        qc = self.qcomps[q]
        members = set(qc.verts)
        strands = {}
        for i in {i for _, i in qc.verts}:
            def pred(k, i=i):
                if k < self.K:
                    return False
                off = k - self.K
                r, b = off % self.L, off // self.L
                return b >= from_block and (r, i) in members and (b - qc.pot[(r, i)]) % qc.g == c

            strands[(qc.tail, i)] = Upis.from_predicate(self.K + from_block * self.L, qc.g * self.L, pred)
        return Epvs((), strands)

    def family_region(self, q: int, first_offset: int) -> Epvs:
        """All translates of a finite template component with offset >= ``first_offset``."""
        return self.translate(q, first_offset).union_of_translates(self.L)

    def translate(self, q: int, offset: int) -> Epvs:
        qc = self.qcomps[q]
        return Epvs.of(self.lift(qc.tail, r, i, offset + p) for (r, i), p in qc.pot.items())

    def infinite_classes(self) -> list[tuple[int, int]]:
        return [(q, c) for q, qc in enumerate(self.qcomps) for c in range(qc.g)]

    # components -----------------------------------------------------------

    def components(self) -> list[Component]:
        parent: dict = {}

        def find(x):
            parent.setdefault(x, x)
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[rx] = ry

        pres, a = self.pres, self.a
        explicit = self.explicit_vertices()
        for x in explicit:
            find(x)
            if pres.is_hub(x):
                for u, w in pres.core_edges:
                    if x.index in (u, w):
                        other = core(w if u == x.index else u)
                        if other in a:
                            union(x, other)
                for t, spec in enumerate(pres.tails):
                    for h, i, s, d in spec.hubs:
                        if h != x.index:
                            continue
                        for q, qc in enumerate(self.qcomps):
                            if qc.tail != t:
                                continue
                            if any(ii == i and (self.K + r - s) % d == 0 for r, ii in qc.verts):
                                if qc.g:
                                    for c in range(qc.g):
                                        union(x, ("class", q, c))
                                else:
                                    union(x, ("family", q))
                continue
            for y in pres.local_neighbors(x) if not pres.is_hub(x) else ():
                if y not in a:
                    continue
                if self.is_explicit(y):
                    union(x, y)
                else:
                    union(x, self._class_key(y))
        for q, c in self.infinite_classes():
            find(("class", q, c))
        for q, qc in enumerate(self.qcomps):
            if qc.g == 0:
                find(("family", q))

        groups: dict = {}
        for x in list(parent):
            groups.setdefault(find(x), []).append(x)

        out: list[Component] = []
        for members in groups.values():
            verts = [m for m in members if isinstance(m, VertexId)]
            keys = [m for m in members if not isinstance(m, VertexId)]
            if not verts and len(keys) == 1 and keys[0][0] == "family":
                q = keys[0][1]
                base = self.translate(q, self.J)
                out.append(Component(self.family_region(q, self.J), base, self.L))
                continue
            s = Epvs.of(verts)
            for key in keys:
                if key[0] == "class":
                    s = s | self.class_region(key[1], key[2], self.J)
                else:
                    s = s | self.family_region(key[1], self.J)
            out.append(Component(s, s))
        return _absorb_translates(out)


def _absorb_translates(comps: list[Component]) -> list[Component]:
    """Fold single finite components that are earlier translates of a
    family's base into that family."""
    singles = {c.vertices: c for c in comps if not c.is_family and c.vertices.is_finite()}
    out = [c for c in comps if c.is_family or not c.vertices.is_finite()]
    for idx, comp in enumerate(out):
        if not comp.is_family:
            continue
        base, union = comp.base, comp.vertices
        while base.min_vertex().copy >= comp.shift and base.shift(-comp.shift) in singles:
            base = base.shift(-comp.shift)
            del singles[base]
            union = union | base
        out[idx] = Component(union, base, comp.shift)
    out.extend(singles.values())
    out.sort(key=lambda comp: comp.vertices.min_vertex())
    return out


@lru_cache(maxsize=4096)
def view(pres: EpgPresentation, a: Epvs) -> PeriodicView:
    return PeriodicView(pres, a)


@lru_cache(maxsize=4096)
def _components(pres: EpgPresentation, a: Epvs) -> tuple[Component, ...]:
    return tuple(view(pres, a).components())


def components(pres: EpgPresentation, a: Epvs) -> list[Component]:
    """Connected components of the induced subgraph ``G[a]``, sorted by
    least vertex; periodic families of finite components appear once."""
    return list(_components(pres, a))


def is_connected(pres: EpgPresentation, a: Epvs) -> bool:
    comps = components(pres, a)
    return len(comps) == 1 and not comps[0].is_family
