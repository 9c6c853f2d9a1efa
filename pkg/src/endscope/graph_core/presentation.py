"""Finite presentations of eventually periodic infinite graphs."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .epvs import Epvs, VertexId, core, tv
from .upis import Upis, lcm


class PresentationError(ValueError):
    pass


@dataclass(frozen=True)
class TailSpec:
    """One-way infinite chain of copies of a ``period``-vertex block.

    ``intra`` joins strands inside a copy, ``inter`` joins strand ``i`` of
    copy ``k`` to strand ``j`` of copy ``k + 1``, ``attach`` joins a core to
    copy 0 and a hub rule ``(h, i, s, d)`` joins core ``h`` to strand ``i``
    of copies ``s, s + d, s + 2d, ...``.
    """

    period: int
    intra: tuple[tuple[int, int], ...] = ()
    inter: tuple[tuple[int, int], ...] = ()
    attach: tuple[tuple[int, int], ...] = ()
    hubs: tuple[tuple[int, int, int, int], ...] = ()


@dataclass(frozen=True)
class EpgPresentation:
    name: str
    core_count: int
    core_edges: tuple[tuple[int, int], ...] = ()
    tails: tuple[TailSpec, ...] = ()

    @property
    def hubs(self) -> frozenset[int]:
        return frozenset(h for spec in self.tails for (h, _, _, _) in spec.hubs)

    def is_hub(self, v: VertexId) -> bool:
        return v.is_core and v.index in self.hubs

    def root(self) -> VertexId:
        if self.core_count:
            return core(0)
        if self.tails:
            return tv(0, 0, 0)
        raise PresentationError("empty graph has no root")

    def owns(self, s: Epvs) -> bool:
        if any(c >= self.core_count or c < 0 for c in s.cores):
            return False
        return all(0 <= t < len(self.tails) and 0 <= i < self.tails[t].period for t, i in s.strands)

    def is_vertex(self, v: VertexId) -> bool:
        if v.is_core:
            return 0 <= v.index < self.core_count
        return 0 <= v.tail < len(self.tails) and v.copy >= 0 and 0 <= v.index < self.tails[v.tail].period

    def hub_offset(self) -> int:
        """Largest hub start offset; hub adjacency is periodic beyond it."""
        return max((s for spec in self.tails for (_, _, s, _) in spec.hubs), default=0)

    def hub_period(self) -> int:
        return lcm(*(d for spec in self.tails for (_, _, _, d) in spec.hubs))

    # adjacency -------------------------------------------------------

    def local_neighbors(self, v: VertexId) -> list[VertexId]:
        """Neighbours of a finite-degree vertex, sorted."""
        if not self.is_vertex(v):
            raise PresentationError(f"invalid vertex {v!r}")
        if self.is_hub(v):
            raise PresentationError(f"hub {v!r} has infinitely many neighbours")
        out: set[VertexId] = set()
        if v.is_core:
            c = v.index
            for a, b in self.core_edges:
                if a == c:
                    out.add(core(b))
                elif b == c:
                    out.add(core(a))
            for t, spec in enumerate(self.tails):
                for cc, i in spec.attach:
                    if cc == c:
                        out.add(tv(t, 0, i))
            return sorted(out)
        t, k, i = v
        spec = self.tails[t]
        for a, b in spec.intra:
            if a == i:
                out.add(tv(t, k, b))
            elif b == i:
                out.add(tv(t, k, a))
        for a, b in spec.inter:
            if a == i:
                out.add(tv(t, k + 1, b))
            if b == i and k > 0:
                out.add(tv(t, k - 1, a))
        if k == 0:
            for c, a in spec.attach:
                if a == i:
                    out.add(core(c))
        for h, a, s, d in spec.hubs:
            if a == i and k >= s and (k - s) % d == 0:
                out.add(core(h))
        return sorted(out)

    def hub_neighbors(self, h: int, max_copy: int) -> list[VertexId]:
        """Neighbours of core ``h`` with copy index ``<= max_copy``."""
        return sorted(self.neighbors_of_set(Epvs([h])).vertices(max_copy))

    def neighbors_upto(self, v: VertexId, max_copy: int) -> list[VertexId]:
        if self.is_hub(v):
            return self.hub_neighbors(v.index, max_copy)
        return [u for u in self.local_neighbors(v) if u.is_core or u.copy <= max_copy]

    def adjacent(self, u: VertexId, v: VertexId) -> bool:
        if self.is_hub(u) and self.is_hub(v):
            return (u.index, v.index) in self.core_edges or (v.index, u.index) in self.core_edges
        if self.is_hub(u):
            u, v = v, u
        return v in self.local_neighbors(u)

    def neighbors_of_set(self, a: Epvs) -> Epvs:
        """Every vertex adjacent to some member of ``a`` (members included
        only when adjacent to another member)."""
        cores: set[int] = set()
        strands: dict[tuple[int, int], Upis] = {}

        def add(t: int, i: int, u: Upis) -> None:
            strands[(t, i)] = strands.get((t, i), Upis.empty()) | u

        for x, y in self.core_edges:
            if x in a.cores:
                cores.add(y)
            if y in a.cores:
                cores.add(x)
        for t, spec in enumerate(self.tails):
            for x, y in spec.intra:
                add(t, y, a.strand(t, x))
                add(t, x, a.strand(t, y))
            for x, y in spec.inter:
                add(t, y, a.strand(t, x).shift(1))
                add(t, x, a.strand(t, y).shift(-1))
            for c, i in spec.attach:
                if 0 in a.strand(t, i):
                    cores.add(c)
                if c in a.cores:
                    add(t, i, Upis.finite([0]))
            for h, i, s, d in spec.hubs:
                prog = Upis.progression(s, d)
                if not (a.strand(t, i) & prog).is_empty():
                    cores.add(h)
                if h in a.cores:
                    add(t, i, prog)
        return Epvs(cores, strands)

    def neighbors(self, v: VertexId) -> Epvs:
        if not self.is_vertex(v):
            raise PresentationError(f"invalid vertex {v!r}")
        return self.neighbors_of_set(Epvs.of([v]))

    def boundary(self, s: Epvs) -> Epvs:
        """``N(s)``: vertices outside ``s`` with a neighbour in ``s``."""
        return self.neighbors_of_set(s) - s


@dataclass
class ValidationReport:
    problems: list[str] = field(default_factory=list)
    connected: bool | None = None

    @property
    def valid(self) -> bool:
        return not self.problems

    @property
    def ok(self) -> bool:
        return self.valid and bool(self.connected)


def _edge_problems(pres: EpgPresentation) -> list[str]:
    problems: list[str] = []
    n = pres.core_count
    if n < 0:
        problems.append("core count must be non-negative")
    seen: set[frozenset] = set()
    for a, b in pres.core_edges:
        if not (0 <= a < n and 0 <= b < n):
            problems.append(f"core edge ({a},{b}) out of range")
        elif a == b:
            problems.append(f"core edge ({a},{b}) is a self-loop")
        elif frozenset((a, b)) in seen:
            problems.append(f"duplicate core edge ({a},{b})")
        seen.add(frozenset((a, b)))
    for t, spec in enumerate(pres.tails):
        p = spec.period
        if p < 1:
            problems.append(f"tail {t}: period must be >= 1")
            continue
        rng = range(p)
        intra_seen: set[frozenset] = set()
        for i, j in spec.intra:
            if i not in rng or j not in rng:
                problems.append(f"tail {t}: intra ({i},{j}) out of range")
            elif i == j:
                problems.append(f"tail {t}: intra ({i},{j}) is a self-loop")
            elif frozenset((i, j)) in intra_seen:
                problems.append(f"tail {t}: duplicate intra ({i},{j})")
            intra_seen.add(frozenset((i, j)))
        if len(set(spec.inter)) != len(spec.inter):
            problems.append(f"tail {t}: duplicate inter edge")
        for i, j in spec.inter:
            if i not in rng or j not in rng:
                problems.append(f"tail {t}: inter ({i},{j}) out of range")
        if len(set(spec.attach)) != len(spec.attach):
            problems.append(f"tail {t}: duplicate attach edge")
        for c, i in spec.attach:
            if not 0 <= c < n or i not in rng:
                problems.append(f"tail {t}: attach ({c},{i}) out of range")
        for h, i, s, d in spec.hubs:
            if d < 1:
                problems.append(f"tail {t}: hub ({h},{i},{s},{d}) stride must be >= 1")
            if not 0 <= h < n or i not in rng or s < 0:
                problems.append(f"tail {t}: hub ({h},{i},{s},{d}) out of range")
            if d >= 1 and (h, i) in spec.attach and s == 0:
                problems.append(f"tail {t}: hub ({h},{i},{s},{d}) duplicates attach edge")
        for r1, r2 in combinations(spec.hubs, 2):
            if r1[:2] == r2[:2] and r1[3] >= 1 and r2[3] >= 1 and r1[2] >= 0 and r2[2] >= 0:
                overlap = Upis.progression(r1[2], r1[3]) & Upis.progression(r2[2], r2[3])
                if not overlap.is_empty():
                    problems.append(f"tail {t}: hub rules {r1} and {r2} overlap")
    return problems


def validate(pres: EpgPresentation) -> ValidationReport:
    """Check index ranges, duplicate edges and (if syntax is fine) connectivity."""
    report = ValidationReport(_edge_problems(pres))
    if report.valid:
        from .periodic import components

        if pres.core_count == 0 and not pres.tails:
            report.connected = True
        else:
            comps = components(pres, Epvs.full(pres))
            report.connected = len(comps) == 1 and comps[0].shift is None
    return report


def require_valid(pres: EpgPresentation, connected: bool = True) -> None:
    report = validate(pres)
    if not report.valid:
        raise PresentationError("; ".join(report.problems))
    if connected and not report.connected:
        raise PresentationError(f"presentation {pres.name!r} is not connected")
