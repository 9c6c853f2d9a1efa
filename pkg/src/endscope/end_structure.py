"""Ends, the components ``C(X, e)``, closures and domination.

Every end of an eventually periodic graph is carried by one infinite
periodic class of some tail (see ``graph_core.periodic``). Its *region* is
that class: a tail-only vertex set whose deep part lies in ``C(X, e)`` for
every finite ``X``. Hence ``e`` lies in the closure of ``M`` exactly when
``M`` meets the region infinitely, and a vertex dominates ``e`` exactly when
it is a hub with infinitely many neighbours in the region.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

import networkx as nx

from .graph_core import Epvs, EpgPresentation, VertexId, components, core, require_valid, unfold
from .graph_core.periodic import view


class EndError(ValueError):
    pass


@dataclass(frozen=True)
class PeriodicRay:
    """``prefix`` followed by ``segment`` shifted by ``m * shift`` copies for
    ``m = 0, 1, 2, ...``."""

    prefix: tuple[VertexId, ...]
    segment: tuple[VertexId, ...]
    shift: int

    def __iter__(self) -> Iterator[VertexId]:
        yield from self.prefix
        m = 0
        while True:
            for v in self.segment:
                yield v.shifted(m * self.shift)
            m += 1

    def take(self, n: int) -> list[VertexId]:
        out = []
        for v in self:
            if len(out) == n:
                break
            out.append(v)
        return out

    def upto(self, max_copy: int) -> list[VertexId]:
        """Prefix of the ray long enough to contain every ray vertex with
        copy index ``<= max_copy``."""
        out = list(self.prefix)
        lo = min(v.copy for v in self.segment)
        m = 0
        while lo + m * self.shift <= max_copy:
            out.extend(v.shifted(m * self.shift) for v in self.segment)
            m += 1
        return out

    @property
    def root(self) -> VertexId:
        return self.prefix[0] if self.prefix else self.segment[0]


@dataclass(frozen=True)
class End:
    id: str
    tail: int
    strands: frozenset[int]
    region: Epvs
    representative: PeriodicRay
    dominators: frozenset[VertexId]

    @property
    def topological(self) -> bool:
        return not self.dominators

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "tail": self.tail,
            "strands": sorted(self.strands),
            "dominators": [v.label() for v in sorted(self.dominators)],
            "topological": self.topological,
        }


def _bfs_path(pres, start, is_target, allowed, max_copy) -> list[VertexId] | None:
    prev = {start: None}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        if x != start and is_target(x):
            path = [x]
            while prev[path[-1]] is not None:
                path.append(prev[path[-1]])
            return path[::-1]
        for y in pres.neighbors_upto(x, max_copy):
            if y not in prev and (is_target(y) or allowed(y)):
                prev[y] = x
                queue.append(y)
    return None


def find_periodic_ray(pres: EpgPresentation, region: Epvs, root: VertexId | None = None) -> PeriodicRay:
    """A periodic ray inside the (tail-only, infinite) class ``region``,
    optionally extended by a shortest path from ``root``."""
    period = region.period
    width = sum(1 for _ in region.strands) * period
    c0 = region.threshold + period * (width + 1)
    starts = [v for v in region.vertices(c0 + period - 1) if v.copy >= c0]
    segment = None
    for m in range(1, 4 * width + 4):
        delta = m * period
        for v in starts:
            target = v.shifted(delta)
            lo, hi = v.copy, v.copy + delta - 1
            path = _bfs_path(
                pres,
                v,
                lambda x, target=target: x == target,
                lambda x, lo=lo, hi=hi: not x.is_core and lo <= x.copy <= hi and x in region,
                hi + 1,
            )
            if path is not None:
                segment = tuple(path[:-1])
                break
        if segment is not None:
            break
    if segment is None:
        raise EndError("region carries no periodic ray")
    if root is None:
        return PeriodicRay((), segment, delta)
    horizon = segment[0].copy + 3 * delta
    ray = PeriodicRay((), segment, delta).upto(horizon)
    on_ray = {v: n for n, v in enumerate(ray)}
    if root in on_ray:
        n = on_ray[root]
        return _reroot(segment, delta, n, [root])
    g = unfold(pres, horizon)
    path = _bfs_path(
        pres,
        root,
        lambda x: x in on_ray,
        lambda x: x in g,
        horizon,
    )
    if path is None:
        raise EndError("root cannot reach the ray")
    return _reroot(segment, delta, on_ray[path[-1]], path)


def _reroot(segment, delta, n, path) -> PeriodicRay:
    j, p = divmod(n, len(segment))
    prefix = tuple(path) + tuple(v.shifted(j * delta) for v in segment[p + 1 :])
    return PeriodicRay(prefix, tuple(v.shifted((j + 1) * delta) for v in segment), delta)


def class_regions(pres: EpgPresentation, a: Epvs) -> list[Epvs]:
    """Regions of the ends of the induced subgraph ``G[a]``."""
    pv = view(pres, a)
    return [pv.class_region(q, c) for q, c in pv.infinite_classes()]


def _region_key(region: Epvs):
    (t, i), _ = next(iter(region.strands.items()))
    return (t, i, region.min_vertex())


@lru_cache(maxsize=256)
def _enumerate(pres: EpgPresentation) -> tuple[End, ...]:
    require_valid(pres)
    full = Epvs.full(pres)
    regions = sorted(class_regions(pres, full), key=_region_key)
    root = pres.root()
    ends = []
    for n, region in enumerate(regions):
        doms = frozenset(
            core(h) for h in sorted(pres.hubs) if not (pres.neighbors(core(h)) & region).is_finite()
        )
        ends.append(
            End(
                id=f"e{n}",
                tail=next(iter(region.strands))[0],
                strands=frozenset(i for _, i in region.strands),
                region=region,
                representative=find_periodic_ray(pres, region, root),
                dominators=doms,
            )
        )
    return tuple(ends)


def enumerate_ends(pres: EpgPresentation) -> list[End]:
    """One ``End`` per end of ``G``, sorted by (tail, least strand)."""
    return list(_enumerate(pres))


def _check_end(pres: EpgPresentation, end: End) -> None:
    if end not in _enumerate(pres):
        raise EndError(f"{end.id} is not an end of {pres.name!r}")


def component_of(pres: EpgPresentation, x: Epvs, end: End) -> Epvs:
    """``C(X, e)``: the component of ``G - X`` in which ``end`` lives."""
    if not x.is_finite():
        raise EndError("cut set must be finite")
    _check_end(pres, end)
    for comp in components(pres, Epvs.full(pres) - x):
        if not comp.is_family and not (comp.vertices & end.region).is_finite():
            return comp.vertices
    raise EndError("no component contains the end")  # pragma: no cover


def closure(pres: EpgPresentation, m: Epvs) -> list[End]:
    """Ends in the closure of ``m``."""
    return [e for e in enumerate_ends(pres) if not (m & e.region).is_finite()]


def dominators(pres: EpgPresentation, end: End) -> frozenset[VertexId]:
    _check_end(pres, end)
    return end.dominators


def closure_of_neighborhood(pres: EpgPresentation, w: Epvs) -> list[End]:
    if not w.is_finite():
        raise EndError("W must be finite")
    return closure(pres, pres.boundary(w))


def canonical_chain(pres: EpgPresentation, end: End, length: int) -> list[tuple[Epvs, Epvs]]:
    """Nested cuts ``(X_k, C(X_k, e))`` moving out along ``end``.

    ``X_k`` is the neighbourhood of the deep side of the region cut after
    copy ``c_k``; for a topological end the cuts start beyond the last
    hub contact so that they are pairwise disjoint.
    """
    _check_end(pres, end)
    start = end.region.threshold
    for h in pres.hubs:
        touch = pres.neighbors(core(h)) & end.region
        if touch.is_finite():
            start = max(start, touch.max_copy() + 1)
    full = Epvs.full(pres)
    chain = []
    for k in range(length):
        cut = Epvs.of(end.region.vertices(start + k))
        comp = next(
            c.vertices
            for c in components(pres, full - cut)
            if not c.is_family and not (c.vertices & end.region).is_finite()
        )
        chain.append((pres.boundary(comp), comp))
    return chain


def stabilized_end_count(pres: EpgPresentation, cut: int, depth: int) -> int:
    """Unfolding oracle: components of ``unfold(depth)`` minus the cores and
    copies ``<= cut`` that contain a boundary vertex of the unfolding."""
    g = unfold(pres, depth)
    keep = [v for v in g if not v.is_core and v.copy > cut]
    h = g.subgraph(keep)
    return sum(1 for cc in nx.connected_components(h) if any(g.nodes[v]["boundary"] for v in cc))


def ends_living_in(pres: EpgPresentation, comp: Epvs, ends: Sequence[End] | None = None) -> list[End]:
    ends = enumerate_ends(pres) if ends is None else ends
    return [e for e in ends if not (comp & e.region).is_finite()]
