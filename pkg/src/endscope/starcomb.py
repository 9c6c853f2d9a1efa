"""Constructive star-comb certificates and cofinal trees.

Certificates are rules, not infinite objects: a base list of paths and a
copy shift, so that path ``m`` is ``base[m % len(base)]`` moved by
``(m // len(base)) * step`` copies. ``check_certificate`` materialises the
first ``n`` paths and verifies them against the presentation alone.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Union

from .end_structure import PeriodicRay, _bfs_path, class_regions, find_periodic_ray
from .envelope import components_of_complement, envelope
from .graph_core import Epvs, EpgPresentation, Upis, VertexId, core, require_valid
from .graph_core.periodic import view
from .graph_core.upis import lcm


class StarCombError(ValueError):
    pass


@dataclass(frozen=True)
class PathFamily:
    base: tuple[tuple[VertexId, ...], ...]
    step: int

    def path(self, m: int) -> tuple[VertexId, ...]:
        q, r = divmod(m, len(self.base))
        return tuple(v.shifted(q * self.step) for v in self.base[r])

    def paths(self, n: int) -> list[tuple[VertexId, ...]]:
        return [self.path(m) for m in range(n)]

    def endpoints(self) -> Epvs:
        return Epvs.of(p[-1] for p in self.base).union_of_translates(self.step)


@dataclass(frozen=True)
class Star:
    center: VertexId
    leaves: Epvs
    paths: PathFamily
    external: bool = False
    kind: str = field(default="star", init=False)


@dataclass(frozen=True)
class Comb:
    spine: PeriodicRay
    teeth: Epvs
    paths: PathFamily
    external: bool = False
    kind: str = field(default="comb", init=False)


Certificate = Union[Star, Comb]


def _direct_star(pres, interior: Epvs, targets: Epvs, external: bool) -> Star | None:
    for h in sorted(pres.hubs):
        if h not in interior.cores:
            continue
        center = core(h)
        leaves = (pres.neighbors(center) & targets) - Epvs([h])
        if leaves.is_finite():
            continue
        start, period = leaves.threshold, leaves.period
        base = tuple((center, v) for v in sorted(leaves.vertices(start + period - 1)) if not v.is_core and v.copy >= start)
        fam = PathFamily(base, period)
        return Star(center, fam.endpoints(), fam, external)
    return None


def _contacts(pres, targets: Epvs, external: bool) -> Epvs:
    """Vertices a path may end its interior on before reaching a target."""
    tails = _tail_part(targets)
    return pres.neighbors_of_set(tails) if external else tails


def _tail_part(s: Epvs) -> Epvs:
    return Epvs((), s.strands)


def _last_hop(pres, x: VertexId, targets: Epvs) -> VertexId:
    return sorted((pres.neighbors(x) & _tail_part(targets)).finite_vertices())[0]


def _subdivided_star(pres, interior: Epvs, targets: Epvs, external: bool) -> Star | None:
    pv = view(pres, interior)
    contact = _contacts(pres, targets, external)
    for h in sorted(pres.hubs):
        if h not in interior.cores:
            continue
        center = core(h)
        hub_nbrs = pres.neighbors(center)
        for q, qc in enumerate(pv.qcomps):
            if qc.g:
                continue
            offset = pv.J + max(0, -(-(max(targets.threshold, interior.threshold) - pv.K) // pv.L)) + 1
            trans = pv.translate(q, offset)
            if (trans & hub_nbrs).is_empty() or (trans & contact).is_empty():
                continue
            entries = sorted((trans & hub_nbrs).finite_vertices())
            goal = sorted((trans & contact).finite_vertices())
            path = _bfs_within(pres, entries, set(goal), trans)
            if external:
                path = path + [_last_hop(pres, path[-1], targets)]
            fam = PathFamily(((center, *path),), pv.L)
            return Star(center, fam.endpoints(), fam, external)
    return None


def _bfs_within(pres, sources: list[VertexId], goal: set[VertexId], allowed: Epvs) -> list[VertexId]:
    prev = {s: None for s in sources}
    queue = deque(sources)
    while queue:
        x = queue.popleft()
        if x in goal:
            path = [x]
            while prev[path[-1]] is not None:
                path.append(prev[path[-1]])
            return path[::-1]
        for y in pres.local_neighbors(x):
            if y not in prev and y in allowed:
                prev[y] = x
                queue.append(y)
    raise StarCombError("no path inside the translate")  # pragma: no cover


def _comb(pres, interior: Epvs, targets: Epvs, external: bool) -> Comb | None:
    contact = _contacts(pres, targets, external)
    for region in sorted(class_regions(pres, interior), key=lambda r: r.min_vertex()):
        teeth_side = contact & region
        if teeth_side.is_finite():
            continue
        spine = find_periodic_ray(pres, region)
        delta = spine.shift
        unit = lcm(delta, region.period, teeth_side.period, targets.period, interior.period)
        lo = max(
            spine.segment[0].copy,
            region.threshold,
            teeth_side.threshold,
            targets.threshold,
            interior.threshold,
        ) + unit
        spine_pts = spine.upto(lo + 8 * unit)
        on_spine = set(spine_pts)
        candidates = sorted(v for v in teeth_side.vertices(lo + unit - 1) if v.copy >= lo)
        tooth = candidates[0]
        path = _bfs_path(
            pres,
            tooth,
            lambda x: x in on_spine,
            lambda x: not x.is_core and x in region and abs(x.copy - tooth.copy) <= 4 * unit,
            lo + 8 * unit,
        ) if tooth not in on_spine else [tooth]
        if path is None:
            raise StarCombError("tooth cannot reach the spine")  # pragma: no cover
        path = path[::-1]
        if external:
            path.append(_last_hop(pres, tooth, targets))
        copies = [v.copy for v in path if not v.is_core]
        span = max(copies) - min(copies) + 1
        step = unit * (-(-span // unit) + 1)
        fam = PathFamily((tuple(path),), step)
        return Comb(spine, fam.endpoints(), fam, external)
    return None


def _find(pres, interior: Epvs, targets: Epvs, external: bool) -> Certificate:
    for finder in (_direct_star, _subdivided_star, _comb):
        cert = finder(pres, interior, targets, external)
        if cert is not None:
            return cert
    raise StarCombError("no star or comb found")  # pragma: no cover


def star_or_comb(pres: EpgPresentation, u: Epvs) -> Certificate:
    """A star or comb attached to the infinite set ``u``."""
    require_valid(pres)
    if u.is_finite():
        raise StarCombError("star-comb needs an infinite set")
    return _find(pres, Epvs.full(pres), u, external=False)


def external_star_or_comb(pres: EpgPresentation, w: Epvs, c: Epvs) -> Certificate:
    """An external star or comb attached to ``w`` with interior inside the
    component ``c`` of ``G - w``."""
    comps = components_of_complement(pres, w)
    if not any(not comp.is_family and comp.vertices == c for comp in comps):
        raise StarCombError("C is not a component of G - W")
    nbhd = pres.boundary(c)
    if nbhd.is_finite():
        raise StarCombError("N(C) is finite; nothing to attach")
    return _find(pres, c, nbhd, external=True)


@dataclass
class CertificateReport:
    ok: bool
    problems: list[str]


def check_certificate(
    pres: EpgPresentation,
    cert: Certificate,
    n: int,
    attached_to: Epvs | None = None,
    interior: Epvs | None = None,
) -> CertificateReport:
    """Materialise ``n`` paths and verify adjacency, disjointness, the
    attachment set and (for external certificates) the interior."""
    problems: list[str] = []
    paths = cert.paths.paths(n)

    def walk_ok(seq, what):
        if len(set(seq)) != len(seq):
            problems.append(f"{what} repeats a vertex")
        for a, b in zip(seq, seq[1:]):
            if not pres.adjacent(a, b):
                problems.append(f"{what}: {a!r}-{b!r} is not an edge")

    ends = [p[-1] for p in paths]
    if len(set(ends)) != len(ends):
        problems.append("attachment vertices repeat")
    for m, p in enumerate(paths):
        walk_ok(p, f"path {m}")
        if p[-1] not in (cert.leaves if isinstance(cert, Star) else cert.teeth):
            problems.append(f"path {m} ends outside the declared attachment set")
        if attached_to is not None and p[-1] not in attached_to:
            problems.append(f"path {m} ends at {p[-1]!r}, not in the attachment host")
        if interior is not None and any(v not in interior for v in p[:-1]):
            problems.append(f"path {m} leaves the interior")
        if interior is not None and cert.external and p[-1] in interior:
            problems.append(f"path {m} attaches inside the interior")
    if isinstance(cert, Star):
        for m, p in enumerate(paths):
            if p[0] != cert.center:
                problems.append(f"path {m} does not start at the centre")
        seen: dict[VertexId, int] = {}
        for m, p in enumerate(paths):
            for v in p[1:]:
                if v in seen:
                    problems.append(f"paths {seen[v]} and {m} meet at {v!r}")
                seen[v] = m
    else:
        top = max(v.copy for p in paths for v in p if not v.is_core) + 2 * cert.spine.shift
        spine = cert.spine.upto(top)
        walk_ok(spine, "spine")
        on_spine = set(spine)
        if interior is not None and any(v not in interior for v in spine):
            problems.append("spine leaves the interior")
        seen = {}
        for m, p in enumerate(paths):
            if p[0] not in on_spine:
                problems.append(f"path {m} does not start on the spine")
            if any(v in on_spine for v in p[1:]):
                problems.append(f"path {m} meets the spine twice")
            for v in p:
                if v in seen:
                    problems.append(f"paths {seen[v]} and {m} meet at {v!r}")
                seen[v] = m
    return CertificateReport(not problems, problems)


def certificate_json(cert: Certificate, n: int) -> dict:
    out = {"kind": cert.kind, "external": cert.external}
    if isinstance(cert, Star):
        out["center"] = cert.center.label()
    else:
        out["spine"] = {
            "prefix": [v.label() for v in cert.spine.prefix],
            "segment": [v.label() for v in cert.spine.segment],
            "shift": cert.spine.shift,
        }
    out["first_n_paths"] = [[v.label() for v in p] for p in cert.paths.paths(n)]
    return out


# cofinal trees -------------------------------------------------------------


@dataclass(frozen=True)
class TreePresentation:
    """Rooted tree ``T`` in ``G``: its vertex set (eventually periodic) and
    the parent map materialised up to ``depth`` copies."""

    root: VertexId
    vertices: Epvs
    parent: dict
    depth: int

    def edges(self, max_copy: int | None = None) -> list[tuple[VertexId, VertexId]]:
        lim = self.depth if max_copy is None else max_copy
        if lim > self.depth:
            raise ValueError(f"tree materialised only up to copy {self.depth}")
        return sorted(
            (p, v)
            for v, p in self.parent.items()
            if p is not None and (v.is_core or v.copy <= lim) and (p.is_core or p.copy <= lim)
        )


def _bfs_tree(pres, s: Epvs, root: VertexId, horizon: int) -> dict:
    parent = {root: None}
    level = [root]
    while level:
        nxt = []
        for x in level:
            for y in pres.neighbors_upto(x, horizon):
                if y in s and y not in parent:
                    parent[y] = x
                    nxt.append(y)
        level = sorted(nxt)
    return parent


def _eventual_pattern(bits: list[bool], unit: int) -> tuple[int, int]:
    """Smallest (threshold, period) with period a multiple of ``unit`` that
    fits ``bits`` with at least three repetitions to spare."""
    n = len(bits)
    for period in range(unit, n // 4 + 1, unit):
        for thr in range(0, n - 3 * period):
            if all(bits[k] == bits[k - period] for k in range(thr + period, n)):
                return thr, period
    raise StarCombError("tree vertex set did not stabilise")


def _pruned_tree(pres, s, u, root, unit, horizon, margin):
    parent = _bfs_tree(pres, s, root, horizon)
    children: dict = {}
    for v, p in parent.items():
        if p is not None:
            children.setdefault(p, []).append(v)
    keep: dict[VertexId, bool] = {}
    stack = [(root, False)]
    while stack:
        v, done = stack.pop()
        if done:
            keep[v] = v in u or any(keep[c] for c in children.get(v, ()))
            continue
        stack.append((v, True))
        stack.extend((c, False) for c in children.get(v, ()))
    kept = [v for v, k in keep.items() if k]
    limit = horizon - 2 * margin
    strands = {}
    for key in s.strands:
        t, i = key
        bits = [keep.get(VertexId(t, k, i), False) for k in range(limit)]
        if not any(bits):
            continue
        thr, per = _eventual_pattern(bits, unit)
        strands[key] = Upis.from_predicate(thr, per, lambda k, bits=bits: bits[k])
    vertices = Epvs({v.index for v in kept if v.is_core}, strands)
    return vertices, parent, kept


def cofinal_tree(pres: EpgPresentation, u: Epvs, depth: int = 60) -> TreePresentation:
    """A rooted tree containing ``u`` cofinally.

    It is the breadth-first tree (least-label parents) of a connected
    envelope of ``u`` plus the root, with every ``u``-free limb pruned.
    """
    require_valid(pres)
    if u.is_empty():
        raise StarCombError("cofinal tree needs a non-empty set")
    root = pres.root()
    s = envelope(pres, u | Epvs.of([root]))
    unit = lcm(s.period, u.period, pres.hub_period())
    margin = 4 * unit + 8
    horizon = max(depth, s.threshold, u.threshold) + 6 * margin
    vertices, parent, kept = _pruned_tree(pres, s, u, root, unit, horizon, margin)
    again, _, _ = _pruned_tree(pres, s, u, root, unit, 2 * horizon, margin)
    if again != vertices:
        raise StarCombError("tree vertex set did not stabilise")
    if not u.issubset(vertices) or not vertices.issubset(s):
        raise StarCombError("pruned tree lost part of U")  # pragma: no cover
    tree_parent: dict = {}
    for v in kept:
        if v.is_core or v.copy <= depth:
            while v is not None and v not in tree_parent:
                tree_parent[v] = parent[v]
                v = parent[v]
    return TreePresentation(root, vertices, tree_parent, depth)
