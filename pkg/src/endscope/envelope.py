"""Adhesion sets and connected envelopes.

An envelope of ``U`` is a superset of finite adhesion with the same ends in
its closure. ``envelope`` builds a connected one by a terminating fixpoint:

1. add the whole region of every end already in the closure of ``U``;
2. while some complement component has infinite adhesion, add the hubs it
   contains (such a component can contain no ray towards an end outside
   the closure, so its infinite neighbourhood hangs off a hub);
3. swallow periodic families of finite pieces by adding the template
   translates they sit in, then join the finitely many remaining pieces
   by shortest paths.

Every step adds either finitely many vertices, a region already in the
closure, or a set meeting no end region infinitely, so the closure never
changes. The result is checked against all four postconditions before it
is returned.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .end_structure import class_regions
from .graph_core import Component, Epvs, EpgPresentation, VertexId, components, require_valid
from .graph_core.periodic import is_connected, view


class EnvelopeError(RuntimeError):
    pass


@dataclass
class AdhesionReport:
    finite_adhesion: bool
    witness: tuple[Epvs, Epvs] | None = None
    component_families: list[tuple[str, int | None]] = field(default_factory=list)


@dataclass
class EnvelopeCheck:
    superset: bool
    connected: bool
    finite_adhesion: bool
    closure_equal: bool

    @property
    def ok(self) -> bool:
        return self.superset and self.connected and self.finite_adhesion and self.closure_equal


def _ambient(pres: EpgPresentation, ambient: Epvs | None) -> Epvs:
    return Epvs.full(pres) if ambient is None else ambient


def components_of_complement(pres: EpgPresentation, s: Epvs, ambient: Epvs | None = None) -> list[Component]:
    """Components of ``G[ambient] - s``; periodic families appear once."""
    return components(pres, _ambient(pres, ambient) - s)


def adhesion_set(pres: EpgPresentation, comp: Component, ambient: Epvs | None = None) -> Epvs:
    """``N(C)`` inside the ambient graph (for a family: of its first member)."""
    return pres.boundary(comp.base) & _ambient(pres, ambient)


def finite_adhesion(pres: EpgPresentation, s: Epvs, ambient: Epvs | None = None) -> AdhesionReport:
    report = AdhesionReport(True)
    for comp in components_of_complement(pres, s, ambient):
        nbhd = adhesion_set(pres, comp, ambient)
        finite = nbhd.is_finite()
        desc = comp.base.to_text() + (f" +{comp.shift}k" if comp.is_family else "")
        report.component_families.append((desc, len(nbhd) if finite else None))
        if not finite and report.finite_adhesion:
            report.finite_adhesion = False
            report.witness = (comp.vertices, nbhd)
    return report


def closure_in(pres: EpgPresentation, ambient: Epvs, m: Epvs) -> frozenset[Epvs]:
    """Regions of the ends of ``G[ambient]`` that ``m`` meets infinitely."""
    return frozenset(r for r in class_regions(pres, ambient) if not (m & r).is_finite())


def check_envelope(pres: EpgPresentation, u: Epvs, ustar: Epvs, ambient: Epvs | None = None) -> EnvelopeCheck:
    amb = _ambient(pres, ambient)
    return EnvelopeCheck(
        superset=u.issubset(ustar) and ustar.issubset(amb),
        connected=is_connected(pres, ustar),
        finite_adhesion=finite_adhesion(pres, ustar, amb).finite_adhesion,
        closure_equal=closure_in(pres, amb, ustar) == closure_in(pres, amb, u),
    )


def _connecting_path(pres: EpgPresentation, amb: Epvs, s: Epvs, main: Epvs, depth: int) -> list[VertexId] | None:
    """Shortest path in ``G[amb]`` from ``main`` to another part of ``s``,
    searched among copies ``<= depth``; ties broken by vertex order."""
    sources = sorted(main.vertices(depth))
    prev: dict[VertexId, VertexId | None] = {v: None for v in sources}
    queue = deque(sources)
    while queue:
        x = queue.popleft()
        for y in pres.neighbors_upto(x, depth):
            if y in prev or y not in amb:
                continue
            prev[y] = x
            if y in s:
                path = [y]
                while prev[path[-1]] is not None:
                    path.append(prev[path[-1]])
                return path
            queue.append(y)
    return None


def _absorb_families(pres: EpgPresentation, amb: Epvs, s: Epvs, comps: list[Component]) -> Epvs:
    pv = view(pres, amb)
    for comp in comps:
        if not comp.is_family:
            continue
        for v in comp.base.finite_vertices():
            if v.copy < pv.K:
                continue
            q, b, r = pv.locate(v)
            qc = pv.qcomps[q]
            if qc.g == 0:
                s = s | pv.family_region(q, b - qc.pot[(r, v.index)])
            else:
                s = s | pv.class_region(q, (b - qc.pot[(r, v.index)]) % qc.g)
    return s


def envelope(pres: EpgPresentation, u: Epvs, ambient: Epvs | None = None, max_rounds: int = 200) -> Epvs:
    """A connected envelope of ``u`` inside ``G[ambient]`` (default: ``G``)."""
    if u.is_empty():
        raise EnvelopeError("envelope needs a non-empty set")
    if ambient is None:
        require_valid(pres)
    amb = _ambient(pres, ambient)
    if not u.issubset(amb):
        raise EnvelopeError("set is not contained in the ambient graph")
    target = closure_in(pres, amb, u)
    s = u
    for region in sorted(target, key=lambda r: r.min_vertex()):
        s = s | region
    pv = view(pres, amb)
    depth = pv.deep_start + 4 * pv.L
    for _ in range(max_rounds):
        report = finite_adhesion(pres, s, amb)
        if not report.finite_adhesion:
            comp, _ = report.witness
            hubs = {c for c in comp.cores if c in pres.hubs}
            if not hubs:
                raise EnvelopeError("infinite adhesion without a hub; closure bookkeeping is inconsistent")
            s = s | Epvs(hubs)
            continue
        comps = components(pres, s)
        if any(c.is_family for c in comps):
            s = _absorb_families(pres, amb, s, comps)
            continue
        if len(comps) <= 1:
            break
        path = None
        while path is None:
            path = _connecting_path(pres, amb, s, comps[0].vertices, depth)
            if path is None:
                depth *= 2
                if depth > 1 << 14:
                    raise EnvelopeError("could not connect the envelope")
        s = s | Epvs.of(path)
    else:
        raise EnvelopeError("envelope construction did not converge")
    check = check_envelope(pres, u, s, amb)
    if not check.ok:
        raise EnvelopeError(f"envelope postcondition failed: {check}")
    return s
