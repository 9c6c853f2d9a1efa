"""Layered exhaustions ``H_0 ⊆ H_1 ⊆ ...`` by connected sets of finite adhesion.

Layer ``m + 1`` adds, for every component ``C`` of ``G - H_m``, a connected
envelope (taken inside ``C``) of the vertices of ``C`` next to ``N(C)``.
Periodic families of finite components are handled member by member until
the members are deep enough to be exact translates of each other; from then
on one envelope is computed and translated.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .end_structure import closure, enumerate_ends
from .envelope import components_of_complement, envelope, finite_adhesion
from .graph_core import Component, Epvs, EpgPresentation, is_connected, require_valid


@dataclass(frozen=True)
class ComponentRecord:
    """``W = N(C)``, ``U_C = N(W) ∩ C`` and ``U*_C`` for one component, or
    for the first member of a family (``shift`` set)."""

    component: Component
    w: Epvs
    u: Epvs
    ustar: Epvs
    added: Epvs


@dataclass(frozen=True)
class LayerCheck:
    layer: int
    connected: bool
    finite_adhesion: bool
    neighbourhood_absorbed: bool
    ends_separated: bool
    pieces_connected: bool
    dominated_consistent: bool
    witness: str | None = None

    @property
    def ok(self) -> bool:
        return (
            self.connected
            and self.finite_adhesion
            and self.neighbourhood_absorbed
            and self.ends_separated
            and self.pieces_connected
            and self.dominated_consistent
        )


@dataclass
class Exhaustion:
    pres: EpgPresentation
    layers: list[Epvs]
    components: list[list[Component]]
    records: list[list[ComponentRecord]]
    checks: list[LayerCheck] = field(default_factory=list)
    fixed_point: int | None = None

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def layer_of(self, v) -> int | None:
        return next((m for m, h in enumerate(self.layers) if v in h), None)

    def to_json(self) -> list[dict]:
        out = []
        for m, h in enumerate(self.layers):
            check = self.checks[m] if m < len(self.checks) else None
            entry = {
                "layer": m,
                "size_class": "finite" if h.is_finite() else "infinite",
                "set": h.to_text(),
            }
            if h.is_finite():
                entry["size"] = len(h)
            if check is not None:
                entry["properties"] = {
                    "neighbourhood_absorbed": check.neighbourhood_absorbed,
                    "ends_separated": check.ends_separated,
                    "pieces_connected": check.pieces_connected,
                }
            out.append(entry)
        return out


class ExhaustionError(RuntimeError):
    pass


def _record(pres: EpgPresentation, comp: Component, member: Epvs) -> ComponentRecord:
    w = pres.boundary(member)
    u = pres.neighbors_of_set(w) & member
    ustar = envelope(pres, u, ambient=member)
    return ComponentRecord(comp, w, u, ustar, ustar)


def _grow(pres: EpgPresentation, comp: Component) -> list[ComponentRecord]:
    if not comp.is_family:
        return [_record(pres, comp, comp.vertices)]
    records = []
    safe = pres.hub_offset() + 1
    for member in comp.members(10**9):
        rec = _record(pres, comp, member)
        if member.min_vertex().copy >= safe:
            return records + [ComponentRecord(comp, rec.w, rec.u, rec.ustar, rec.ustar.union_of_translates(comp.shift))]
        records.append(rec)
    raise ExhaustionError("family never reaches its periodic range")  # pragma: no cover


def _pieces_connected(pres, comps: list[Component], nxt: Epvs) -> str | None:
    for comp in comps:
        members = [comp.vertices] if not comp.is_family else list(comp.members(comp.base.max_copy() + 3 * comp.shift))
        for member in members:
            piece = member & nxt
            if piece.is_empty() or not is_connected(pres, piece):
                return f"C ∩ H_next is disconnected for C = {member.to_text()}"
    return None


def _check_layer(pres, m: int, h: Epvs, comps: list[Component], nxt: Epvs, prev: Epvs | None) -> LayerCheck:
    witness = None
    absorbed = pres.boundary(h).issubset(nxt)
    if not absorbed:
        witness = f"N(H_{m}) - H_{m + 1} = {(pres.boundary(h) - nxt).to_text()}"
    separated = True
    in_h = {e.id for e in closure(pres, h)}
    for end in enumerate_ends(pres):
        if not end.topological:
            continue
        homes = [c for c in comps if not c.is_family and not (c.vertices & end.region).is_finite()]
        if end.id in in_h or len(homes) != 1:
            separated = False
            witness = witness or f"topological end {end.id} is not in a unique component of G - H_{m}"
    dominated_ok = True
    if prev is not None:
        for end in enumerate_ends(pres):
            if end.dominators & set(prev.vertices(0)) and end.id not in in_h:
                dominated_ok = False
                witness = witness or f"dominated end {end.id} missing from the closure of H_{m}"
    pieces = _pieces_connected(pres, comps, nxt)
    return LayerCheck(
        layer=m,
        connected=is_connected(pres, h),
        finite_adhesion=finite_adhesion(pres, h).finite_adhesion,
        neighbourhood_absorbed=absorbed,
        ends_separated=separated,
        pieces_connected=pieces is None,
        dominated_consistent=dominated_ok,
        witness=witness or pieces,
    )


def exhaustion(pres: EpgPresentation, n_max: int) -> Exhaustion:
    """Layers ``H_0 .. H_{n_max}`` with every layer property checked."""
    require_valid(pres)
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    full = Epvs.full(pres)
    h = Epvs.of([pres.root()])
    ex = Exhaustion(pres, [h], [], [])
    for m in range(n_max):
        if h == full:
            ex.fixed_point = ex.fixed_point if ex.fixed_point is not None else m
            ex.layers.append(h)
            ex.components.append([])
            ex.records.append([])
            continue
        comps = components_of_complement(pres, h)
        records = [rec for comp in comps for rec in _grow(pres, comp)]
        nxt = h
        for rec in records:
            nxt = nxt | rec.added
        ex.components.append(comps)
        ex.records.append(records)
        ex.layers.append(nxt)
        h = nxt
    if h == full and ex.fixed_point is None:
        ex.fixed_point = ex.layers.index(full)
    for m in range(n_max):
        nxt = ex.layers[m + 1]
        ex.checks.append(
            _check_layer(pres, m, ex.layers[m], ex.components[m], nxt, ex.layers[m - 1] if m else None)
        )
    return ex
