"""Spanning trees that are end-faithful for the topological ends.

``T_0`` is the root. For every component ``C`` of ``G - H_m`` the piece
``C ∩ H_{m+1}`` (connected by the exhaustion) gets a breadth-first spanning
tree hung from ``T_m`` by the least edge ``e_C`` between them. The tree spans
every layer vertex up to copy ``horizon``; an infinite piece may need a few
deeper vertices of its own to stay connected.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .end_structure import enumerate_ends
from .exhaustion import exhaustion
from .graph_core import Epvs, EpgPresentation, VertexId, parse_vertex


class HorizonError(ValueError):
    def __init__(self, required: int):
        super().__init__(f"horizon too small to contain the layers; need horizon >= {required}")
        self.required = required


Edge = tuple[VertexId, VertexId]


@dataclass
class SpanningTreePrefix:
    root: VertexId
    layers: list[Epvs]
    horizon: int
    edges: list[Edge]
    attachment_edges: list[dict] = field(default_factory=list)
    ray_certificates: list[dict] = field(default_factory=list)

    def vertices(self) -> set[VertexId]:
        out = {self.root}
        for a, b in self.edges:
            out.update((a, b))
        return out

    def to_json(self) -> dict:
        return {
            "kind": "spanningtree",
            "root": self.root.label(),
            "horizon": self.horizon,
            "layers": [h.to_text() for h in self.layers],
            "edges": [[a.label(), b.label()] for a, b in self.edges],
            "attachment_edges": [
                {"component": a["component"].to_text(), "layer": a["layer"], "edge": [v.label() for v in a["edge"]]}
                for a in self.attachment_edges
            ],
            "ray_certificates": [
                {"end": r["end"], "path": [v.label() for v in r["path"]]} for r in self.ray_certificates
            ],
        }

    @staticmethod
    def from_json(data: dict) -> "SpanningTreePrefix":
        return SpanningTreePrefix(
            root=parse_vertex(data["root"]),
            layers=[Epvs.from_text(h) for h in data["layers"]],
            horizon=data["horizon"],
            edges=[(parse_vertex(a), parse_vertex(b)) for a, b in data["edges"]],
            attachment_edges=[
                {
                    "component": Epvs.from_text(a["component"]),
                    "layer": a["layer"],
                    "edge": tuple(parse_vertex(v) for v in a["edge"]),
                }
                for a in data.get("attachment_edges", [])
            ],
            ray_certificates=[
                {"end": r["end"], "path": [parse_vertex(v) for v in r["path"]]}
                for r in data.get("ray_certificates", [])
            ],
        )


def _bfs_tree(pres, piece: Epvs, start: VertexId, horizon: int) -> list[Edge]:
    """BFS tree of ``G[piece]`` from ``start`` covering the piece's vertices
    up to ``horizon``; it may pass through deeper vertices of the piece
    (only those on paths to covered vertices are kept)."""
    targets = set(piece.vertices(horizon))
    reach = horizon
    while reach <= 4 * horizon + 24:
        allowed = set(piece.vertices(reach))
        parent = {start: None}
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y in pres.neighbors_upto(x, reach):
                if y in allowed and y not in parent:
                    parent[y] = x
                    queue.append(y)
        if targets.issubset(parent):
            keep = set()
            for v in targets:
                while v is not None and v not in keep:
                    keep.add(v)
                    v = parent[v]
            return [(parent[v], v) for v in sorted(keep) if parent[v] is not None]
        reach = 2 * reach + 8
    raise HorizonError(max(v.copy for v in targets if not v.is_core) * 4 + 24)


def _tree_path(parent: dict, v: VertexId) -> list[VertexId]:
    path = [v]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    return path[::-1]


def build_spanning_tree(pres: EpgPresentation, depth: int, horizon: int = 40) -> SpanningTreePrefix:
    ex = exhaustion(pres, depth)
    top = ex.layers[depth]
    if top.is_finite() and top.max_copy() > horizon:
        raise HorizonError(top.max_copy())
    root = pres.root()
    in_tree = {root}
    parent: dict[VertexId, VertexId | None] = {root: None}
    st = SpanningTreePrefix(root, ex.layers, horizon, [])
    for m in range(depth):
        nxt = ex.layers[m + 1]
        for comp in ex.components[m]:
            for member in comp.members(horizon) if comp.is_family else [comp.vertices]:
                piece_set = member & nxt
                piece = set(piece_set.vertices(horizon))
                if not piece:
                    continue
                attach = min(
                    (u, v)
                    for v in piece
                    for u in pres.neighbors_upto(v, horizon)
                    if u in in_tree and u in ex.layers[m]
                )
                st.attachment_edges.append({"component": member, "layer": m, "edge": attach})
                st.edges.append(attach)
                parent[attach[1]] = attach[0]
                for a, b in _bfs_tree(pres, piece_set, attach[1], horizon):
                    st.edges.append((a, b))
                    parent[b] = a
                    in_tree.add(b)
                in_tree |= piece
    chains = {}
    for a in st.attachment_edges:
        chains.setdefault(a["layer"], []).append(a)
    for end in enumerate_ends(pres):
        if not end.topological:
            continue
        deepest = None
        for m in range(depth):
            hits = [a for a in chains.get(m, []) if not (a["component"] & end.region).is_finite()]
            if hits:
                deepest = hits[0]
        if deepest is None:
            continue
        tip = max(
            (v for v in (deepest["component"] & ex.layers[depth]).vertices(horizon) if v in parent),
            key=lambda v: (v.copy, v),
        )
        st.ray_certificates.append({"end": end.id, "path": _tree_path(parent, tip)})
    return st


def to_dot(st: SpanningTreePrefix) -> str:
    lines = ["graph spanningtree {"]
    for v in sorted(st.vertices()):
        lines.append(f'  "{v.label()}";')
    for a, b in st.edges:
        lines.append(f'  "{a.label()}" -- "{b.label()}";')
    lines.append("}")
    return "\n".join(lines)
