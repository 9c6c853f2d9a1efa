"""Tree-decompositions with upwards disjoint finite separators, assembled
from an exhaustion.

The root's part is ``H_0``. Every component ``C`` of ``G - H_m`` is a node
one level below the component of ``G - H_{m-1}`` containing it, with part
``N(C) ∪ (C ∩ H_{m+1})`` and separator ``N(C)``. Only a finite prefix is
materialised: levels up to ``depth`` and family members starting at or
before ``horizon``. The display table follows every topological end down
its chain of components; a dominated end stops at a node.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .end_structure import enumerate_ends
from .exhaustion import exhaustion
from .graph_core import Epvs, EpgPresentation


@dataclass(frozen=True)
class TdNode:
    id: str
    level: int
    parent: str | None
    part: Epvs
    separator: Epvs
    component: Epvs


@dataclass
class TreeDecompositionPrefix:
    nodes: list[TdNode]
    depth: int
    horizon: int
    display_table: list[dict] = field(default_factory=list)
    dominated_homes: list[dict] = field(default_factory=list)

    def node(self, node_id: str) -> TdNode:
        return self._index()[node_id]

    def _index(self) -> dict[str, TdNode]:
        return {n.id: n for n in self.nodes}

    def children(self, node_id: str) -> list[TdNode]:
        return [n for n in self.nodes if n.parent == node_id]

    def to_json(self) -> dict:
        return {
            "kind": "treedecomp",
            "depth": self.depth,
            "horizon": self.horizon,
            "nodes": [
                {
                    "id": n.id,
                    "level": n.level,
                    "parent": n.parent,
                    "part": n.part.to_text(),
                    "separator": n.separator.to_text(),
                    "component": n.component.to_text(),
                }
                for n in self.nodes
            ],
            "display_table": self.display_table,
            "dominated_homes": self.dominated_homes,
        }

    @staticmethod
    def from_json(data: dict) -> "TreeDecompositionPrefix":
        nodes = [
            TdNode(
                n["id"],
                n["level"],
                n["parent"],
                Epvs.from_text(n["part"]),
                Epvs.from_text(n["separator"]),
                Epvs.from_text(n["component"]),
            )
            for n in data["nodes"]
        ]
        return TreeDecompositionPrefix(
            nodes, data["depth"], data["horizon"], list(data["display_table"]), list(data.get("dominated_homes", []))
        )


def build_tree_decomposition(pres: EpgPresentation, depth: int, horizon: int = 40) -> TreeDecompositionPrefix:
    if depth < 1:
        raise ValueError("depth must be >= 1")
    ex = exhaustion(pres, depth + 1)
    root = TdNode("r", 0, None, ex.layers[0], Epvs(), Epvs.full(pres) - ex.layers[0])
    nodes = [root]
    previous = [root]
    for m in range(depth):
        nxt = ex.layers[m + 1]
        level = []
        members = []
        for comp in ex.components[m]:
            members.extend(comp.members(horizon) if comp.is_family else [comp.vertices])
        for k, c in enumerate(members):
            anchor = c.min_vertex()
            parent = next(p for p in previous if anchor in p.component)
            sep = pres.boundary(c)
            level.append(TdNode(f"n{m + 1}.{k}", m + 1, parent.id, sep | (c & nxt), sep, c))
        nodes.extend(level)
        previous = level
    td = TreeDecompositionPrefix(nodes, depth, horizon)
    for end in enumerate_ends(pres):
        chain = [n.id for n in nodes[1:] if not (n.component & end.region).is_finite()]
        if end.topological:
            td.display_table.append({"end": end.id, "ray": chain})
        else:
            homes = [n.id for n in nodes if not (n.part & end.region).is_finite()]
            td.dominated_homes.append({"end": end.id, "node": homes[0] if homes else None})
    return td


def to_dot(td: TreeDecompositionPrefix) -> str:
    lines = ["graph treedecomp {"]
    for n in td.nodes:
        size = len(n.part) if n.part.is_finite() else "inf"
        lines.append(f'  "{n.id}" [label="{n.id}\\n|V_t|={size}"];')
    for n in td.nodes:
        if n.parent is not None:
            lines.append(f'  "{n.parent}" -- "{n.id}" [label="{len(n.separator)}"];')
    lines.append("}")
    return "\n".join(lines)
