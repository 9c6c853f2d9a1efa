"""Certificate checkers.

Each checker reads a presentation and certificate data (parts, separators,
tables, edges) and recomputes what it needs from the presentation; nothing
from the builders' internal state is trusted. Failures carry witnesses.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .end_structure import canonical_chain, enumerate_ends
from .graph_core import Epvs, EpgPresentation, components, is_connected, unfold
from .spanning_tree import SpanningTreePrefix
from .treedecomp import TreeDecompositionPrefix


@dataclass
class Report:
    name: str
    checks: dict[str, bool] = field(default_factory=dict)
    witnesses: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def expect(self, check: str, value: bool, **witness) -> bool:
        self.checks.setdefault(check, True)
        if not value:
            if self.checks[check]:
                self.witnesses.append({"check": check, **{k: _plain(v) for k, v in witness.items()}})
            self.checks[check] = False
        return value

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok, "checks": self.checks, "witnesses": self.witnesses}

    def line(self) -> str:
        bad = [k for k, v in self.checks.items() if not v]
        return f"{self.name}: {'PASS' if self.ok else 'FAIL ' + ','.join(bad)}"


def _plain(value):
    if hasattr(value, "label"):
        return value.label()
    if isinstance(value, Epvs):
        return value.to_text()
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


def _living_component(pres, x: Epvs, region: Epvs) -> Epvs | None:
    for comp in components(pres, Epvs.full(pres) - x):
        if not comp.is_family and not (comp.vertices & region).is_finite():
            return comp.vertices
    return None


# tree-decompositions --------------------------------------------------------


def _tree_shape(td: TreeDecompositionPrefix, report: Report) -> bool:
    ids = [n.id for n in td.nodes]
    index = {n.id: n for n in td.nodes}
    roots = [n for n in td.nodes if n.parent is None]
    report.expect("tree", len(ids) == len(set(ids)), duplicate=sorted({i for i in ids if ids.count(i) > 1}))
    report.expect("tree", len(roots) == 1, roots=[n.id for n in roots])
    for n in td.nodes:
        if n.parent is not None:
            p = index.get(n.parent)
            report.expect("tree", p is not None and p.level == n.level - 1, node=n.id, parent=n.parent)
    return report.checks["tree"]


def _path_up(index, node_id):
    out = []
    while node_id is not None:
        out.append(node_id)
        node_id = index[node_id].parent
    return out


def check_td_axioms(pres: EpgPresentation, td: TreeDecompositionPrefix, horizon: int) -> Report:
    """(T1)-(T3) on ``unfold(horizon)`` plus connected parts and finite
    separators. Vertices or edges inside a deepest-level component lie
    beyond the prefix and count as covered."""
    if horizon > td.horizon:
        raise ValueError(f"horizon {horizon} exceeds the decomposition's horizon {td.horizon}")
    report = Report("td_axioms")
    if not _tree_shape(td, report):
        return report
    index = {n.id: n for n in td.nodes}
    deepest = [n for n in td.nodes if n.level == td.depth]
    g = unfold(pres, horizon)
    holders: dict = {}
    for v in g:
        hold = [n.id for n in td.nodes if v in n.part]
        holders[v] = hold
        beyond = any(v in n.component for n in deepest)
        report.expect("T1", bool(hold) or beyond, vertex=v)
    for a, b in g.edges:
        inside = any(a in n.part and b in n.part for n in td.nodes)
        beyond = any(a in n.component and b in n.component for n in deepest)
        report.expect("T2", inside or beyond, edge=[a, b])
    for v, hold in holders.items():
        if len(hold) < 2:
            report.expect("T3", True)
            continue
        tops = [i for i in hold if index[i].parent is None or index[i].parent not in hold]
        if len(tops) > 1:
            a, b = tops[0], tops[1]
            up_a, up_b = _path_up(index, a), _path_up(index, b)
            meet = next(x for x in up_a if x in up_b)
            between = next(x for x in up_a[1:] + up_b[1:] if x not in hold and x != meet) if meet in hold else meet
            report.expect("T3", False, vertex=v, triple=[a, between, b])
        else:
            report.expect("T3", True)
    for n in td.nodes:
        report.expect("parts_connected", is_connected(pres, n.part), node=n.id)
        report.expect("finite_separators", n.separator.is_finite(), node=n.id)
    return report


def check_upwards_disjoint(td: TreeDecompositionPrefix) -> Report:
    report = Report("upwards_disjoint")
    if not _tree_shape(td, report):
        return report
    index = {n.id: n for n in td.nodes}
    report.expect("disjoint", True)
    report.expect("separator_matches_parts", True)
    for n in td.nodes:
        if n.parent is None:
            continue
        parent = index[n.parent]
        report.expect(
            "separator_matches_parts", n.separator == (n.part & parent.part), node=n.id, separator=n.separator
        )
        for anc in _path_up(index, n.parent):
            if index[anc].parent is None:
                continue
            shared = n.separator & index[anc].separator
            report.expect("disjoint", shared.is_empty(), pair=[n.id, anc], vertices=shared)
    return report


def check_display(pres: EpgPresentation, td: TreeDecompositionPrefix) -> Report:
    """Table rays correspond bijectively to topological ends; dominated ends
    are oriented towards a node."""
    report = Report("display")
    if not _tree_shape(td, report):
        return report
    index = {n.id: n for n in td.nodes}
    ends = {e.id: e for e in enumerate_ends(pres)}
    topo = {i for i, e in ends.items() if e.topological}
    listed = [row["end"] for row in td.display_table]
    report.expect("bijective", len(listed) == len(set(listed)), ends=listed)
    report.expect("bijective", set(listed) == topo, listed=sorted(listed), expected=sorted(topo))
    rays = [tuple(row["ray"]) for row in td.display_table]
    report.expect("bijective", len(rays) == len(set(rays)), rays=[list(r) for r in rays])
    report.expect("chains", True)
    for row in td.display_table:
        end = ends.get(row["end"])
        ray = row["ray"]
        if end is None or not ray:
            report.expect("chains", False, end=row["end"])
            continue
        ok = all(i in index for i in ray)
        ok = ok and index[ray[0]].level == 1 and index[ray[-1]].level == td.depth
        ok = ok and all(index[b].parent == a for a, b in zip(ray, ray[1:]))
        if not report.expect("chains", ok, end=row["end"], ray=ray):
            continue
        for i in ray:
            report.expect("chains", not (index[i].component & end.region).is_finite(), end=end.id, node=i)
    report.expect("dominated_at_node", True)
    homes = {row["end"]: row["node"] for row in td.dominated_homes}
    for end in ends.values():
        if end.topological:
            continue
        home = homes.get(end.id)
        toward = [n.id for n in td.nodes[1:] if not (n.component & end.region).is_finite()]
        ok = home in index and not (index[home].part & end.region).is_finite()
        ok = ok and bool(toward) and all(index[i].level < td.depth or i == home for i in toward)
        ok = ok and all(i in _path_up(index, home) for i in toward)
        report.expect("dominated_at_node", ok, end=end.id, home=home)
    return report


# nested chains --------------------------------------------------------------


def check_nested_chain(pres: EpgPresentation, chain: list[tuple[Epvs, Epvs]]) -> Report:
    report = Report("nested_chain")
    for check in ("finite", "disjoint", "components", "nested", "undominated_end"):
        report.expect(check, True)
    if not chain:
        return report
    full = Epvs.full(pres)
    for m, (x, c) in enumerate(chain):
        if not report.expect("finite", x.is_finite(), index=m):
            return report
        comps = [k.vertices for k in components(pres, full - x) if not k.is_family]
        report.expect("components", c in comps, index=m, component=c)
    for m, (x, _) in enumerate(chain):
        for n in range(m + 1, len(chain)):
            shared = x & chain[n][0]
            report.expect("disjoint", shared.is_empty(), pair=[m, n], vertices=shared)
    for m in range(len(chain) - 1):
        (_, c0), (x1, c1) = chain[m], chain[m + 1]
        report.expect("nested", (c1 | x1).issubset(c0), index=m + 1)
    living = [e for e in enumerate_ends(pres) if all(not (c & e.region).is_finite() for _, c in chain)]
    report.expect("undominated_end", len(living) == 1, living=[e.id for e in living])
    if len(living) == 1:
        report.expect("undominated_end", living[0].topological, end=living[0].id, dominators=sorted(living[0].dominators))
    return report


# spanning trees ---------------------------------------------------------------


def check_end_faithful(pres: EpgPresentation, st: SpanningTreePrefix, cuts: int = 12) -> Report:
    report = Report("end_faithful")
    for check in ("tree", "spanning", "certificates", "existence", "uniqueness"):
        report.expect(check, True)
    verts = st.vertices()
    for a, b in st.edges:
        report.expect("tree", pres.adjacent(a, b), edge=[a, b])
    report.expect("tree", len(st.edges) == len(verts) - 1, edges=len(st.edges), vertices=len(verts))
    adj: dict = {v: [] for v in verts}
    for a, b in st.edges:
        adj[a].append(b)
        adj[b].append(a)
    parent = {st.root: None}
    stack = [st.root]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in parent:
                parent[y] = x
                stack.append(y)
    report.expect("tree", len(parent) == len(verts), unreachable=sorted(set(verts) - set(parent))[:3])
    for a, b in zip(st.layers, st.layers[1:]):
        report.expect("spanning", a.issubset(b))
    want = set(st.layers[-1].vertices(st.horizon))
    extra = [v for v in verts if v not in st.layers[-1]]
    report.expect("spanning", want <= verts and not extra, missing=sorted(want - verts)[:3], extra=sorted(extra)[:3])
    if not report.ok:
        return report
    ends = {e.id: e for e in enumerate_ends(pres)}
    topo = [e for e in ends.values() if e.topological]
    certified = [c["end"] for c in st.ray_certificates]
    report.expect("certificates", sorted(certified) == sorted(e.id for e in topo), listed=certified)
    edge_set = {frozenset(e) for e in st.edges}
    for cert in st.ray_certificates:
        end = ends.get(cert["end"])
        path = cert["path"]
        if end is None or not end.topological or not path:
            report.expect("certificates", False, end=cert["end"])
            continue
        ok = path[0] == st.root and len(set(path)) == len(path)
        ok = ok and all(frozenset(p) in edge_set for p in zip(path, path[1:]))
        if not report.expect("existence", ok, end=end.id, reason="not a rooted tree path"):
            continue
        tip = path[-1]
        on_path = {frozenset(p) for p in zip(path, path[1:])}
        for m, h in enumerate(st.layers[:-1]):
            cm = _living_component(pres, h, end.region)
            if not report.expect("existence", cm is not None, end=end.id, layer=m):
                break
            report.expect("existence", tip in cm, end=end.id, layer=m, tip=tip)
            crossing = [e for e in st.edges if (e[0] in cm) != (e[1] in cm)]
            report.expect(
                "uniqueness",
                len(crossing) == 1 and frozenset(crossing[0]) in on_path,
                end=end.id,
                layer=m,
                crossing=[list(e) for e in crossing],
            )
        for x, c in canonical_chain(pres, end, cuts):
            if x.max_copy() < tip.copy:
                report.expect("existence", tip in c, end=end.id, cut=x)
    return report
