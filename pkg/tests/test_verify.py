"""Fault injection: every checker must reject each mutated certificate."""

from dataclasses import replace

import networkx as nx
import pytest

from endscope.end_structure import canonical_chain, enumerate_ends
from endscope.graph_core import Epvs, Upis, components, core, example, tv, unfold
from endscope.spanning_tree import SpanningTreePrefix, build_spanning_tree
from endscope.treedecomp import TdNode, TreeDecompositionPrefix, build_tree_decomposition
from endscope.verify import (
    check_display,
    check_end_faithful,
    check_nested_chain,
    check_td_axioms,
    check_upwards_disjoint,
)


def _td(name, depth=6):
    return build_tree_decomposition(example(name), depth)


def _with_nodes(td, nodes):
    return TreeDecompositionPrefix(nodes, td.depth, td.horizon, list(td.display_table), list(td.dominated_homes))


def _edit(td, node_id, **changes):
    return _with_nodes(td, [replace(n, **changes) if n.id == node_id else n for n in td.nodes])


def _holders(td, v):
    return [n for n in td.nodes if v in n.part]


# td axioms --------------------------------------------------------------------


def _td_vertex_once(td):
    v = tv(0, 1, 0)
    (node,) = [n for n in _holders(td, v)][:1]
    others = [n for n in _holders(td, v) if n.id != node.id]
    for n in others:
        td = _edit(td, n.id, part=n.part - Epvs.of([v]))
    return _edit(td, node.id, part=node.part - Epvs.of([v]))


def _td_drop_edge(td):
    a, b = tv(0, 1, 0), tv(0, 2, 0)
    for n in td.nodes:
        if a in n.part and b in n.part:
            td = _edit(td, n.id, part=n.part - Epvs.of([b]))
    return td


def _td_far_copy(td):
    far = td.nodes[-1]
    return _edit(td, far.id, part=far.part | Epvs.of([core(0)]))


def _td_two_roots(td):
    return _edit(td, td.nodes[2].id, parent=None, level=0)


def _td_ghost_parent(td):
    return _edit(td, td.nodes[2].id, parent="nowhere")


def _td_duplicate_id(td):
    return _edit(td, td.nodes[2].id, id=td.nodes[1].id)


def _td_bad_level(td):
    return _edit(td, td.nodes[3].id, level=7)


def _td_disconnected_part(td):
    n = td.nodes[1]
    return _edit(td, n.id, part=n.part | Epvs.of([tv(0, 20, 0)]))


def _td_infinite_separator(td):
    n = td.nodes[2]
    return _edit(td, n.id, separator=Epvs({}, {(0, 0): Upis.full()}))


def _td_drop_node(td):
    return _with_nodes(td, td.nodes[:-1])


def _td_strip_core(td):
    return _with_nodes(td, [replace(n, part=n.part - Epvs([0])) for n in td.nodes])


TD_MUTATIONS = [
    ("T1", _td_vertex_once),
    ("T2", _td_drop_edge),
    ("T3", _td_far_copy),
    ("tree", _td_two_roots),
    ("tree", _td_ghost_parent),
    ("tree", _td_duplicate_id),
    ("tree", _td_bad_level),
    ("parts_connected", _td_disconnected_part),
    ("finite_separators", _td_infinite_separator),
    ("T1", _td_drop_node),
    ("T1", _td_strip_core),
]


@pytest.mark.parametrize("axiom,mutate", TD_MUTATIONS, ids=[f"{a}-{m.__name__}" for a, m in TD_MUTATIONS])
def test_td_axiom_mutations(axiom, mutate):
    pres = example("ray")
    td = _td("ray")
    assert check_td_axioms(pres, td, 40).ok
    report = check_td_axioms(pres, mutate(td), 40)
    assert not report.ok and report.checks[axiom] is False
    assert report.witnesses


def test_td_axioms_witness_names_the_vertex():
    report = check_td_axioms(example("ray"), _td_vertex_once(_td("ray")), 40)
    assert {"check": "T1", "vertex": "0.1.0"} in report.witnesses


def test_td_horizon_beyond_prefix_is_an_error():
    with pytest.raises(ValueError):
        check_td_axioms(example("ray"), _td("ray"), 400)


# upwards disjoint --------------------------------------------------------------


def _ud_copy_parent_sep(td):
    n = td.nodes[3]
    parent = td.node(n.parent)
    return _edit(td, n.id, separator=n.separator | parent.separator)


def _ud_copy_grandparent_sep(td):
    n = td.nodes[4]
    grand = td.node(td.node(n.parent).parent)
    return _edit(td, n.id, separator=n.separator | grand.separator, part=n.part | grand.separator)


def _ud_wrong_sep(td):
    n = td.nodes[2]
    return _edit(td, n.id, separator=Epvs.of([tv(0, 9, 0)]))


def _ud_shrunk_sep(td):
    return _edit(td, td.nodes[2].id, separator=Epvs())


def _ud_two_roots(td):
    return _edit(td, td.nodes[3].id, parent=None, level=0)


def _ud_ghost_parent(td):
    return _edit(td, td.nodes[3].id, parent="gone")


def _ud_sep_is_parent_part(td):
    n = td.nodes[2]
    return _edit(td, n.id, separator=td.node(n.parent).part)


def _ud_part_overlap(td):
    n = td.nodes[3]
    return _edit(td, n.id, part=n.part | td.node(n.parent).part)


def _ud_double_ray_cross(td):
    a = next(n for n in td.nodes if n.level == 3 and "1.1" not in n.part.to_text())
    other = next(n for n in td.nodes if n.level == 2 and n.id != a.parent)
    return _edit(td, a.id, separator=a.separator | other.separator)


def _ud_deep_dup(td):
    n = td.nodes[5]
    anc = td.node(td.node(td.node(n.parent).parent).parent)
    return _edit(td, n.id, separator=n.separator | anc.separator)


def _ud_sep_own_vertex(td):
    n = td.nodes[2]
    own = n.part - td.node(n.parent).part
    return _edit(td, n.id, separator=n.separator | Epvs.of([min(own.finite_vertices())]))


UD_MUTATIONS = [
    _ud_sep_own_vertex,
    _ud_copy_parent_sep,
    _ud_copy_grandparent_sep,
    _ud_wrong_sep,
    _ud_shrunk_sep,
    _ud_two_roots,
    _ud_ghost_parent,
    _ud_sep_is_parent_part,
    _ud_part_overlap,
    _ud_deep_dup,
]


@pytest.mark.parametrize("mutate", UD_MUTATIONS, ids=[m.__name__ for m in UD_MUTATIONS])
def test_upwards_disjoint_mutations(mutate):
    td = _td("ray")
    assert check_upwards_disjoint(td).ok
    report = check_upwards_disjoint(mutate(td))
    assert not report.ok and report.witnesses


def test_upwards_disjoint_mutation_on_branching_tree():
    td = _td("double_ray")
    assert check_upwards_disjoint(td).ok
    assert not check_upwards_disjoint(_ud_double_ray_cross(td)).ok
    assert not check_upwards_disjoint(_ud_copy_parent_sep(td)).ok


def test_duplicated_separator_vertex_reports_pair():
    report = check_upwards_disjoint(_ud_copy_grandparent_sep(_td("ray")))
    assert any(w["check"] == "disjoint" and len(w["pair"]) == 2 for w in report.witnesses)


def test_single_edge_tree_passes_vacuously():
    root = TdNode("r", 0, None, Epvs([0]), Epvs(), Epvs())
    child = TdNode("a", 1, "r", Epvs([0]), Epvs([0]), Epvs())
    assert check_upwards_disjoint(TreeDecompositionPrefix([root, child], 1, 10)).ok


# display --------------------------------------------------------------------------


def _rows(td, rows=None, homes=None):
    return TreeDecompositionPrefix(
        td.nodes, td.depth, td.horizon, rows if rows is not None else td.display_table, homes if homes is not None else td.dominated_homes
    )


def _dp_duplicate(td):
    return _rows(td, td.display_table + [dict(td.display_table[0])])


def _dp_missing(td):
    return _rows(td, td.display_table[1:])


def _dp_unknown(td):
    return _rows(td, [{"end": "e9", "ray": td.display_table[0]["ray"]}] + td.display_table[1:])


def _dp_skip_level(td):
    row = td.display_table[0]
    return _rows(td, [{"end": row["end"], "ray": row["ray"][:2] + row["ray"][3:]}] + td.display_table[1:])


def _dp_truncated(td):
    row = td.display_table[0]
    return _rows(td, [{"end": row["end"], "ray": row["ray"][:-1]}] + td.display_table[1:])


def _dp_swapped(td):
    a, b = td.display_table
    return _rows(td, [{"end": a["end"], "ray": b["ray"]}, {"end": b["end"], "ray": a["ray"]}])


def _dp_wrong_branch_start(td):
    a, b = td.display_table
    return _rows(td, [{"end": a["end"], "ray": b["ray"][:1] + a["ray"][1:]}, b])


def _dp_empty_ray(td):
    a, b = td.display_table
    return _rows(td, [{"end": a["end"], "ray": []}, b])


def _dp_same_ray_twice(td):
    a, b = td.display_table
    return _rows(td, [a, {"end": b["end"], "ray": a["ray"]}])


def _dp_unknown_node(td):
    a, b = td.display_table
    return _rows(td, [{"end": a["end"], "ray": a["ray"][:-1] + ["n99.0"]}, b])


DISPLAY_MUTATIONS = [
    _dp_duplicate,
    _dp_missing,
    _dp_unknown,
    _dp_skip_level,
    _dp_truncated,
    _dp_swapped,
    _dp_wrong_branch_start,
    _dp_empty_ray,
    _dp_same_ray_twice,
    _dp_unknown_node,
]


@pytest.mark.parametrize("mutate", DISPLAY_MUTATIONS, ids=[m.__name__ for m in DISPLAY_MUTATIONS])
def test_display_mutations(mutate):
    pres = example("double_ray")
    td = _td("double_ray")
    assert check_display(pres, td).ok
    report = check_display(pres, mutate(td))
    assert not report.ok and report.witnesses


def test_display_fan_mutations():
    pres = example("fan")
    td = _td("fan")
    assert check_display(pres, td).ok
    assert not check_display(pres, _rows(td, [{"end": "e0", "ray": [td.nodes[1].id]}])).ok
    assert not check_display(pres, _rows(td, homes=[{"end": "e0", "node": "r"}])).ok
    assert not check_display(pres, _rows(td, homes=[])).ok


def test_display_ray_passes_one_to_one():
    assert check_display(example("ray"), _td("ray")).ok


# nested chains ----------------------------------------------------------------------


def _chain(name, length=5):
    pres = example(name)
    end = enumerate_ends(pres)[0]
    return pres, canonical_chain(pres, end, length)


def _nc_infinite_x(chain):
    x, c = chain[1]
    return chain[:1] + [(x | Epvs({}, {(0, 0): Upis.full()}), c)] + chain[2:]


def _nc_overlap(chain):
    (x0, c0), (x1, c1) = chain[0], chain[1]
    return [(x0, c0), (x1 | x0, c1)] + chain[2:]


def _nc_not_component(chain):
    x, c = chain[2]
    return chain[:2] + [(x, c - Epvs.of([min(c.vertices(40))]))] + chain[3:]


def _nc_reversed(chain):
    return chain[::-1]


def _nc_finite_side(chain):
    pres = example("ray")
    x, _ = chain[1]
    small = next(k.vertices for k in components(pres, Epvs.full(pres) - x) if k.vertices.is_finite())
    return chain[:1] + [(x, small)] + chain[2:]


def _nc_repeat(chain):
    return chain[:2] + [chain[1]] + chain[2:]


def _nc_extra_vertex(chain):
    x, c = chain[1]
    return chain[:1] + [(x, c | Epvs([0]))] + chain[2:]


def _nc_wrong_pairing(chain):
    (x0, c0), (x1, c1) = chain[0], chain[1]
    return [(x1, c0), (x0, c1)] + chain[2:]


def _nc_skip_cut(chain):
    (x0, c0), (x1, c1) = chain[0], chain[1]
    return [(x0, c1), (x1, c1)] + chain[2:]


def _nc_empty_cut(chain):
    return [(Epvs(), chain[0][1])] + chain[1:]


NC_MUTATIONS = [
    _nc_infinite_x,
    _nc_overlap,
    _nc_not_component,
    _nc_reversed,
    _nc_finite_side,
    _nc_repeat,
    _nc_extra_vertex,
    _nc_wrong_pairing,
    _nc_skip_cut,
    _nc_empty_cut,
]


@pytest.mark.parametrize("mutate", NC_MUTATIONS, ids=[m.__name__ for m in NC_MUTATIONS])
def test_nested_chain_mutations(mutate):
    pres, chain = _chain("ray")
    assert check_nested_chain(pres, chain).ok
    report = check_nested_chain(pres, mutate(chain))
    assert not report.ok and report.witnesses


def test_nested_chain_ray_is_undominated():
    pres, chain = _chain("ray")
    assert check_nested_chain(pres, chain).checks["undominated_end"]


def test_fan_chain_without_hub_is_flagged_dominated():
    pres = example("fan")
    chain = []
    full = Epvs.full(pres)
    for k in range(4):
        x = Epvs.of([tv(0, k, 0)])
        c = next(comp.vertices for comp in components(pres, full - x) if not comp.vertices.is_finite())
        chain.append((x, c))
    report = check_nested_chain(pres, chain)
    assert not report.ok
    assert core(0) in chain[0][1] and not report.checks["undominated_end"] or not report.checks["nested"]


def test_mixed_ends_chain_fails():
    pres = example("double_ray")
    e0, e1 = enumerate_ends(pres)
    a = canonical_chain(pres, e0, 3)
    b = canonical_chain(pres, e1, 3)
    assert not check_nested_chain(pres, [a[0], b[1], a[2]]).ok


def test_empty_chain_passes():
    assert check_nested_chain(example("ray"), []).ok


# end-faithful spanning trees ------------------------------------------------------------


def _st(name, depth=12, horizon=30):
    return build_spanning_tree(example(name), depth, horizon)


def _second_ray(st, pres):
    """Swap a tree edge for a non-tree edge so that the chain component is
    entered twice while T stays a tree."""
    g = unfold(pres, st.horizon)
    tree = nx.Graph(st.edges)
    deep = st.layers[3]
    for f in sorted(g.edges):
        if tree.has_edge(*f) or f[0] not in tree or f[1] not in tree:
            continue
        if (f[0] in deep) == (f[1] in deep):
            continue
        cycle = nx.shortest_path(tree, f[0], f[1])
        for a, b in zip(cycle, cycle[1:]):
            if (a in deep) == (b in deep):
                edges = [e for e in st.edges if set(e) != {a, b}] + [f]
                return replace(st, edges=edges)
    raise AssertionError("no swap found")


def _ef_extra_edge(st):
    g = unfold(example("ladder"), st.horizon)
    tree = nx.Graph(st.edges)
    f = next(e for e in g.edges if e[0] in tree and e[1] in tree and not tree.has_edge(*e))
    return replace(st, edges=st.edges + [f])


def _ef_drop_edge(st):
    return replace(st, edges=st.edges[:-1])


def _ef_non_edge(st):
    return replace(st, edges=st.edges[:-1] + [(st.edges[-1][0], tv(0, 29, 0))])


def _ef_extra_vertex(st):
    return replace(st, edges=st.edges + [(st.edges[-1][1], tv(0, 28, 0))])


def _ef_drop_certificate(st):
    return replace(st, ray_certificates=[])


def _ef_unrooted(st):
    cert = st.ray_certificates[0]
    return replace(st, ray_certificates=[{"end": cert["end"], "path": cert["path"][1:]}])


def _ef_hop(st):
    cert = st.ray_certificates[0]
    path = cert["path"][:3] + cert["path"][4:]
    return replace(st, ray_certificates=[{"end": cert["end"], "path": path}])


def _ef_truncated(st):
    cert = st.ray_certificates[0]
    return replace(st, ray_certificates=[{"end": cert["end"], "path": cert["path"][:4]}])


def _ef_duplicate(st):
    return replace(st, ray_certificates=st.ray_certificates * 2)


def _ef_wrong_end(st):
    cert = st.ray_certificates[0]
    return replace(st, ray_certificates=[{"end": "e7", "path": cert["path"]}])


def _ef_layers_not_nested(st):
    layers = list(st.layers)
    layers[2], layers[3] = layers[3], layers[2]
    return replace(st, layers=layers)


EF_MUTATIONS = [
    _ef_extra_edge,
    _ef_drop_edge,
    _ef_non_edge,
    _ef_extra_vertex,
    _ef_drop_certificate,
    _ef_unrooted,
    _ef_hop,
    _ef_truncated,
    _ef_duplicate,
    _ef_wrong_end,
    _ef_layers_not_nested,
]


@pytest.mark.parametrize("mutate", EF_MUTATIONS, ids=[m.__name__ for m in EF_MUTATIONS])
def test_end_faithful_mutations(mutate):
    pres = example("ladder")
    st = _st("ladder")
    assert check_end_faithful(pres, st).ok
    report = check_end_faithful(pres, mutate(st))
    assert not report.ok and report.witnesses


def test_second_ray_breaks_uniqueness():
    pres = example("ladder")
    st = _st("ladder")
    report = check_end_faithful(pres, _second_ray(st, pres))
    assert report.checks["tree"] and not report.checks["uniqueness"]


def test_swapped_certificates_fail_existence():
    pres = example("double_ray")
    st = _st("double_ray")
    a, b = st.ray_certificates
    bad = replace(st, ray_certificates=[{"end": a["end"], "path": b["path"]}, {"end": b["end"], "path": a["path"]}])
    assert not check_end_faithful(pres, bad).checks["existence"]


def test_certificate_for_dominated_end_is_rejected():
    pres = example("hubbed_ladder")
    st = _st("hubbed_ladder", 6, 20)
    path = [core(0), tv(0, 0, 0)]
    report = check_end_faithful(pres, replace(st, ray_certificates=[{"end": "e0", "path": path}]))
    assert not report.checks["certificates"]


def test_fan_passes_vacuously():
    assert check_end_faithful(example("fan"), _st("fan", 3, 20)).ok


def test_json_loaded_tree_is_checked_the_same():
    pres = example("ladder")
    st = _st("ladder")
    data = _second_ray(st, pres)
    loaded = SpanningTreePrefix.from_json(data.to_json())
    assert not check_end_faithful(pres, loaded).ok
