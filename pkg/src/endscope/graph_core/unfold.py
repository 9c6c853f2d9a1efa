"""Finite unfoldings: the brute-force substrate for every oracle check."""

from __future__ import annotations

import networkx as nx

from .epvs import VertexId, core, tv
from .presentation import EpgPresentation


def unfold(pres: EpgPresentation, n: int) -> nx.Graph:
    """Induced subgraph on the cores and all tail copies ``k <= n``.

    Nodes carry ``boundary=True`` when they have a neighbour outside the
    unfolding (hubs, and last copies with an outgoing inter edge).
    """
    if n < 0:
        raise ValueError("depth must be >= 0")
    g = nx.Graph(name=pres.name, depth=n)
    for c in range(pres.core_count):
        g.add_node(core(c), boundary=c in pres.hubs)
    g.add_edges_from((core(a), core(b)) for a, b in pres.core_edges)
    for t, spec in enumerate(pres.tails):
        leaving = {i for i, _ in spec.inter}
        for k in range(n + 1):
            for i in range(spec.period):
                g.add_node(tv(t, k, i), boundary=k == n and i in leaving)
            g.add_edges_from((tv(t, k, i), tv(t, k, j)) for i, j in spec.intra)
            if k < n:
                g.add_edges_from((tv(t, k, i), tv(t, k + 1, j)) for i, j in spec.inter)
        g.add_edges_from((core(c), tv(t, 0, i)) for c, i in spec.attach)
        for h, i, s, d in spec.hubs:
            g.add_edges_from((core(h), tv(t, k, i)) for k in range(s, n + 1, d))
    return g


def vertex_copy(v: VertexId) -> int:
    return -1 if v.is_core else v.copy
