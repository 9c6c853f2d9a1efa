"""Random presentations and vertex sets for seeded property tests."""

from __future__ import annotations

import random

import networkx as nx

from endscope.graph_core import EpgPresentation, Epvs, TailSpec, Upis, example, unfold, validate


def random_upis(rng: random.Random, max_threshold: int = 6, max_period: int = 4, density: float = 0.5) -> Upis:
    k = rng.randint(0, max_threshold)
    p = rng.randint(1, max_period)
    return Upis.make([rng.random() < density for _ in range(k)], [rng.random() < density for _ in range(p)])


def random_epvs(pres: EpgPresentation, rng: random.Random, density: float = 0.5, **kw) -> Epvs:
    cores = [c for c in range(pres.core_count) if rng.random() < density]
    strands = {
        (t, i): random_upis(rng, density=density, **kw)
        for t, spec in enumerate(pres.tails)
        for i in range(spec.period)
        if rng.random() < 0.8
    }
    return Epvs(cores, strands)


def random_presentation(rng: random.Random, connected: bool = False) -> EpgPresentation:
    while True:
        n = rng.randint(1, 3)
        core_edges = tuple(
            (a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < 0.5
        )
        tails = []
        for _ in range(rng.randint(1, 2)):
            p = rng.randint(1, 3)
            pairs = [(i, j) for i in range(p) for j in range(p)]
            intra = tuple((i, j) for i in range(p) for j in range(i + 1, p) if rng.random() < 0.4)
            inter = tuple(x for x in pairs if rng.random() < 0.45)
            attach = tuple((c, i) for c in range(n) for i in range(p) if rng.random() < 0.3)
            hubs = []
            for c in range(n):
                if rng.random() < 0.25:
                    i = rng.randrange(p)
                    s = rng.randint(1, 2) if (c, i) in attach else rng.randint(0, 2)
                    hubs.append((c, i, s, rng.randint(1, 3)))
            tails.append(TailSpec(p, intra, inter, attach, tuple(hubs)))
        pres = EpgPresentation("random", n, core_edges, tuple(tails))
        report = validate(pres)
        if report.valid and (report.connected or not connected):
            return pres


def zoo_presentations() -> list[EpgPresentation]:
    from endscope.graph_core import ZOO

    return [example(name) for name in ZOO]


def induced_unfolding(pres: EpgPresentation, a: Epvs, depth: int) -> nx.Graph:
    g = unfold(pres, depth)
    return g.subgraph([v for v in g if v in a]).copy()
