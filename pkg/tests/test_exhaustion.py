import random

import pytest

from endscope.end_structure import enumerate_ends
from endscope.exhaustion import exhaustion
from endscope.graph_core import ZOO, Epvs, core, example, tv, unfold

from .helpers import random_presentation
from .oracles import exhaustion_on_unfolding


def test_ray_layers_are_balls():
    ex = exhaustion(example("ray"), 10)
    for m, h in enumerate(ex.layers):
        assert h == Epvs.of([core(0)] + [tv(0, k, 0) for k in range(m)])


def test_fan_stabilises_at_layer_one():
    pres = example("fan")
    ex = exhaustion(pres, 5)
    assert ex.layers[0] == Epvs([0])
    assert ex.fixed_point == 1
    assert all(h == Epvs.full(pres) for h in ex.layers[1:])
    assert len(ex.layers) == 6


def test_fan_record_uses_whole_spine():
    ex = exhaustion(example("fan"), 1)
    (rec,) = ex.records[0]
    assert rec.w == Epvs([0]) and rec.u == rec.ustar == rec.component.vertices


def test_infstar_stabilises_at_layer_one():
    pres = example("infstar")
    ex = exhaustion(pres, 3)
    assert ex.fixed_point == 1 and ex.layers[1] == Epvs.full(pres)


def test_json_shape():
    data = exhaustion(example("comb"), 3).to_json()
    assert [d["layer"] for d in data] == [0, 1, 2, 3]
    assert data[0] == {
        "layer": 0,
        "size_class": "finite",
        "set": "{c0}",
        "size": 1,
        "properties": {"neighbourhood_absorbed": True, "ends_separated": True, "pieces_connected": True},
    }


@pytest.mark.parametrize("name", sorted(ZOO))
def test_zoo_layers_pass(name):
    ex = exhaustion(example(name), 8)
    assert ex.ok, [c.witness for c in ex.checks if not c.ok]
    for a, b in zip(ex.layers, ex.layers[1:]):
        assert a.issubset(b)


@pytest.mark.parametrize("name", sorted(ZOO))
def test_layers_cover_the_unfolding(name):
    pres = example(name)
    ex = exhaustion(pres, 30)
    assert all(ex.layer_of(v) is not None for v in unfold(pres, 20))


def _unfolding_checks(pres, ex, depth=40):
    assert exhaustion_on_unfolding(pres, ex.layers, depth) == []


@pytest.mark.parametrize("name", ["ray", "comb", "ladder", "double_ray", "twostrand", "hubbed_ladder"])
def test_zoo_on_unfolding(name):
    pres = example(name)
    _unfolding_checks(pres, exhaustion(pres, 6))


@pytest.mark.parametrize("seed", range(40))
def test_random_exhaustions(seed):
    pres = random_presentation(random.Random(seed), connected=True)
    ex = exhaustion(pres, 5)
    assert ex.ok, [c.witness for c in ex.checks if not c.ok]


@pytest.mark.parametrize("seed", range(15))
def test_random_exhaustions_on_unfolding(seed):
    pres = random_presentation(random.Random(seed), connected=True)
    _unfolding_checks(pres, exhaustion(pres, 4))


def test_negative_layer_count_rejected():
    with pytest.raises(ValueError):
        exhaustion(example("ray"), -1)
