"""Built-in example graphs."""

from __future__ import annotations

from .presentation import EpgPresentation, TailSpec


def ray() -> EpgPresentation:
    return EpgPresentation("ray", 1, (), (TailSpec(1, inter=((0, 0),), attach=((0, 0),)),))


def double_ray() -> EpgPresentation:
    arm = TailSpec(1, inter=((0, 0),), attach=((0, 0),))
    return EpgPresentation("double_ray", 1, (), (arm, arm))


def ladder() -> EpgPresentation:
    return EpgPresentation(
        "ladder",
        2,
        ((0, 1),),
        (TailSpec(2, intra=((0, 1),), inter=((0, 0), (1, 1)), attach=((0, 0), (1, 1))),),
    )


def comb() -> EpgPresentation:
    """Spine on strand 0, one pendant tooth per copy on strand 1."""
    return EpgPresentation("comb", 1, (), (TailSpec(2, intra=((0, 1),), inter=((0, 0),), attach=((0, 0),)),))


def fan() -> EpgPresentation:
    return EpgPresentation("fan", 1, (), (TailSpec(1, inter=((0, 0),), hubs=((0, 0, 0, 1),)),))


def infstar() -> EpgPresentation:
    return EpgPresentation("infstar", 1, (), (TailSpec(1, hubs=((0, 0, 0, 1),)),))


def twostrand() -> EpgPresentation:
    return EpgPresentation(
        "twostrand", 1, (), (TailSpec(2, inter=((0, 0), (1, 1)), attach=((0, 0), (0, 1))),)
    )


def hubbed_ladder() -> EpgPresentation:
    """The ladder plus a third core joined to every bottom-rail vertex."""
    base = ladder().tails[0]
    spec = TailSpec(base.period, base.intra, base.inter, base.attach, hubs=((2, 0, 0, 1),))
    return EpgPresentation("hubbed_ladder", 3, ((0, 1),), (spec,))


ZOO = {
    f.__name__: f
    for f in (ray, double_ray, ladder, comb, fan, infstar, twostrand, hubbed_ladder)
}


def example(name: str) -> EpgPresentation:
    try:
        return ZOO[name]()
    except KeyError:
        raise KeyError(f"unknown example {name!r}; choose from {', '.join(ZOO)}") from None
