"""Line-based text format for presentations.

::

    graph hubbed_ladder
    core 3
    core_edge 0 1
    tail 0 period 2
    intra 0 0 1
    inter 0 0 0
    inter 0 1 1
    attach 0 0 0
    attach 0 1 1
    hub 0 2 0 0 1

``hub t h i s d`` joins core ``h`` to strand ``i`` of tail ``t`` at copies
``s, s + d, ...``.
"""

from __future__ import annotations

from .presentation import EpgPresentation, PresentationError, TailSpec

_ARITY = {
    "graph": 1,
    "core": 1,
    "core_edge": 2,
    "tail": 3,
    "intra": 3,
    "inter": 3,
    "attach": 3,
    "hub": 5,
}


class ParseError(PresentationError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def parse_presentation(text: str) -> EpgPresentation:
    name = "unnamed"
    core_count: int | None = None
    core_edges: list[tuple[int, int]] = []
    tails: list[dict] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        word, *args = line.split()
        if word not in _ARITY:
            raise ParseError(lineno, f"unknown directive {word!r}")
        if len(args) != _ARITY[word]:
            raise ParseError(lineno, f"{word} expects {_ARITY[word]} arguments, got {len(args)}")
        if word == "graph":
            name = args[0]
            continue
        if word == "tail":
            if args[1] != "period":
                raise ParseError(lineno, "expected 'tail <t> period <p>'")
            args = [args[0], args[2]]
        try:
            nums = [int(x) for x in args]
        except ValueError:
            raise ParseError(lineno, f"non-integer argument in {line!r}") from None
        if any(x < 0 for x in nums):
            raise ParseError(lineno, "negative index")
        if word == "core":
            core_count = nums[0]
        elif word == "core_edge":
            core_edges.append(tuple(nums))
        elif word == "tail":
            t, p = nums
            if t != len(tails):
                raise ParseError(lineno, f"tails must be declared in order; expected {len(tails)}")
            if p < 1:
                raise ParseError(lineno, "period must be >= 1")
            tails.append({"period": p, "intra": [], "inter": [], "attach": [], "hubs": []})
        else:
            t = nums[0]
            if t >= len(tails):
                raise ParseError(lineno, f"forward reference to undeclared tail {t}")
            spec = tails[t]
            p = spec["period"]
            rest = nums[1:]
            if word in ("intra", "inter"):
                if any(x >= p for x in rest):
                    raise ParseError(lineno, f"strand index out of range for period {p}")
                spec[word].append(tuple(rest))
            elif word == "attach":
                c, i = rest
                if i >= p:
                    raise ParseError(lineno, f"strand index out of range for period {p}")
                spec["attach"].append((c, i))
            else:
                h, i, s, d = rest
                if d < 1:
                    raise ParseError(lineno, "stride must be >= 1")
                if i >= p:
                    raise ParseError(lineno, f"strand index out of range for period {p}")
                spec["hubs"].append((h, i, s, d))
        if word in ("core_edge", "attach", "hub"):
            cores = nums[:2] if word == "core_edge" else [nums[1]]
            if core_count is None:
                raise ParseError(lineno, "core count must be declared before core references")
            if any(c >= core_count for c in cores):
                raise ParseError(lineno, f"core index out of range (core count {core_count})")
    return EpgPresentation(
        name=name,
        core_count=core_count or 0,
        core_edges=tuple(core_edges),
        tails=tuple(
            TailSpec(
                period=s["period"],
                intra=tuple(s["intra"]),
                inter=tuple(s["inter"]),
                attach=tuple(s["attach"]),
                hubs=tuple(s["hubs"]),
            )
            for s in tails
        ),
    )


def emit_presentation(pres: EpgPresentation) -> str:
    lines = [f"graph {pres.name}", f"core {pres.core_count}"]
    lines += [f"core_edge {u} {v}" for u, v in pres.core_edges]
    for t, spec in enumerate(pres.tails):
        lines.append(f"tail {t} period {spec.period}")
        lines += [f"intra {t} {i} {j}" for i, j in spec.intra]
        lines += [f"inter {t} {i} {j}" for i, j in spec.inter]
        lines += [f"attach {t} {c} {i}" for c, i in spec.attach]
        lines += [f"hub {t} {h} {i} {s} {d}" for h, i, s, d in spec.hubs]
    return "\n".join(lines) + "\n"
