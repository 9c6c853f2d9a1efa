"""Eventually periodic vertex sets."""

from __future__ import annotations

import re
from typing import TYPE_CHECKING, Iterable, Iterator, Mapping, NamedTuple

from .upis import Upis, lcm

if TYPE_CHECKING:
    from .presentation import EpgPresentation


class VertexId(NamedTuple):
    """``tail == -1`` marks the core vertex ``index``; otherwise the vertex
    is copy ``copy`` of strand ``index`` in tail ``tail``."""

    tail: int
    copy: int
    index: int

    @property
    def is_core(self) -> bool:
        return self.tail < 0

    def label(self) -> str:
        if self.is_core:
            return f"c{self.index}"
        return f"{self.tail}.{self.copy}.{self.index}"

    def shifted(self, delta: int) -> "VertexId":
        if self.is_core:
            return self
        return VertexId(self.tail, self.copy + delta, self.index)

    def __repr__(self) -> str:
        return self.label()


def core(c: int) -> VertexId:
    return VertexId(-1, 0, c)


def tv(t: int, k: int, i: int) -> VertexId:
    return VertexId(t, k, i)


_LABEL = re.compile(r"^(?:c(\d+)|(\d+)\.(\d+)\.(\d+))$")


def parse_vertex(label: str) -> VertexId:
    m = _LABEL.match(label.strip())
    if not m:
        raise ValueError(f"bad vertex label {label!r}")
    if m.group(1) is not None:
        return core(int(m.group(1)))
    return tv(int(m.group(2)), int(m.group(3)), int(m.group(4)))


class Epvs:
    """Finite set of core vertices plus one ``Upis`` of copy indices per
    strand ``(tail, strand)``. Empty strands are dropped, so equal sets
    have equal representations."""

    __slots__ = ("cores", "strands", "_hash")

    def __init__(self, cores: Iterable[int] = (), strands: Mapping[tuple[int, int], Upis] | None = None):
        self.cores = frozenset(cores)
        items = {} if strands is None else strands
        self.strands: dict[tuple[int, int], Upis] = {
            key: items[key] for key in sorted(items) if not items[key].is_empty()
        }
        self._hash = hash((self.cores, tuple(self.strands.items())))

    @staticmethod
    def of(vertices: Iterable[VertexId]) -> "Epvs":
        cores: set[int] = set()
        per: dict[tuple[int, int], set[int]] = {}
        for v in vertices:
            if v.is_core:
                cores.add(v.index)
            else:
                per.setdefault((v.tail, v.index), set()).add(v.copy)
        return Epvs(cores, {key: Upis.finite(ks) for key, ks in per.items()})

    @staticmethod
    def full(pres: "EpgPresentation") -> "Epvs":
        return Epvs(
            range(pres.core_count),
            {(t, i): Upis.full() for t, spec in enumerate(pres.tails) for i in range(spec.period)},
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Epvs):
            return NotImplemented
        return self.cores == other.cores and self.strands == other.strands

    def __hash__(self) -> int:
        return self._hash

    def __contains__(self, v: VertexId) -> bool:
        if v.is_core:
            return v.index in self.cores
        u = self.strands.get((v.tail, v.index))
        return u is not None and v.copy in u

    def strand(self, t: int, i: int) -> Upis:
        return self.strands.get((t, i), Upis.empty())

    def _merge(self, other: "Epvs", op) -> "Epvs":
        keys = set(self.strands) | set(other.strands)
        return Epvs(
            op(self.cores, other.cores),
            {key: op(self.strand(*key), other.strand(*key)) for key in keys},
        )

    def __or__(self, other: "Epvs") -> "Epvs":
        return self._merge(other, lambda a, b: a | b)

    def __and__(self, other: "Epvs") -> "Epvs":
        return self._merge(other, lambda a, b: a & b)

    def __sub__(self, other: "Epvs") -> "Epvs":
        return self._merge(other, lambda a, b: a - b)

    def complement(self, pres: "EpgPresentation") -> "Epvs":
        return Epvs.full(pres) - self

    def is_finite(self) -> bool:
        return all(u.is_finite() for u in self.strands.values())

    def is_empty(self) -> bool:
        return not self.cores and not self.strands

    def issubset(self, other: "Epvs") -> bool:
        return (self - other).is_empty()

    def isdisjoint(self, other: "Epvs") -> bool:
        return (self & other).is_empty()

    @property
    def threshold(self) -> int:
        return max((u.threshold for u in self.strands.values()), default=0)

    @property
    def period(self) -> int:
        return lcm(*(u.period for u in self.strands.values()))

    def tails(self) -> set[int]:
        return {t for t, _ in self.strands}

    def vertices(self, max_copy: int) -> Iterator[VertexId]:
        """Members with copy index ``<= max_copy``, in ``VertexId`` order."""
        for c in sorted(self.cores):
            yield core(c)
        rows = []
        for (t, i), u in self.strands.items():
            rows.extend(tv(t, k, i) for k in u.members(max_copy))
        yield from sorted(rows)

    def restrict(self, max_copy: int) -> frozenset[VertexId]:
        return frozenset(self.vertices(max_copy))

    def finite_vertices(self) -> list[VertexId]:
        if not self.is_finite():
            raise ValueError("set is infinite")
        top = max((u.max_finite() for u in self.strands.values()), default=0)
        return list(self.vertices(top))

    def __len__(self) -> int:
        return len(self.finite_vertices())

    def min_vertex(self) -> VertexId | None:
        if self.cores:
            return core(min(self.cores))
        best = None
        for (t, i), u in self.strands.items():
            k = u.first()
            if k is not None:
                cand = tv(t, k, i)
                if best is None or cand < best:
                    best = cand
        return best

    def max_copy(self) -> int:
        """Largest copy index in a finite set (-1 if it has none)."""
        return max((u.max_finite() for u in self.strands.values()), default=-1)

    def shift(self, delta: int) -> "Epvs":
        """Translate every tail vertex by ``delta`` copies; cores are kept."""
        return Epvs(self.cores, {key: u.shift(delta) for key, u in self.strands.items()})

    def union_of_translates(self, step: int) -> "Epvs":
        """Union of ``self.shift(m * step)`` over ``m >= 0``; ``self`` must be a
        finite set of tail vertices."""
        if self.cores:
            raise ValueError("translates are defined for tail vertices only")
        return Epvs((), {key: u.union_of_translates(step) for key, u in self.strands.items()})

    def to_text(self) -> str:
        parts = [f"c{c}" for c in sorted(self.cores)]
        parts += [f"t{t}.{i}={u.to_text()}" for (t, i), u in self.strands.items()]
        return "{" + " ".join(parts) + "}"

    @staticmethod
    def from_text(text: str) -> "Epvs":
        text = text.strip()
        if not (text.startswith("{") and text.endswith("}")):
            raise ValueError(f"bad set syntax: {text!r}")
        cores: set[int] = set()
        strands: dict[tuple[int, int], Upis] = {}
        for tok in text[1:-1].split():
            if re.fullmatch(r"c\d+", tok):
                cores.add(int(tok[1:]))
                continue
            m = re.fullmatch(r"t(\d+)\.(\d+)=(.*)", tok)
            if not m:
                raise ValueError(f"bad set token {tok!r}")
            key = (int(m.group(1)), int(m.group(2)))
            strands[key] = strands.get(key, Upis.empty()) | Upis.from_text(m.group(3))
        return Epvs(cores, strands)

    def __repr__(self) -> str:
        return f"Epvs{self.to_text()}"


def set_algebra(a: Epvs, b: Epvs | None, op: str, pres: "EpgPresentation | None" = None) -> Epvs:
    """Apply ``union``, ``intersect``, ``diff`` or ``complement`` (unary, uses ``pres``)."""
    if pres is not None:
        for s in (a, b):
            if s is not None and not pres.owns(s):
                raise ValueError("vertex set does not belong to this presentation")
    if op == "complement":
        if pres is None:
            raise ValueError("complement needs the presentation")
        return a.complement(pres)
    if b is None:
        raise ValueError(f"{op} needs two operands")
    if op == "union":
        return a | b
    if op == "intersect":
        return a & b
    if op == "diff":
        return a - b
    raise ValueError(f"unknown set operation {op!r}")
