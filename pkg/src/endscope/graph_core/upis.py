"""Ultimately periodic sets of non-negative integers."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Callable, Iterable, Iterator


def lcm(*values: int) -> int:
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@dataclass(frozen=True)
class Upis:
    """A set ``S`` of naturals with ``k in S`` decided by ``explicit[k]``
    for ``k < threshold`` and ``pattern[(k - threshold) % period]`` beyond.

    Instances are always canonical (minimal period, then minimal
    threshold), so ``==`` is set equality.
    """

    threshold: int
    period: int
    explicit: tuple[bool, ...]
    pattern: tuple[bool, ...]

    def __post_init__(self) -> None:
        if self.period < 1 or len(self.pattern) != self.period:
            raise ValueError("pattern length must equal period >= 1")
        if self.threshold < 0 or len(self.explicit) != self.threshold:
            raise ValueError("explicit length must equal threshold")

    @staticmethod
    def make(explicit: Iterable[bool], pattern: Iterable[bool]) -> "Upis":
        explicit = list(bool(b) for b in explicit)
        pattern = list(bool(b) for b in pattern)
        if not pattern:
            raise ValueError("pattern must be non-empty")
        p = len(pattern)
        if not any(pattern):
            pattern, p = [False], 1
        else:
            for q in _divisors(p):
                if all(pattern[i] == pattern[i % q] for i in range(p)):
                    pattern, p = pattern[:q], q
                    break
        while explicit and explicit[-1] == pattern[-1]:
            explicit.pop()
            pattern = [pattern[-1]] + pattern[:-1]
        return Upis(len(explicit), p, tuple(explicit), tuple(pattern))

    @staticmethod
    def from_predicate(threshold: int, period: int, pred: Callable[[int], bool]) -> "Upis":
        return Upis.make(
            [pred(k) for k in range(threshold)],
            [pred(threshold + r) for r in range(period)],
        )

    @staticmethod
    def empty() -> "Upis":
        return Upis(0, 1, (), (False,))

    @staticmethod
    def full() -> "Upis":
        return Upis(0, 1, (), (True,))

    @staticmethod
    def finite(members: Iterable[int]) -> "Upis":
        members = set(members)
        if any(k < 0 for k in members):
            raise ValueError("indices must be non-negative")
        top = max(members, default=-1) + 1
        return Upis.make([k in members for k in range(top)], [False])

    @staticmethod
    def progression(start: int, stride: int) -> "Upis":
        """``{start + m * stride : m >= 0}``."""
        if stride < 1 or start < 0:
            raise ValueError("progression needs start >= 0 and stride >= 1")
        return Upis.from_predicate(start, stride, lambda k: k >= start and (k - start) % stride == 0)

    @staticmethod
    def at_least(start: int) -> "Upis":
        return Upis.progression(start, 1)

    def __contains__(self, k: int) -> bool:
        if k < 0:
            return False
        if k < self.threshold:
            return self.explicit[k]
        return self.pattern[(k - self.threshold) % self.period]

    def is_finite(self) -> bool:
        return not any(self.pattern)

    def is_empty(self) -> bool:
        return self.is_finite() and not any(self.explicit)

    def members(self, upto: int) -> Iterator[int]:
        """Members ``k <= upto`` in increasing order."""
        return (k for k in range(upto + 1) if k in self)

    def max_finite(self) -> int:
        if not self.is_finite():
            raise ValueError("set is infinite")
        return max((k for k in range(self.threshold) if self.explicit[k]), default=-1)

    def first(self) -> int | None:
        for k in range(self.threshold + self.period):
            if k in self:
                return k
        return None

    def _combine(self, other: "Upis", op: Callable[[bool, bool], bool]) -> "Upis":
        t = max(self.threshold, other.threshold)
        p = lcm(self.period, other.period)
        return Upis.from_predicate(t, p, lambda k: op(k in self, k in other))

    def __or__(self, other: "Upis") -> "Upis":
        return self._combine(other, lambda a, b: a or b)

    def __and__(self, other: "Upis") -> "Upis":
        return self._combine(other, lambda a, b: a and b)

    def __sub__(self, other: "Upis") -> "Upis":
        return self._combine(other, lambda a, b: a and not b)

    def complement(self) -> "Upis":
        return Upis.make([not b for b in self.explicit], [not b for b in self.pattern])

    def shift(self, delta: int) -> "Upis":
        """``{k + delta : k in self, k + delta >= 0}``."""
        if delta >= 0:
            return Upis.make((False,) * delta + self.explicit, self.pattern)
        return Upis.from_predicate(self.threshold, self.period, lambda k: (k - delta) in self)

    def issubset(self, other: "Upis") -> bool:
        return (self - other).is_empty()

    def union_of_translates(self, step: int) -> "Upis":
        """``{k + m * step : k in self, m >= 0}`` for a finite set."""
        base = list(self.members(self.max_finite()))
        if not base:
            return Upis.empty()
        top = max(base) + 1
        return Upis.from_predicate(
            top, step, lambda k: any(k >= b and (k - b) % step == 0 for b in base)
        )

    def to_text(self) -> str:
        bits = "".join("1" if b else "0" for b in self.explicit)
        pat = "".join("1" if b else "0" for b in self.pattern)
        return f"{bits}({pat})"

    @staticmethod
    def from_text(text: str) -> "Upis":
        head, sep, rest = text.partition("(")
        if not sep or not rest.endswith(")"):
            raise ValueError(f"bad index-set syntax: {text!r}")
        body = rest[:-1]
        if set(head) - {"0", "1"} or set(body) - {"0", "1"} or not body:
            raise ValueError(f"bad index-set syntax: {text!r}")
        return Upis.make([c == "1" for c in head], [c == "1" for c in body])

    def __repr__(self) -> str:
        return f"Upis({self.to_text()})"
