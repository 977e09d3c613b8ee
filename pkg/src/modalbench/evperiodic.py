"""Eventually periodic subsets of the natural numbers.

A set is stored as ``(prefix, table)``: membership of ``n < len(prefix)`` is
``prefix[n]``; membership of larger ``n`` is ``table[n % len(table)]``.
Instances are always canonical (minimal period, then minimal threshold), so
structural equality is semantic equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Callable, Iterable, Iterator


def lcm(*values: int) -> int:
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out


def _minimal_period(table: tuple[bool, ...]) -> tuple[bool, ...]:
    p = len(table)
    for d in range(1, p + 1):
        if p % d == 0 and all(table[i] == table[i % d] for i in range(p)):
            return table[:d]
    return table


@dataclass(frozen=True)
class EvPeriodicSet:
    prefix: tuple[bool, ...] = ()
    table: tuple[bool, ...] = (False,)

    def __post_init__(self):
        if not self.table:
            raise ValueError("period must be at least 1")
        table = _minimal_period(tuple(bool(b) for b in self.table))
        prefix = [bool(b) for b in self.prefix]
        p = len(table)
        while prefix and prefix[-1] == table[(len(prefix) - 1) % p]:
            prefix.pop()
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "prefix", tuple(prefix))

    # ------------------------------------------------------------ constructors

    @classmethod
    def empty(cls) -> "EvPeriodicSet":
        return cls((), (False,))

    @classmethod
    def naturals(cls) -> "EvPeriodicSet":
        return cls((), (True,))

    @classmethod
    def finite(cls, members: Iterable[int]) -> "EvPeriodicSet":
        ms = set(members)
        if any(m < 0 for m in ms):
            raise ValueError("members must be natural numbers")
        top = max(ms) + 1 if ms else 0
        return cls(tuple(i in ms for i in range(top)), (False,))

    @classmethod
    def cofinite(cls, missing: Iterable[int]) -> "EvPeriodicSet":
        return cls.finite(missing).complement()

    @classmethod
    def at_least(cls, k: int) -> "EvPeriodicSet":
        return cls((False,) * max(k, 0), (True,))

    @classmethod
    def residues(cls, modulus: int, residues: Iterable[int], start: int = 0) -> "EvPeriodicSet":
        """{n >= start : n mod modulus in residues}."""
        rs = {r % modulus for r in residues}
        table = tuple(i in rs for i in range(modulus))
        prefix = (False,) * start
        return cls(prefix, table)

    @classmethod
    def progression(cls, step: int, offset: int, start: int = 0) -> "EvPeriodicSet":
        """{step*n + offset : n >= start}, step >= 1, offset may be negative."""
        if step < 1:
            raise ValueError("step must be >= 1")
        first = step * start + offset
        if first < 0:
            start = -(offset // step)  # smallest n with step*n + offset >= 0
            first = step * start + offset
        return cls.residues(step, [first], start=first)

    @classmethod
    def from_function(cls, member: Callable[[int], bool], threshold: int, period: int) -> "EvPeriodicSet":
        """Sample ``member`` assuming it is ``period``-periodic from ``threshold`` on."""
        threshold = max(threshold, 0)
        prefix = tuple(bool(member(n)) for n in range(threshold))
        table = [False] * period
        for n in range(threshold, threshold + period):
            table[n % period] = bool(member(n))
        return cls(prefix, tuple(table))

    # ------------------------------------------------------------ structure

    @property
    def threshold(self) -> int:
        return len(self.prefix)

    @property
    def period(self) -> int:
        return len(self.table)

    def __contains__(self, n) -> bool:
        if not isinstance(n, int) or n < 0:
            return False
        if n < len(self.prefix):
            return self.prefix[n]
        return self.table[n % len(self.table)]

    def is_empty(self) -> bool:
        return not any(self.prefix) and not any(self.table)

    def is_finite(self) -> bool:
        return not any(self.table)

    def is_cofinite(self) -> bool:
        return all(self.table)

    def is_full(self) -> bool:
        return all(self.prefix) and all(self.table)

    def min(self) -> int | None:
        for n in range(self.threshold + self.period):
            if n in self:
                return n
        return None

    def max(self) -> int | None:
        if not self.is_finite():
            raise ValueError("infinite set has no maximum")
        hits = [i for i, b in enumerate(self.prefix) if b]
        return hits[-1] if hits else None

    def members_below(self, bound: int) -> Iterator[int]:
        head = min(bound, len(self.prefix))
        for n in range(head):
            if self.prefix[n]:
                yield n
        if any(self.table):
            for n in range(head, bound):
                if self.table[n % len(self.table)]:
                    yield n

    def finite_members(self) -> list[int]:
        if not self.is_finite():
            raise ValueError("set is infinite")
        return [i for i, b in enumerate(self.prefix) if b]

    # ------------------------------------------------------------ boolean ops

    def _expand(self, t: int, p: int) -> tuple[tuple, tuple]:
        """The same set written with threshold t and period p (t, p large enough)."""
        tab, q = self.table, len(self.table)
        prefix = self.prefix + tuple(tab[n % q] for n in range(len(self.prefix), t))
        table = tuple(tab[n % q] for n in range(p))
        return prefix, table

    def _combine(self, other: "EvPeriodicSet", op) -> "EvPeriodicSet":
        t = max(self.threshold, other.threshold)
        p = lcm(self.period, other.period)
        (p1, t1), (p2, t2) = self._expand(t, p), other._expand(t, p)
        return EvPeriodicSet(tuple(map(op, p1, p2)), tuple(map(op, t1, t2)))

    def __or__(self, other: "EvPeriodicSet") -> "EvPeriodicSet":
        if other.is_empty():
            return self
        if self.is_empty():
            return other
        return self._combine(other, lambda a, b: a or b)

    def __and__(self, other: "EvPeriodicSet") -> "EvPeriodicSet":
        return self._combine(other, lambda a, b: a and b)

    def __sub__(self, other: "EvPeriodicSet") -> "EvPeriodicSet":
        return self._combine(other, lambda a, b: a and not b)

    def __xor__(self, other: "EvPeriodicSet") -> "EvPeriodicSet":
        return self._combine(other, lambda a, b: a != b)

    def complement(self) -> "EvPeriodicSet":
        return EvPeriodicSet(tuple(not b for b in self.prefix), tuple(not b for b in self.table))

    def __invert__(self) -> "EvPeriodicSet":
        return self.complement()

    def issubset(self, other: "EvPeriodicSet") -> bool:
        return (self - other).is_empty()

    def __le__(self, other: "EvPeriodicSet") -> bool:
        return self.issubset(other)

    # ------------------------------------------------------------ affine maps

    def affine_preimage(self, a: int, b: int, start: int = 0) -> "EvPeriodicSet":
        """{n >= start : a*n + b in self} for a >= 0."""
        if a < 0:
            raise ValueError("a must be >= 0")
        if a == 0:
            return EvPeriodicSet.at_least(start) if b in self else EvPeriodicSet.empty()
        # a*n + b >= threshold once n >= ceil((threshold - b) / a)
        n0 = max(start, -((b - self.threshold) // a), 0)
        return EvPeriodicSet.from_function(
            lambda n: n >= start and (a * n + b) in self, n0, self.period
        )

    def affine_image(self, c: int, d: int) -> "EvPeriodicSet":
        """{c*n + d : n in self} for c >= 1 (results must be natural)."""
        if c < 1:
            raise ValueError("c must be >= 1")

        def member(y: int) -> bool:
            q, r = divmod(y - d, c)
            return r == 0 and q >= 0 and q in self

        return EvPeriodicSet.from_function(member, c * self.threshold + d + 1, c * self.period)

    # ------------------------------------------------------------ text

    def render(self) -> str:
        bits = lambda bs: "".join("1" if b else "0" for b in bs)
        return f"{bits(self.prefix)};{self.period}:{bits(self.table)}"

    @classmethod
    def parse(cls, text: str) -> "EvPeriodicSet":
        try:
            prefix, rest = text.strip().split(";")
            period, table = rest.split(":")
            if int(period) != len(table) or set(prefix + table) - {"0", "1"}:
                raise ValueError
        except ValueError:
            raise ValueError(f"bad eventually periodic set {text!r}; expected 'bits;p:bits'") from None
        return cls(tuple(c == "1" for c in prefix), tuple(c == "1" for c in table))

    def __repr__(self):
        if self.is_finite():
            return "{" + ",".join(map(str, self.finite_members())) + "}"
        return f"EvPeriodicSet({self.render()!r})"
