"""Integral first homology of the torus fibre.

Cycles are coordinates in the basis of H_1(T^2; Z) given by the two circle
generators of the local torus action.  Mapping classes are 2x2 integer
matrices of determinant one acting on column vectors.

Orientation note: with the complex orientation on the plumbing model the
generator basis is a *negative* basis of the fibre.  The twist convention
below, ``T_c(x) = x + det(x|c) c``, is written in that basis so that the
positive Dehn twist about ``(1, 1)`` is the matrix ``[[2, -1], [1, 0]]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import NamedTuple, Sequence


class InvalidInput(ValueError):
    """Raised for zero or non-primitive cycles where a primitive one is needed."""


class Cycle(NamedTuple):
    a: int
    b: int

    def normalized(self) -> "Cycle":
        """Representative with the first nonzero coordinate positive."""
        if self.a < 0 or (self.a == 0 and self.b < 0):
            return Cycle(-self.a, -self.b)
        return self

    def to_json(self) -> list[int]:
        return [int(self.a), int(self.b)]

    @classmethod
    def from_json(cls, data: Sequence[int]) -> "Cycle":
        a, b = data
        return cls(int(a), int(b))


def as_cycle(c) -> Cycle:
    if isinstance(c, Cycle):
        return c
    a, b = c
    return Cycle(int(a), int(b))


def det(x, c) -> int:
    """Determinant of the 2x2 matrix with columns x and c."""
    x, c = as_cycle(x), as_cycle(c)
    return x.a * c.b - x.b * c.a


def is_primitive(c) -> bool:
    c = as_cycle(c)
    if c.a == 0 and c.b == 0:
        raise InvalidInput("the zero cycle is not a vanishing cycle")
    return gcd(abs(c.a), abs(c.b)) == 1


def _require_primitive(c) -> Cycle:
    c = as_cycle(c)
    if not is_primitive(c):
        raise InvalidInput(f"cycle {tuple(c)} is not primitive")
    return c


def same_cycle(c1, c2) -> bool:
    """Equality of vanishing cycles, which are only defined up to sign."""
    return as_cycle(c1).normalized() == as_cycle(c2).normalized()


@dataclass(frozen=True)
class MappingClass:
    """An element of SL(2, Z), stored row-major."""

    m: tuple[tuple[int, int], tuple[int, int]]

    def __post_init__(self):
        (p, q), (r, s) = self.m
        m = ((int(p), int(q)), (int(r), int(s)))
        object.__setattr__(self, "m", m)
        if p * s - q * r != 1:
            raise InvalidInput(f"matrix {m} does not have determinant 1")

    @classmethod
    def identity(cls) -> "MappingClass":
        return cls(((1, 0), (0, 1)))

    @property
    def det(self) -> int:
        (p, q), (r, s) = self.m
        return p * s - q * r

    def inverse(self) -> "MappingClass":
        (p, q), (r, s) = self.m
        return MappingClass(((s, -q), (-r, p)))

    def __matmul__(self, other):
        if isinstance(other, MappingClass):
            return compose(self, other)
        return apply(self, other)

    def to_json(self) -> list[list[int]]:
        return [list(row) for row in self.m]

    @classmethod
    def from_json(cls, data) -> "MappingClass":
        (p, q), (r, s) = data
        return cls(((p, q), (r, s)))


def dehn_twist(c) -> MappingClass:
    """Positive Dehn twist about a primitive cycle: x -> x + det(x|c) c."""
    a, b = _require_primitive(c)
    return MappingClass(((1 + a * b, -a * a), (b * b, 1 - a * b)))


def is_dual_pair(c1, c2) -> bool:
    """True iff the two cycles generate H_1 of the fibre."""
    c1, c2 = _require_primitive(c1), _require_primitive(c2)
    return abs(det(c1, c2)) == 1


def compose(m1: MappingClass, m2: MappingClass) -> MappingClass:
    """The product ``m1 m2`` (apply m2 first)."""
    (a, b), (c, d) = m1.m
    (e, f), (g, h) = m2.m
    return MappingClass(((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h)))


def apply(m: MappingClass, c) -> Cycle:
    (p, q), (r, s) = m.m
    x = as_cycle(c)
    return Cycle(p * x.a + q * x.b, r * x.a + s * x.b)
