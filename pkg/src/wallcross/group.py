"""Exact eigenvalue-angle coordinates on conjugacy classes of SU(n).

A class is stored by its sorted angles ``0 <= a_1 <= ... <= a_n < 1``; the
eigenvalues are ``exp(2*pi*i*a_j)``.  The angle sum is an integer ``k`` (the
sector index).  Everything here is exact ``Fraction`` arithmetic.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

__all__ = [
    "ConjugacyClass",
    "InvalidClassError",
    "normalize",
    "class_dimension",
    "rep_space_dimension",
    "central_regular_values",
    "is_central",
    "parse_rational",
    "format_rational",
]


class InvalidClassError(ValueError):
    """The angle data does not describe a conjugacy class of SU(n)."""


def parse_rational(value: str | int | Fraction) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or an int into a Fraction.

    Floats are refused: coordinates must be exact.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {value!r}") from exc
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def format_rational(x: Fraction | int) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class ConjugacyClass:
    n: int
    angles: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.n < 1 or len(self.angles) != self.n:
            raise InvalidClassError(f"expected {self.n} angles, got {len(self.angles)}")
        if any(not 0 <= a < 1 for a in self.angles):
            raise InvalidClassError("angles must lie in [0, 1)")
        if list(self.angles) != sorted(self.angles):
            raise InvalidClassError("angles must be sorted ascending")
        total = sum(self.angles, Fraction(0))
        if total.denominator != 1:
            raise InvalidClassError(f"angle sum {total} is not an integer")

    @property
    def k(self) -> int:
        """Sector index: the (integer) angle sum."""
        return int(sum(self.angles, Fraction(0)))

    @property
    def multiplicities(self) -> tuple[int, ...]:
        counts = Counter(self.angles)
        return tuple(counts[a] for a in sorted(counts))

    @property
    def key(self) -> str:
        """Canonical text id, e.g. ``"2/5,3/5"``."""
        return ",".join(format_rational(a) for a in self.angles)

    def to_json(self) -> dict:
        return {"n": self.n, "angles": [format_rational(a) for a in self.angles]}

    @classmethod
    def from_json(cls, data: dict) -> "ConjugacyClass":
        angles = [parse_rational(a) for a in data["angles"]]
        if int(data["n"]) != len(angles):
            raise InvalidClassError("'n' does not match the number of angles")
        return normalize(angles)

    def __str__(self) -> str:
        return f"({self.key})"


def normalize(raw_angles: Iterable[str | int | Fraction]) -> ConjugacyClass:
    """Reduce angles mod 1, sort them, and check the sum is an integer."""
    reduced = sorted(parse_rational(a) % 1 for a in raw_angles)
    if not reduced:
        raise InvalidClassError("at least one angle is required")
    total = sum(reduced, Fraction(0))
    if total.denominator != 1:
        raise InvalidClassError(f"angle sum {total} is not an integer: not an SU(n) class")
    return ConjugacyClass(len(reduced), tuple(reduced))


def class_dimension(c: ConjugacyClass) -> int:
    """Real dimension of the adjoint orbit: ``n^2 - sum(m_j^2)``."""
    return c.n * c.n - sum(m * m for m in c.multiplicities)


def rep_space_dimension(c: ConjugacyClass, g: int) -> int:
    """``(2g - 2) n^2 + 2 + dim C(c)``.

    This is a manifold dimension only when ``c`` is a regular value.
    """
    if g < 1:
        raise ValueError("genus must be positive")
    return (2 * g - 2) * c.n * c.n + 2 + class_dimension(c)


def central_regular_values(n: int) -> list[ConjugacyClass]:
    """Central classes ``exp(2 pi i k/n) I`` with ``gcd(k, n) = 1``."""
    if n < 1:
        raise ValueError("n must be positive")
    return [
        ConjugacyClass(n, (Fraction(k, n),) * n)
        for k in range(n)
        if gcd(k, n) == 1
    ]


def is_central(c: ConjugacyClass) -> bool:
    return len(set(c.angles)) == 1


def generic_class(n: int, k: int) -> ConjugacyClass:
    """Some class of sector ``k`` with pairwise distinct angles (used for dimension counts)."""
    if n == 1:
        return ConjugacyClass(1, (Fraction(0),))
    if not 1 <= k <= n - 1:
        raise ValueError(f"sector {k} has no distinct-angle classes for n = {n}")
    # symmetric spread around k/n, small enough to stay inside (0, 1)
    delta = Fraction(min(k, n - k), n * n)
    centre = Fraction(k, n)
    angles = tuple(centre + (j - Fraction(n - 1, 2)) * delta for j in range(n))
    return ConjugacyClass(n, angles)


def as_class(angles: Sequence[Fraction] | ConjugacyClass) -> ConjugacyClass:
    if isinstance(angles, ConjugacyClass):
        return angles
    return normalize(angles)
