"""Critical-value hyperplanes of the commutator map inside a sector W_k.

Points of the sector are angle vectors ``0 <= a_1 <= ... <= a_n <= 1`` with
``sum(a) = k``.  A hyperplane is a pair ``(S, d)`` meaning
``sum(a_i for i in S) = d``; it is stored in canonical form (the subset of
the pair ``(S, d)``, ``(S^c, k - d)`` that is lexicographically smaller,
which is always the one containing index 1).  Indices are 1-based.

Only *good* hyperplanes (those meeting the open sector) cut chambers.  *Bad*
ones lie on the faces ``a_1 = 0`` or ``a_n = 1`` that get glued to the
neighbouring sector.

Orientation: the positive side of ``(S, d)`` is ``sum_S a > d``; adjacent
chambers there are labelled alpha (positive) and beta (negative).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import lp
from .group import (
    ConjugacyClass,
    as_class,
    format_rational,
    generic_class,
    parse_rational,
    rep_space_dimension,
)

SIDE_CONVENTION = "alpha-side is sum_S > d"


class ChamberError(ValueError):
    pass


class OnWallError(ChamberError):
    pass


class NotInteriorError(ChamberError):
    pass


class NonGenericError(ChamberError):
    pass


class DegenerateWallError(ChamberError):
    pass


class CodimensionError(ChamberError):
    pass


class FiberDimensionError(ChamberError):
    pass


@dataclass(frozen=True, order=True)
class Hyperplane:
    n: int
    sector_k: int
    subset: tuple[int, ...]
    level: int
    bad: bool = field(default=False, compare=False)

    @property
    def complement(self) -> tuple[int, ...]:
        return tuple(i for i in range(1, self.n + 1) if i not in self.subset)

    @property
    def label(self) -> str:
        return f"S={','.join(map(str, self.subset))};d={self.level}"

    def value(self, point: Sequence[Fraction]) -> Fraction:
        """``sum_S a - d``; positive on the alpha side."""
        return sum((Fraction(point[i - 1]) for i in self.subset), Fraction(0)) - self.level

    def side(self, point: Sequence[Fraction]) -> int:
        v = self.value(point)
        return (v > 0) - (v < 0)

    def coefficients(self) -> list[int]:
        return [1 if i in self.subset else 0 for i in range(1, self.n + 1)]

    def to_json(self) -> dict:
        return {"S": list(self.subset), "d": self.level, "bad": self.bad}


def canonical(n: int, k: int, subset: Iterable[int], level: int) -> tuple[tuple[int, ...], int]:
    s = tuple(sorted(set(subset)))
    if not s or len(s) >= n or s[0] < 1 or s[-1] > n:
        raise ValueError(f"subset {s} is not a proper nonempty subset of 1..{n}")
    comp = tuple(i for i in range(1, n + 1) if i not in s)
    if comp < s:
        return comp, k - level
    return s, level


def make_hyperplane(n: int, k: int, subset: Iterable[int], level: int, bad: bool = False) -> Hyperplane:
    s, d = canonical(n, k, subset, level)
    return Hyperplane(n, k, s, d, bad)


# -- sector constraint rows -------------------------------------------------

def _unit(n: int, i: int, v: int = 1) -> list[int]:
    row = [0] * n
    row[i] = v
    return row


def _closed_sector(n: int, k: int) -> tuple[list, list]:
    ub = []
    for i in range(n - 1):
        row = [0] * n
        row[i], row[i + 1] = 1, -1
        ub.append((row, 0))
    ub.append((_unit(n, n - 1), 1))
    eq = [([1] * n, k)]
    return ub, eq


def _open_sector(n: int) -> list:
    """Strict rows: a_1 > 0, a_i < a_{i+1}, a_n < 1."""
    strict = [(_unit(n, 0, -1), 0)]
    for i in range(n - 1):
        row = [0] * n
        row[i], row[i + 1] = 1, -1
        strict.append((row, 0))
    strict.append((_unit(n, n - 1), 1))
    return strict


def _side_row(h: Hyperplane, sign: int) -> tuple[list[int], int]:
    """Strict row for ``sign * (sum_S a - d) > 0``."""
    coeffs = h.coefficients()
    if sign > 0:
        return [-c for c in coeffs], -h.level
    return coeffs, h.level


def _check_sector(n: int, k: int) -> None:
    if n < 2 or not 1 <= k <= n - 1:
        raise ValueError(f"invalid sector k = {k} for n = {n}: need 1 <= k <= n - 1")


def enumerate_hyperplanes(n: int, k: int) -> list[Hyperplane]:
    """All canonical ``(S, d)`` cutting the closed sector in codimension one."""
    _check_sector(n, k)
    ub, eq = _closed_sector(n, k)
    strict = _open_sector(n)
    out = []
    for size in range(1, n):
        for s in itertools.combinations(range(1, n + 1), size):
            if s[0] != 1:
                continue  # the complement is the canonical representative
            for d in range(0, size + 1):
                h = Hyperplane(n, k, s, d)
                heq = eq + [(h.coefficients(), d)]
                # meeting the open sector already forces codimension one
                if lp.strict_point(strict, eq=heq, nv=n) is not None:
                    out.append(h)
                elif _on_glued_face(n, ub, heq):
                    out.append(Hyperplane(n, k, s, d, bad=True))
    return out


def _on_glued_face(n: int, ub: list, heq: list) -> bool:
    """True if ``heq`` cuts a full facet ``a_1 = 0`` or ``a_n = 1`` of the sector."""
    first = lp.maximize(_unit(n, 0), ub, heq)
    if first.status != lp.OPTIMAL:
        return False
    last = lp.maximize(_unit(n, n - 1, -1), ub, heq)
    if first.value != 0 and last.value != -1:
        return False
    return lp.affine_dimension(n, ub, heq) == n - 2


def good_walls(arrangement: Iterable[Hyperplane]) -> list[Hyperplane]:
    return [h for h in arrangement if not h.bad]


# -- chambers ----------------------------------------------------------------

@dataclass(frozen=True)
class Chamber:
    n: int
    sector_k: int
    walls: tuple[Hyperplane, ...]
    signs: tuple[int, ...]
    representative: tuple[Fraction, ...]
    index: int | None = None

    @property
    def id(self) -> str:
        return f"C{self.index}" if self.index is not None else "C?"

    @property
    def sign_map(self) -> dict[Hyperplane, int]:
        return dict(zip(self.walls, self.signs))

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "signs": {w.label: "+" if s > 0 else "-" for w, s in zip(self.walls, self.signs)},
            "representative": [format_rational(a) for a in self.representative],
        }


def _sector_of(point: Sequence[Fraction], arrangement: Sequence[Hyperplane]) -> tuple[int, int]:
    n = len(point)
    total = sum(point, Fraction(0))
    if total.denominator != 1:
        raise NotInteriorError(f"angle sum {total} is not an integer")
    k = int(total)
    for h in arrangement:
        if h.n != n or h.sector_k != k:
            raise NotInteriorError(f"point of sector (n={n}, k={k}) does not match arrangement of sector {h.sector_k}")
    return n, k


def locate_chamber(point: Sequence, arrangement: Sequence[Hyperplane]) -> Chamber:
    """Sign vector of ``point`` against the good hyperplanes of ``arrangement``."""
    pt = tuple(parse_rational(a) for a in point)
    if list(pt) != sorted(pt):
        raise NotInteriorError("angles must be sorted ascending")
    n, k = _sector_of(pt, arrangement)
    if not (pt[0] > 0 and pt[-1] < 1):
        raise NotInteriorError(f"{[format_rational(a) for a in pt]} lies on the sector boundary")
    walls = tuple(good_walls(arrangement))
    signs = []
    for w in walls:
        s = w.side(pt)
        if s == 0:
            raise OnWallError(f"point lies on wall {w.label}")
        signs.append(s)
    return Chamber(n, k, walls, tuple(signs), pt)


def enumerate_chambers(n: int, k: int, arrangement: Sequence[Hyperplane] | None = None) -> list[Chamber]:
    """One chamber per realisable sign vector, with a distinct-angle representative.

    Sign vectors are grown one wall at a time, pruning infeasible prefixes.
    """
    if arrangement is None:
        arrangement = enumerate_hyperplanes(n, k)
    else:
        _check_sector(n, k)
    walls = tuple(good_walls(arrangement))
    _, eq = _closed_sector(n, k)
    base = _open_sector(n)

    # each prefix keeps a witness point; a witness already on the requested
    # side of the next wall saves an LP
    start = lp.strict_point(base, eq=eq, nv=n)
    prefixes: list[tuple[tuple[int, ...], tuple[Fraction, ...]]] = [((), start[0])]
    for depth in range(len(walls)):
        grown = []
        for prefix, witness in prefixes:
            for s in (-1, 1):
                cand = prefix + (s,)
                if walls[depth].side(witness) == s:
                    grown.append((cand, witness))
                    continue
                rows = base + [_side_row(w, sg) for w, sg in zip(walls, cand)]
                found = lp.strict_point(rows, eq=eq, nv=n)
                if found is not None:
                    grown.append((cand, found[0]))
        prefixes = grown

    chambers = []
    for idx, (signs, _) in enumerate(prefixes):
        rows = base + [_side_row(w, sg) for w, sg in zip(walls, signs)]
        found = lp.strict_point(rows, eq=eq, nv=n)
        assert found is not None
        chambers.append(Chamber(n, k, walls, signs, tuple(found[0]), idx))
    return chambers


def adjacent_chambers(c1: Chamber, c2: Chamber) -> Hyperplane | None:
    """The single wall separating two chambers across a common facet, if any."""
    if (c1.n, c1.sector_k) != (c2.n, c2.sector_k):
        raise ChamberError("chambers belong to different sectors")
    if c1.walls != c2.walls:
        raise ChamberError("chambers were computed against different arrangements")
    diff = [i for i, (a, b) in enumerate(zip(c1.signs, c2.signs)) if a != b]
    if len(diff) != 1:
        return None
    wall = c1.walls[diff[0]]
    return wall if _facet_point(c1, wall) is not None else None


def _facet_point(chamber: Chamber, wall: Hyperplane):
    n, k = chamber.n, chamber.sector_k
    _, eq = _closed_sector(n, k)
    rows = _open_sector(n) + [
        _side_row(w, s) for w, s in zip(chamber.walls, chamber.signs) if w != wall
    ]
    return lp.strict_point(rows, eq=eq + [(wall.coefficients(), wall.level)], nv=n)


# -- walls -------------------------------------------------------------------

def integer_subsets(point: Sequence[Fraction]) -> list[tuple[tuple[int, ...], int]]:
    """Every proper nonempty subset with an integer coordinate sum."""
    n = len(point)
    hits = []
    for size in range(1, n):
        for s in itertools.combinations(range(1, n + 1), size):
            total = sum((Fraction(point[i - 1]) for i in s), Fraction(0))
            if total.denominator == 1:
                hits.append((s, int(total)))
    return hits


def _only_on(point: Sequence[Fraction], wall: Hyperplane) -> bool:
    allowed = {wall.subset, wall.complement}
    return all(s in allowed for s, _ in integer_subsets(point))


def generic_wall_point(
    wall: Hyperplane,
    within: Sequence[tuple[Hyperplane, int]] = (),
    max_denominator: int = 400,
) -> ConjugacyClass:
    """Smallest-denominator point on ``wall`` lying on no other hyperplane.

    The point has pairwise distinct angles strictly inside the sector.
    ``within`` optionally pins the point to one side of other walls (to pick
    a particular facet of the wall).
    """
    if wall.bad:
        raise ChamberError(f"{wall.label} is a bad hyperplane; generic points are taken on good walls")
    n, k = wall.n, wall.sector_k
    idx = [i - 1 for i in wall.subset]
    for q in range(2, max_denominator + 1):
        for nums in itertools.combinations(range(1, q), n):
            if sum(nums) != k * q or sum(nums[i] for i in idx) != wall.level * q:
                continue
            pt = tuple(Fraction(a, q) for a in nums)
            if any(h.side(pt) != s for h, s in within):
                continue
            if _only_on(pt, wall):
                return ConjugacyClass(n, pt)
    raise DegenerateWallError(f"no generic point with denominator <= {max_denominator} on {wall.label}")


@dataclass
class WallDatum:
    wall: Hyperplane
    gamma: ConjugacyClass
    split: tuple[ConjugacyClass, ConjugacyClass]
    codim: int | None = None
    fiber_dims: tuple[int, int] | None = None
    side_convention: str = SIDE_CONVENTION

    def to_json(self) -> dict:
        return {
            "wall": self.wall.to_json(),
            "gamma": [format_rational(a) for a in self.gamma.angles],
            "split": [[format_rational(a) for a in c.angles] for c in self.split],
            "codim": self.codim,
            "fiber_dims": list(self.fiber_dims) if self.fiber_dims is not None else None,
            "side_convention": self.side_convention,
        }


def wall_splitting(gamma, wall: Hyperplane) -> WallDatum:
    """Split a generic wall point into its two lower-rank blocks."""
    gamma = as_class(gamma)
    if gamma.n != wall.n:
        raise ChamberError("rank of gamma does not match the wall")
    if wall.value(gamma.angles) != 0:
        raise ChamberError(f"gamma {gamma} is not on {wall.label}")
    if not _only_on(gamma.angles, wall):
        raise NonGenericError(f"gamma {gamma} lies on more than one hyperplane")
    first = tuple(gamma.angles[i - 1] for i in wall.subset)
    second = tuple(gamma.angles[i - 1] for i in wall.complement)
    return WallDatum(wall, gamma, (ConjugacyClass(len(first), first), ConjugacyClass(len(second), second)))


def wall_codimension(datum: WallDatum, g: int) -> int:
    """Complex codimension of the reducible locus; stored on ``datum``."""
    n, k = datum.wall.n, datum.wall.sector_k
    top = rep_space_dimension(generic_class(n, k), g)
    low = sum(rep_space_dimension(c, g) for c in datum.split)
    diff = top - low
    if diff % 2 or diff <= 0:
        raise CodimensionError(
            f"wall {datum.wall.label} at genus {g}: dimension drop {diff} does not give a positive complex codimension"
        )
    datum.codim = diff // 2
    if datum.fiber_dims is not None:
        set_fiber_dims(datum, *datum.fiber_dims)
    return datum.codim


def set_fiber_dims(datum: WallDatum, a: int, b: int) -> WallDatum:
    """Attach fiber dimensions, enforcing ``a + b + 1 = codim``."""
    if a < 0 or b < 0:
        raise FiberDimensionError(f"wall {datum.wall.label}: fiber dimensions must be non-negative")
    if datum.codim is None:
        raise FiberDimensionError(f"wall {datum.wall.label}: codimension not computed yet")
    if a + b + 1 != datum.codim:
        raise FiberDimensionError(
            f"wall {datum.wall.label}: a + b + 1 = {a + b + 1} but codim = {datum.codim}"
        )
    datum.fiber_dims = (a, b)
    return datum


# -- gluing of sectors -------------------------------------------------------

def sector_transition(point: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Image of a point with ``a_1 = 0`` in W_k on the face ``a_n = 1`` of W_{k+1}."""
    pt = tuple(Fraction(a) for a in point)
    if pt[0] != 0:
        raise ChamberError("only points on the face a_1 = 0 are glued")
    return pt[1:] + (Fraction(1),)


def sector_transition_table(n: int) -> list[dict]:
    """Which bad face of each sector is identified with which face of the next."""
    table = []
    for k in range(1, n - 1):
        table.append(
            {
                "from_sector": k,
                "from_face": make_hyperplane(n, k, [1], 0).label,
                "to_sector": k + 1,
                "to_face": make_hyperplane(n, k + 1, [n], 1).label,
                "map": "(0, a_2, ..., a_n) -> (a_2, ..., a_n, 1)",
            }
        )
    return table
