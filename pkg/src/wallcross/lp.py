"""Exact rational linear programming.

A dense two-phase tableau simplex with Bland's anti-cycling rule, over
``Fraction``.  Problems here are tiny (a handful of variables, a few dozen
rows), so clarity wins over speed.

All variables are non-negative.  Constraints are given as ``(coeffs, rhs)``
pairs meaning ``coeffs . x <= rhs`` (``ub``) or ``coeffs . x == rhs`` (``eq``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Row = tuple[Sequence[Fraction | int], Fraction | int]

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    value: Fraction | None = None
    x: tuple[Fraction, ...] | None = None


def _pivot(tab: list[list[Fraction]], basis: list[int], r: int, c: int) -> None:
    prow = tab[r]
    inv = 1 / prow[c]
    if inv != 1:
        tab[r] = prow = [v * inv for v in prow]
    nz = [j for j, v in enumerate(prow) if v]
    for i, row in enumerate(tab):
        if i != r:
            f = row[c]
            if f:
                row = row[:]
                for j in nz:
                    row[j] -= f * prow[j]
                tab[i] = row
    basis[r] = c


def _run(tab: list[list[Fraction]], basis: list[int], allowed: int) -> bool:
    """Minimise the objective in the last row; False if unbounded.

    Only columns ``< allowed`` may enter.  The last column is the rhs.
    """
    obj = tab[-1]
    m = len(tab) - 1
    while True:
        obj = tab[-1]
        enter = next((j for j in range(allowed) if obj[j] < 0), None)
        if enter is None:
            return True
        best = None
        leave = None
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            return False
        _pivot(tab, basis, leave, enter)


def maximize(
    c: Sequence[Fraction | int],
    ub: Sequence[Row] = (),
    eq: Sequence[Row] = (),
) -> LPResult:
    """Maximise ``c . x`` subject to ``ub`` and ``eq`` rows with ``x >= 0``."""
    nv = len(c)
    rows: list[tuple[list[Fraction], Fraction, bool]] = []
    for coeffs, rhs in ub:
        rows.append(([Fraction(a) for a in coeffs], Fraction(rhs), True))
    for coeffs, rhs in eq:
        rows.append(([Fraction(a) for a in coeffs], Fraction(rhs), False))
    for coeffs, _, _ in rows:
        if len(coeffs) != nv:
            raise ValueError("constraint width does not match the objective")

    m = len(rows)
    n_slack = sum(1 for r in rows if r[2])
    width = nv + n_slack + m  # structural, slack, artificial
    tab: list[list[Fraction]] = []
    basis: list[int] = []
    s = 0
    for i, (coeffs, rhs, is_ub) in enumerate(rows):
        row = coeffs + [Fraction(0)] * (n_slack + m) + [rhs]
        if is_ub:
            row[nv + s] = Fraction(1)
            s += 1
        if rhs < 0:
            row = [-v for v in row]
        row[nv + n_slack + i] = Fraction(1)
        tab.append(row)
        basis.append(nv + n_slack + i)

    # phase one: minimise the sum of artificials
    phase1 = [Fraction(0)] * (width + 1)
    for row in tab:
        for j in range(nv + n_slack):
            phase1[j] -= row[j]
        phase1[-1] -= row[-1]
    tab.append(phase1)
    _run(tab, basis, nv + n_slack)
    if tab[-1][-1] != 0:
        return LPResult(INFEASIBLE)

    # drive remaining artificials out of the basis
    first_art = nv + n_slack
    for i in range(m):
        if basis[i] >= first_art:
            col = next((j for j in range(first_art) if tab[i][j] != 0), None)
            if col is not None:
                _pivot(tab, basis, i, col)
    keep = [i for i in range(m) if basis[i] < first_art]
    tab = [tab[i][:first_art] + [tab[i][-1]] for i in keep]
    basis = [basis[i] for i in keep]

    # phase two: minimise -c . x
    obj = [Fraction(0)] * (first_art + 1)
    for j, cj in enumerate(c):
        obj[j] = -Fraction(cj)
    for i, b in enumerate(basis):
        f = obj[b]
        if f:
            obj = [a - f * v for a, v in zip(obj, tab[i])]
    tab.append(obj)
    if not _run(tab, basis, first_art):
        return LPResult(UNBOUNDED)

    x = [Fraction(0)] * nv
    for i, b in enumerate(basis):
        if b < nv:
            x[b] = tab[i][-1]
    value = sum((Fraction(cj) * xj for cj, xj in zip(c, x)), Fraction(0))
    return LPResult(OPTIMAL, value, tuple(x))


def feasible_point(ub: Sequence[Row] = (), eq: Sequence[Row] = (), nv: int | None = None):
    """Some point of ``{x >= 0 : ub, eq}``, or None."""
    if nv is None:
        nv = len((list(ub) + list(eq))[0][0])
    res = maximize([0] * nv, ub, eq)
    return res.x if res.status == OPTIMAL else None


def strict_point(
    strict: Sequence[Row],
    ub: Sequence[Row] = (),
    eq: Sequence[Row] = (),
    nv: int | None = None,
) -> tuple[tuple[Fraction, ...], Fraction] | None:
    """Point with every ``strict`` row satisfied strictly, or None.

    Maximises the common margin ``t`` (capped at 1) by which the strict rows
    hold; returns ``(x, t)`` with ``t > 0`` on success.
    """
    rows = list(strict) + list(ub) + list(eq)
    if nv is None:
        nv = len(rows[0][0])
    ext_strict = [(list(a) + [1], b) for a, b in strict]
    ext_ub = [(list(a) + [0], b) for a, b in ub] + [([0] * nv + [1], 1)]
    ext_eq = [(list(a) + [0], b) for a, b in eq]
    res = maximize([0] * nv + [1], ext_strict + ext_ub, ext_eq)
    if res.status != OPTIMAL or res.value <= 0:
        return None
    return res.x[:nv], res.value


def affine_dimension(nv: int, ub: Sequence[Row] = (), eq: Sequence[Row] = ()) -> int:
    """Dimension of the polyhedron ``{x >= 0 : ub, eq}``; -1 if empty.

    Inequalities (including ``x >= 0``) that can never be strict are promoted
    to equalities; the dimension is ``nv`` minus the rank of the equalities.
    """
    if maximize([0] * nv, ub, eq).status != OPTIMAL:
        return -1
    ineqs: list[tuple[list[Fraction], Fraction]] = [
        ([Fraction(a) for a in coeffs], Fraction(b)) for coeffs, b in ub
    ]
    for j in range(nv):
        unit = [Fraction(0)] * nv
        unit[j] = Fraction(-1)
        ineqs.append((unit, Fraction(0)))
    equalities = [([Fraction(a) for a in coeffs], Fraction(b)) for coeffs, b in eq]
    for coeffs, b in ineqs:
        # max slack b - a.x; zero means the row is an implicit equality
        res = maximize([-a for a in coeffs], list(ub), list(eq))
        if res.status == OPTIMAL and res.value + b == 0:
            equalities.append((coeffs, b))
    return nv - rank([coeffs for coeffs, _ in equalities])


def rank(matrix: Sequence[Sequence[Fraction | int]]) -> int:
    """Exact rank by Gaussian elimination."""
    rows = [[Fraction(v) for v in r] for r in matrix]
    if not rows:
        return 0
    r = 0
    ncols = len(rows[0])
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c] / rows[r][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r
