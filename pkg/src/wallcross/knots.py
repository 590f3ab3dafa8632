"""Fibred knots given by the monodromy action on first homology of the fiber.

The action ``M`` is a ``2g x 2g`` integer matrix in the basis
``a_1, b_1, ..., a_g, b_g``.  The Alexander polynomial is the characteristic
polynomial ``det(tI - M)``; the Lefschetz polynomial on the Jacobian is
``c(t) = det(I - tM)`` and its value at 1 is ``det(I - M)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Sequence

from .polynomials import IntPolynomial

Matrix = tuple[tuple[int, ...], ...]

SAMPLES = {"trefoil": "trefoil.json", "figure-eight": "figure_eight.json"}


class KnotFormatError(ValueError):
    """Knot input that cannot be parsed into a genus and a square integer matrix."""


class KnotValidationError(ValueError):
    def __init__(self, report: "ValidationReport"):
        super().__init__("; ".join(report.errors))
        self.report = report


@dataclass(frozen=True)
class FibredKnot:
    name: str
    genus: int
    monodromy: Matrix

    def __post_init__(self) -> None:
        size = 2 * self.genus
        if self.genus < 1:
            raise KnotFormatError("genus must be a positive integer")
        if len(self.monodromy) != size or any(len(r) != size for r in self.monodromy):
            raise KnotFormatError(f"monodromy must be {size} x {size} for genus {self.genus}")

    @classmethod
    def from_json(cls, data: dict) -> "FibredKnot":
        try:
            name = str(data.get("name", "unnamed"))
            genus = data["genus"]
            rows = data["monodromy"]
        except (KeyError, AttributeError, TypeError) as exc:
            raise KnotFormatError(f"knot file needs 'genus' and 'monodromy': {exc}") from exc
        if not isinstance(genus, int) or isinstance(genus, bool):
            raise KnotFormatError("genus must be an integer")
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            raise KnotFormatError("monodromy must be a list of rows")
        for r in rows:
            for v in r:
                if not isinstance(v, int) or isinstance(v, bool):
                    raise KnotFormatError(f"monodromy entry {v!r} is not an integer")
        return cls(name, genus, tuple(tuple(r) for r in rows))

    def to_json(self) -> dict:
        return {"name": self.name, "genus": self.genus, "monodromy": [list(r) for r in self.monodromy]}


def load_knot(path: str | Path) -> FibredKnot:
    """Read a knot file; a bare sample name (``trefoil``, ``figure-eight``) loads the bundled copy."""
    p = Path(path)
    if p.is_file():
        text = p.read_text(encoding="utf-8")
    else:
        key = p.name.removesuffix(".json").replace("_", "-")
        if key not in SAMPLES or p.parent != Path("."):
            raise FileNotFoundError(f"knot file not found: {path}")
        text = resources.files("wallcross.data").joinpath(SAMPLES[key]).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise KnotFormatError(f"malformed JSON in {path}: {exc}") from exc
    return FibredKnot.from_json(data)


# -- exact linear algebra ----------------------------------------------------

def determinant(m: Sequence[Sequence[int]]) -> int:
    """Integer determinant by fraction-free (Bareiss) elimination."""
    a = [list(map(int, r)) for r in m]
    size = len(a)
    if size == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(size - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, size) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1]


def characteristic_polynomial(m: Sequence[Sequence[int]]) -> IntPolynomial:
    """``det(tI - M)`` by the Faddeev-LeVerrier recursion."""
    size = len(m)
    mat = [[Fraction(v) for v in r] for r in m]
    coeffs = [Fraction(0)] * (size + 1)
    coeffs[size] = Fraction(1)
    work = [[Fraction(0)] * size for _ in range(size)]  # M_0 = 0
    for k in range(1, size + 1):
        # M_k = M M_{k-1} + c_{n-k+1} I ;  c_{n-k} = -tr(M M_k) / k
        prod = _matmul(mat, work)
        for i in range(size):
            prod[i][i] += coeffs[size - k + 1]
        work = prod
        am = _matmul(mat, work)
        coeffs[size - k] = -sum(am[i][i] for i in range(size)) / k
    if any(c.denominator != 1 for c in coeffs):
        raise ArithmeticError("non-integral characteristic polynomial")
    return IntPolynomial(int(c) for c in coeffs)


def _matmul(a, b):
    size = len(a)
    return [[sum(a[i][t] * b[t][j] for t in range(size)) for j in range(size)] for i in range(size)]


def polynomial_determinant(m: Sequence[Sequence[IntPolynomial]]) -> IntPolynomial:
    """Bareiss elimination over Z[t] for matrices whose leading minors have unit constant term."""
    a = [list(r) for r in m]
    size = len(a)
    prev = IntPolynomial((1,))
    for k in range(size - 1):
        if not a[k][k].coeffs or a[k][k].coeffs[0] not in (1, -1):
            raise ValueError("leading principal minor without unit constant term")
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]).exact_div(prev)
        prev = a[k][k]
    return a[-1][-1] if size else IntPolynomial((1,))


# -- knot invariants -----------------------------------------------------------

def alexander_polynomial(knot: FibredKnot) -> IntPolynomial:
    """Characteristic polynomial ``det(tI - M)`` (no symmetrisation)."""
    return characteristic_polynomial(knot.monodromy)


def jacobian_lefschetz_polynomial(knot: FibredKnot) -> IntPolynomial:
    """``c(t) = det(I - tM)``; the ``t^k`` coefficient is ``(-1)^k tr(wedge^k M)``."""
    size = len(knot.monodromy)
    one_minus_tm = [
        [IntPolynomial(((1 if i == j else 0), -knot.monodromy[i][j])) for j in range(size)]
        for i in range(size)
    ]
    return polynomial_determinant(one_minus_tm)


def jacobian_lefschetz_number(knot: FibredKnot) -> int:
    size = len(knot.monodromy)
    return determinant(
        [[(1 if i == j else 0) - knot.monodromy[i][j] for j in range(size)] for i in range(size)]
    )


def standard_form(genus: int) -> Matrix:
    """Intersection form in the basis a_1, b_1, ..., a_g, b_g."""
    size = 2 * genus
    j = [[0] * size for _ in range(size)]
    for h in range(genus):
        j[2 * h][2 * h + 1] = 1
        j[2 * h + 1][2 * h] = -1
    return tuple(tuple(r) for r in j)


def is_symplectic(m: Sequence[Sequence[int]], genus: int) -> bool:
    j = standard_form(genus)
    mt = [list(r) for r in zip(*m)]
    return _matmul(_matmul(mt, j), m) == [list(r) for r in j]


@dataclass
class ValidationReport:
    determinant: int
    det_i_minus_m: int
    errors: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "det_M": self.determinant,
            "det_I_minus_M": self.det_i_minus_m,
            "errors": self.errors,
            "warnings": self.warnings,
        }


def validate(knot: FibredKnot, allow_qhs: bool = False) -> ValidationReport:
    """Integrality, invertibility and the homology-sphere condition.

    With ``allow_qhs`` the last check only asks ``det(I - M) != 0``
    (rational homology sphere).  A non-symplectic matrix is a warning.
    """
    det_m = determinant(knot.monodromy)
    c1 = jacobian_lefschetz_number(knot)
    report = ValidationReport(det_m, c1)
    if abs(det_m) != 1:
        report.errors.append(f"|det M| = {abs(det_m)}, expected 1 (monodromy not invertible over Z)")
    if allow_qhs:
        if c1 == 0:
            report.errors.append("det(I - M) = 0: not a rational homology sphere")
    elif abs(c1) != 1:
        report.errors.append(f"|det(I - M)| = {abs(c1)}, expected 1 (homology sphere condition)")
    if not is_symplectic(knot.monodromy, knot.genus):
        report.warnings.append("M does not preserve the standard intersection form")
    return report


def require_valid(knot: FibredKnot, allow_qhs: bool = False) -> FibredKnot:
    report = validate(knot, allow_qhs)
    if not report.ok:
        raise KnotValidationError(report)
    return knot
