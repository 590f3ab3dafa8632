"""Integer polynomials in ``t`` and integer polynomials in named symbols.

``IntPolynomial`` carries Poincare and Lefschetz polynomials; ``InvariantExpr``
carries the (partly symbolic) Lefschetz numbers attached to chambers.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import Iterable, Mapping

__all__ = [
    "IntPolynomial",
    "InvariantExpr",
    "cp_poincare",
    "cp_euler",
    "flag_euler",
    "evaluate_at_one",
    "check_star_identity",
    "check_double_star_identity",
]


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    out = [int(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class IntPolynomial:
    """Ascending integer coefficients; the zero polynomial is ``()``."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @classmethod
    def t(cls) -> "IntPolynomial":
        return cls((0, 1))

    @classmethod
    def const(cls, c: int) -> "IntPolynomial":
        return cls((c,))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def _coerce(self, other) -> "IntPolynomial":
        if isinstance(other, IntPolynomial):
            return other
        if isinstance(other, int):
            return IntPolynomial((other,))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        size = max(len(a), len(b))
        return IntPolynomial(
            (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(size)
        )

    __radd__ = __add__

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPolynomial()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "IntPolynomial":
        result = IntPolynomial((1,))
        for _ in range(e):
            result = result * self
        return result

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def reversed(self, degree: int | None = None) -> "IntPolynomial":
        """``t^degree * p(1/t)``; ``degree`` defaults to the actual degree."""
        if degree is None:
            degree = self.degree
        if degree < self.degree:
            raise ValueError("reversal degree below the polynomial degree")
        padded = list(self.coeffs) + [0] * (degree + 1 - len(self.coeffs))
        return IntPolynomial(reversed(padded))

    def exact_div(self, other: "IntPolynomial") -> "IntPolynomial":
        """Quotient when ``other`` divides ``self`` exactly over the integers.

        Division runs from the constant term up, so the divisor's constant
        term must be a unit (+1 or -1).
        """
        if not other.coeffs or other.coeffs[0] not in (1, -1):
            raise ValueError("divisor must have constant term +1 or -1")
        rem = list(self.coeffs)
        lead = other.coeffs[0]
        q = []
        for i in range(max(0, len(rem) - len(other.coeffs) + 1)):
            c = rem[i] * lead
            q.append(c)
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[i + j] -= c * b
        if any(rem):
            raise ValueError("division is not exact")
        return IntPolynomial(q)

    def to_json(self) -> list[int]:
        return list(self.coeffs)

    def format(self, descending: bool = False, var: str = "t") -> str:
        terms = list(enumerate(self.coeffs))
        if descending:
            terms.reverse()
        parts = []
        for power, c in terms:
            if c == 0:
                continue
            mag = abs(c)
            if power == 0:
                body = str(mag)
            else:
                mono = var if power == 1 else f"{var}^{power}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        if not parts:
            return "0"
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self) -> str:
        return self.format()


Monomial = tuple[tuple[str, int], ...]


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    exps = dict(a)
    for s, e in b:
        exps[s] = exps.get(s, 0) + e
    return tuple(sorted(exps.items()))


def _mono_key(m: Monomial):
    return (sum(e for _, e in m), m)


class InvariantExpr:
    """Integer polynomial in opaque symbols such as ``"mu(2; 2/5,3/5)"``.

    Terms are kept sorted (by total degree, then by monomial) so equal
    expressions have identical term tuples.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, int] | Iterable[tuple[Monomial, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Monomial, int] = {}
        for mono, c in items:
            exps: dict[str, int] = {}
            for s, e in mono:
                exps[s] = exps.get(s, 0) + int(e)
            mono = tuple(sorted((s, e) for s, e in exps.items() if e))
            acc[mono] = acc.get(mono, 0) + int(c)
        self.terms: tuple[tuple[Monomial, int], ...] = tuple(
            sorted(((m, c) for m, c in acc.items() if c), key=lambda mc: _mono_key(mc[0]))
        )

    @classmethod
    def symbol(cls, name: str) -> "InvariantExpr":
        return cls({((name, 1),): 1})

    @classmethod
    def const(cls, c: int) -> "InvariantExpr":
        return cls({(): c})

    def _coerce(self, other):
        if isinstance(other, InvariantExpr):
            return other
        if isinstance(other, int):
            return InvariantExpr.const(other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.terms)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return InvariantExpr(list(self.terms) + list(other.terms))

    __radd__ = __add__

    def __neg__(self) -> "InvariantExpr":
        return InvariantExpr((m, -c) for m, c in self.terms)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return InvariantExpr(
            (_mono_mul(m1, m2), c1 * c2) for m1, c1 in self.terms for m2, c2 in other.terms
        )

    __rmul__ = __mul__

    @property
    def symbols(self) -> frozenset[str]:
        return frozenset(s for m, _ in self.terms for s, _ in m)

    @property
    def is_constant(self) -> bool:
        return all(not m for m, _ in self.terms)

    def constant_value(self) -> int:
        if not self.is_constant:
            raise ValueError(f"expression {self} is not constant")
        return self.terms[0][1] if self.terms else 0

    def substitute(self, values: Mapping[str, int]) -> "InvariantExpr":
        """Replace the symbols present in ``values`` by integers."""
        out = []
        for mono, c in self.terms:
            rest = []
            for s, e in mono:
                if s in values:
                    c *= int(values[s]) ** e
                else:
                    rest.append((s, e))
            out.append((tuple(rest), c))
        return InvariantExpr(out)

    def divisible_by(self, m: int) -> bool:
        return all(c % m == 0 for _, c in self.terms)

    def exact_div(self, m: int) -> "InvariantExpr":
        if not self.divisible_by(m):
            raise ValueError(f"{self} is not divisible by {m}")
        return InvariantExpr((mono, c // m) for mono, c in self.terms)

    def to_json(self) -> list[dict]:
        return [{"coeff": c, "monomial": {s: e for s, e in m}} for m, c in self.terms]

    @classmethod
    def from_json(cls, data: list[dict]) -> "InvariantExpr":
        return cls((tuple(sorted(d["monomial"].items())), d["coeff"]) for d in data)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for mono, c in self.terms:
            factors = [s if e == 1 else f"{s}^{e}" for s, e in mono]
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            pieces.append(("-" if c < 0 else "+", body))
        text = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"InvariantExpr({str(self)!r})"


def cp_poincare(a: int) -> IntPolynomial:
    """Poincare polynomial of CP^a: ``1 + t^2 + ... + t^(2a)``."""
    if a < 0:
        raise ValueError("a must be non-negative")
    coeffs = [0] * (2 * a + 1)
    coeffs[::2] = [1] * (a + 1)
    return IntPolynomial(coeffs)


def cp_euler(a: int) -> int:
    if a < 0:
        raise ValueError("a must be non-negative")
    return a + 1


def flag_euler(n: int) -> int:
    """Euler characteristic of the full flag variety of C^n."""
    if n < 1:
        raise ValueError("n must be positive")
    return factorial(n)


def evaluate_at_one(p: IntPolynomial) -> int:
    return sum(p.coeffs)


def check_star_identity(
    p_alpha: IntPolynomial,
    p_beta: IntPolynomial,
    p_sigma: IntPolynomial,
    a: int,
    b: int,
) -> bool:
    """``P(R_alpha) = P(R_beta) + (P(CP^a) - P(CP^b)) * P(Sigma)`` exactly."""
    return p_alpha == p_beta + (cp_poincare(a) - cp_poincare(b)) * p_sigma


def check_double_star_identity(
    m_alpha: IntPolynomial,
    m_beta: IntPolynomial,
    m_gamma1: IntPolynomial,
    m_gamma2: IntPolynomial,
    a: int,
    b: int,
) -> bool:
    """Lefschetz-polynomial wall-crossing identity, plus its value at ``t = 1``.

    The second check is the numeric jump
    ``mu_alpha - mu_beta = (chi(CP^a) - chi(CP^b)) mu_gamma1 mu_gamma2``.
    """
    bracket = cp_poincare(a) - cp_poincare(b)
    poly_ok = m_alpha - m_beta == bracket * m_gamma1 * m_gamma2
    numeric_ok = evaluate_at_one(m_alpha) - evaluate_at_one(m_beta) == (
        cp_euler(a) - cp_euler(b)
    ) * evaluate_at_one(m_gamma1) * evaluate_at_one(m_gamma2)
    if poly_ok and not numeric_ok:
        raise AssertionError("evaluation at t = 1 failed to respect the polynomial identity")
    return poly_ok and numeric_ok
