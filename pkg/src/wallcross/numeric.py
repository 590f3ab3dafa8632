"""Floating-point checks of the commutator-product map.

``psi(A_1, B_1, ..., A_g, B_g) = [A_1, B_1] ... [A_g, B_g]`` with
``[A, B] = A B A^-1 B^-1``.  The checks here are numerical sanity tests of
its algebraic properties, run on seeded random tuples.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

DEFAULT_TOL = 1e-10
FD_STEP = 1e-5
RANK_TOL = 1e-6


class IndeterminateRankError(ArithmeticError):
    """A singular value sits too close to the rank threshold to call."""


def unitarity_defect(u: np.ndarray) -> float:
    n = u.shape[0]
    return float(np.linalg.norm(u.conj().T @ u - np.eye(n), 2))


@dataclass(frozen=True)
class UnitaryTuple:
    n: int
    g: int
    matrices: tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        if len(self.matrices) != 2 * self.g:
            raise ValueError(f"expected {2 * self.g} matrices, got {len(self.matrices)}")
        for m in self.matrices:
            if m.shape != (self.n, self.n):
                raise ValueError(f"matrix of shape {m.shape}, expected {(self.n, self.n)}")

    @property
    def unitarity_defect(self) -> float:
        return max(unitarity_defect(m) for m in self.matrices)

    def conjugate(self, u: np.ndarray) -> "UnitaryTuple":
        uinv = u.conj().T
        return UnitaryTuple(self.n, self.g, tuple(u @ m @ uinv for m in self.matrices))


def identity_tuple(n: int, g: int) -> UnitaryTuple:
    return UnitaryTuple(n, g, tuple(np.eye(n, dtype=complex) for _ in range(2 * g)))


def evaluate_psi(t: UnitaryTuple) -> np.ndarray:
    """Ordered product of the group commutators; inverses are adjoints."""
    out = np.eye(t.n, dtype=complex)
    for i in range(t.g):
        a, b = t.matrices[2 * i], t.matrices[2 * i + 1]
        out = out @ a @ b @ a.conj().T @ b.conj().T
    return out


def haar_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary: QR of a complex Ginibre matrix with phase fix."""
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def sample_haar(n: int, g: int, seed: int) -> UnitaryTuple:
    if n < 1 or g < 1:
        raise ValueError("n and g must be positive")
    rng = np.random.default_rng(seed)
    return UnitaryTuple(n, g, tuple(haar_unitary(n, rng) for _ in range(2 * g)))


def make_reducible(n1: int, n2: int, g: int, seed: int) -> UnitaryTuple:
    """Tuple of block-diagonal unitaries with Haar blocks of sizes ``n1``, ``n2``."""
    if n1 < 1 or n2 < 1 or g < 1:
        raise ValueError("block sizes and genus must be positive")
    rng = np.random.default_rng(seed)
    n = n1 + n2
    mats = []
    for _ in range(2 * g):
        m = np.zeros((n, n), dtype=complex)
        m[:n1, :n1] = haar_unitary(n1, rng)
        m[n1:, n1:] = haar_unitary(n2, rng)
        mats.append(m)
    return UnitaryTuple(n, g, tuple(mats))


@dataclass(frozen=True)
class SpecialUnitaryReport:
    det_residual: float
    unitarity_residual: float
    input_defect: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.det_residual < self.tol and self.unitarity_residual < self.tol

    def to_json(self) -> dict:
        return {
            "det_residual": self.det_residual,
            "unitarity_residual": self.unitarity_residual,
            "input_defect": self.input_defect,
            "pass": self.passed,
        }


def check_special_unitary(t: UnitaryTuple, tol: float = DEFAULT_TOL) -> SpecialUnitaryReport:
    """``|det psi - 1|`` and the unitarity defect of ``psi``."""
    p = evaluate_psi(t)
    return SpecialUnitaryReport(
        float(abs(np.linalg.det(p) - 1)), unitarity_defect(p), t.unitarity_defect, tol
    )


def check_equivariance(t: UnitaryTuple, u: np.ndarray, tol: float = DEFAULT_TOL) -> float:
    """Operator-norm distance between ``psi(u t u^-1)`` and ``u psi(t) u^-1``."""
    if unitarity_defect(u) > tol:
        raise ValueError("conjugating matrix is not unitary within tolerance")
    lhs = evaluate_psi(t.conjugate(u))
    rhs = u @ evaluate_psi(t) @ u.conj().T
    return float(np.linalg.norm(lhs - rhs, 2))


# -- differential --------------------------------------------------------------

def skew_hermitian_basis(n: int) -> list[np.ndarray]:
    """Orthonormal basis of u(n) for the inner product ``Re tr(X^* Y)``."""
    basis = []
    for j in range(n):
        e = np.zeros((n, n), dtype=complex)
        e[j, j] = 1j
        basis.append(e)
    for j, k in itertools.combinations(range(n), 2):
        e = np.zeros((n, n), dtype=complex)
        e[j, k], e[k, j] = 1, -1
        basis.append(e / np.sqrt(2))
        e = np.zeros((n, n), dtype=complex)
        e[j, k], e[k, j] = 1j, 1j
        basis.append(e / np.sqrt(2))
    return basis


def traceless_basis(n: int) -> np.ndarray:
    """Orthonormal basis of su(n) as rows of real coordinates on u(n)."""
    # su(n) is the orthogonal complement of i*I, which is (1,..,1)/sqrt(n) on the diagonal block
    diag = np.eye(n) - np.ones((n, n)) / n
    q, _ = np.linalg.qr(diag[:, : n - 1])
    rows = []
    for col in q.T:
        row = np.zeros(n * n)
        row[:n] = col
        rows.append(row)
    for j in range(n, n * n):
        row = np.zeros(n * n)
        row[j] = 1
        rows.append(row)
    return np.array(rows).reshape(n * n - 1, n * n) if n > 1 else np.zeros((0, 1))


def _coords(x: np.ndarray, basis: list[np.ndarray]) -> np.ndarray:
    return np.array([np.real(np.trace(b.conj().T @ x)) for b in basis])


def differential(t: UnitaryTuple, step: float = FD_STEP) -> np.ndarray:
    """Central-difference Jacobian of ``psi``, translated to the identity.

    Columns run over an orthonormal basis of ``2g`` copies of u(n) (moving
    ``A -> A exp(s X)``); rows are coordinates in su(n) of
    ``psi(t)^-1 d psi``.
    """
    n = t.n
    basis = skew_hermitian_basis(n)
    proj = traceless_basis(n)
    base_inv = evaluate_psi(t).conj().T
    cols = []
    for slot in range(2 * t.g):
        for x in basis:
            plus = list(t.matrices)
            minus = list(t.matrices)
            plus[slot] = plus[slot] @ expm(step * x)
            minus[slot] = minus[slot] @ expm(-step * x)
            d = (evaluate_psi(UnitaryTuple(n, t.g, tuple(plus)))
                 - evaluate_psi(UnitaryTuple(n, t.g, tuple(minus)))) / (2 * step)
            y = base_inv @ d
            y = (y - y.conj().T) / 2  # skew-hermitian part
            cols.append(proj @ _coords(y, basis))
    return np.array(cols).T


def differential_rank(t: UnitaryTuple, tol: float = RANK_TOL, step: float = FD_STEP) -> int:
    """Numerical rank of the differential; at most ``n^2 - 1``.

    Singular values are measured against ``max(s_max, 1)``; any within two
    decades of ``tol`` make the rank indeterminate.
    """
    jac = differential(t, step)
    if jac.size == 0:
        return 0
    s = np.linalg.svd(jac, compute_uv=False)
    # unit-norm directions give an O(1) differential; an all-noise spectrum
    # must not set its own scale
    rel = s / max(float(s[0]) if s.size else 0.0, 1.0)
    if np.any((rel > tol * 1e-2) & (rel < tol * 1e2)):
        raise IndeterminateRankError(f"singular values {rel} too close to the threshold {tol}")
    return int(np.sum(rel > tol))


# -- wall membership -----------------------------------------------------------

def eigen_angles(m: np.ndarray, tol: float = 1e-8) -> np.ndarray:
    """Sorted eigenvalue angles in [0, 1); values within ``tol`` of 1 wrap to 0."""
    ang = np.mod(np.angle(np.linalg.eigvals(m)) / (2 * np.pi), 1.0)
    ang[ang > 1 - tol] = 0.0
    return np.sort(ang)


@dataclass(frozen=True)
class WallMembershipReport:
    angles: tuple[float, ...]
    matches: tuple[tuple[tuple[int, ...], int, float], ...]
    tol: float

    @property
    def on_wall(self) -> bool:
        return bool(self.matches)

    def subset_sizes(self) -> set[int]:
        return {len(s) for s, _, _ in self.matches}

    def to_json(self) -> dict:
        return {
            "angles": list(self.angles),
            "matches": [{"S": list(s), "d": d, "residual": r} for s, d, r in self.matches],
        }


def wall_membership(t: UnitaryTuple, tol: float = 1e-8) -> WallMembershipReport:
    """Proper subsets of the eigenvalue angles of ``psi(t)`` with integer sum."""
    ang = eigen_angles(evaluate_psi(t), tol)
    n = len(ang)
    matches = []
    for size in range(1, n):
        for s in itertools.combinations(range(n), size):
            total = float(sum(ang[i] for i in s))
            d = round(total)
            if abs(total - d) < tol:
                matches.append((tuple(i + 1 for i in s), int(d), abs(total - d)))
    return WallMembershipReport(tuple(float(a) for a in ang), tuple(matches), tol)


# -- battery -------------------------------------------------------------------

def run_battery(n: int, g: int, trials: int, seed_base: int = 0, tol: float = DEFAULT_TOL) -> dict:
    """Seeded checks over Haar and block-reducible tuples; ``report["pass"]`` summarises."""
    if trials < 1:
        raise ValueError("trials must be positive")
    full = n * n - 1
    records = []
    failures = 0
    tallies = {"haar": {}, "reducible": {}}
    splits = [(n1, n - n1) for n1 in range(1, n // 2 + 1)] if n > 1 else []
    for i in range(trials):
        seed = seed_base + i
        t = sample_haar(n, g, seed)
        u = haar_unitary(n, np.random.default_rng(seed + 1_000_003))
        su = check_special_unitary(t, tol)
        # the precondition on u has its own floor; tol only judges residuals
        eq = check_equivariance(t, u, max(tol, DEFAULT_TOL))
        rec = {"seed": seed, "det_residual": su.det_residual, "unitarity_residual": su.unitarity_residual,
               "equivariance_residual": eq}
        ok = su.passed and eq < tol
        try:
            rank = differential_rank(t)
        except IndeterminateRankError:
            rank = None
        rec["haar_rank"] = rank
        tallies["haar"][str(rank)] = tallies["haar"].get(str(rank), 0) + 1
        ok = ok and rank == full
        if splits:
            n1, n2 = splits[i % len(splits)]
            r = make_reducible(n1, n2, g, seed)
            try:
                rrank = differential_rank(r)
            except IndeterminateRankError:
                rrank = None
            wm = wall_membership(r)
            rec.update({"split": [n1, n2], "reducible_rank": rrank,
                        "wall_subset_sizes": sorted(wm.subset_sizes())})
            tallies["reducible"][str(rrank)] = tallies["reducible"].get(str(rrank), 0) + 1
            ok = ok and rrank is not None and rrank < full and n1 in wm.subset_sizes()
        rec["pass"] = bool(ok)
        failures += not ok
        records.append(rec)
    return {
        "n": n,
        "genus": g,
        "trials": trials,
        "seed_base": seed_base,
        "tolerance": tol,
        "full_rank": full,
        "rank_tallies": tallies,
        "failures": failures,
        "pass": failures == 0,
        "trials_detail": records,
    }
