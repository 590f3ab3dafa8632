"""Propagation of Lefschetz numbers across the chambers of one sector.

Rules used:

* the value is constant on a chamber;
* crossing a good wall from the beta side (``sum_S a < d``) to the alpha
  side adds ``(chi(CP^a) - chi(CP^b)) * mu(gamma1) * mu(gamma2)``;
* near a central regular value ``omega`` the chamber value is ``n! * mu(omega)``.

Rank-1 factors are the number ``det(I - M)`` of the knot; higher-rank factors
stay as opaque symbols named ``mu(rank; angles)``.  When a wall's fiber
dimensions are unknown the bracket ``chi(CP^a) - chi(CP^b) = a - b`` is itself
a symbol ``bracket(S=...;d=...)``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Mapping

from .chambers import (
    Chamber,
    FiberDimensionError,
    Hyperplane,
    WallDatum,
    adjacent_chambers,
    canonical,
    enumerate_chambers,
    enumerate_hyperplanes,
    generic_wall_point,
    good_walls,
    locate_chamber,
    set_fiber_dims,
    wall_codimension,
    wall_splitting,
)
from .group import ConjugacyClass, central_regular_values
from .knots import FibredKnot, jacobian_lefschetz_number
from .polynomials import InvariantExpr, cp_euler, flag_euler


class InconsistentCycleError(ValueError):
    def __init__(self, message: str, cycle: list[str]):
        super().__init__(message)
        self.cycle = cycle


class BoundaryContradiction(ValueError):
    """A constant chamber value not divisible by ``n!``."""


def symbol_name(cls: ConjugacyClass) -> str:
    return f"mu({cls.n}; {cls.key})"


def anchor_symbol(n: int, chamber_id: str) -> str:
    return f"mu({n}; {chamber_id})"


def bracket_symbol(wall: Hyperplane) -> str:
    return f"bracket({wall.label})"


def omega_id(omega: ConjugacyClass) -> str:
    return f"omega({omega.key})"


def lower_rank_invariant(rank: int, cls: ConjugacyClass, knot: FibredKnot) -> InvariantExpr:
    """``det(I - M)`` in rank 1, otherwise the symbol ``mu(rank; angles)``."""
    if rank < 1 or cls.n != rank:
        raise ValueError(f"class {cls} does not have rank {rank}")
    if rank == 1:
        return InvariantExpr.const(jacobian_lefschetz_number(knot))
    return InvariantExpr.symbol(symbol_name(cls))


@dataclass(frozen=True)
class WallEdge:
    beta: str
    alpha: str
    datum: WallDatum


@dataclass(frozen=True)
class BoundaryEdge:
    chamber: str
    omega: ConjugacyClass

    @property
    def omega_node(self) -> str:
        return omega_id(self.omega)


@dataclass
class ChamberGraph:
    n: int
    k: int
    genus: int
    knot: FibredKnot
    chambers: dict[str, Chamber]
    walls: list[WallDatum]
    edges: list[WallEdge]
    boundary: list[BoundaryEdge] = field(default_factory=list)

    def jump(self, edge: WallEdge) -> InvariantExpr:
        return wall_jump(edge.datum, self.knot)

    def neighbours(self, node: str):
        """``(other, jump, edge index)`` with value(other) = value(node) + jump."""
        for idx, e in enumerate(self.edges):
            if e.beta == node:
                yield e.alpha, self.jump(e), idx
            elif e.alpha == node:
                yield e.beta, -self.jump(e), idx


def wall_jump(datum: WallDatum, knot: FibredKnot) -> InvariantExpr:
    """``mu_alpha - mu_beta`` across the wall of ``datum``."""
    g1, g2 = datum.split
    product = lower_rank_invariant(g1.n, g1, knot) * lower_rank_invariant(g2.n, g2, knot)
    if datum.fiber_dims is not None:
        a, b = datum.fiber_dims
        bracket = InvariantExpr.const(cp_euler(a) - cp_euler(b))
    else:
        bracket = InvariantExpr.symbol(bracket_symbol(datum.wall))
    return bracket * product


def _wall_key(wall) -> tuple[tuple[int, ...], int]:
    if isinstance(wall, Hyperplane):
        return wall.subset, wall.level
    subset, level = wall
    return tuple(sorted(subset)), int(level)


def build_graph(
    n: int,
    k: int,
    g: int,
    knot: FibredKnot,
    wall_fiber_dims: Mapping | None = None,
) -> ChamberGraph:
    """Chambers, wall edges with their data, and boundary edges to central values.

    ``wall_fiber_dims`` maps a wall (a Hyperplane or an ``(S, d)`` pair in
    canonical or complementary form) to ``(a, b)``, ``a`` being the fiber
    over the alpha side.  Walls of codimension 1 get ``(0, 0)``, the only
    possibility.
    """
    arrangement = enumerate_hyperplanes(n, k)
    chambers = enumerate_chambers(n, k, arrangement)
    by_id = {c.id: c for c in chambers}
    walls = good_walls(arrangement)

    supplied: dict[tuple[tuple[int, ...], int], tuple[int, int]] = {}
    for key, dims in (wall_fiber_dims or {}).items():
        subset, level = _wall_key(key)
        canon = canonical(n, k, subset, level)
        supplied[canon] = (int(dims[0]), int(dims[1]))
    known = {(w.subset, w.level) for w in walls}
    for key in supplied:
        if key not in known:
            raise FiberDimensionError(
                f"fiber dimensions given for S={','.join(map(str, key[0]))};d={key[1]}, which is not a good wall of W_{k}"
            )

    data: dict[Hyperplane, WallDatum] = {}
    for w in walls:
        datum = wall_splitting(generic_wall_point(w), w)
        codim = wall_codimension(datum, g)
        if (w.subset, w.level) in supplied:
            set_fiber_dims(datum, *supplied[(w.subset, w.level)])
        elif codim == 1:
            set_fiber_dims(datum, 0, 0)
        data[w] = datum

    edges = []
    for i, c1 in enumerate(chambers):
        for c2 in chambers[i + 1 :]:
            wall = adjacent_chambers(c1, c2)
            if wall is None:
                continue
            s1 = c1.sign_map[wall]
            alpha, beta = (c1, c2) if s1 > 0 else (c2, c1)
            edges.append(WallEdge(beta.id, alpha.id, data[wall]))

    boundary = []
    for omega in central_regular_values(n):
        if omega.k != k:
            continue
        located = locate_chamber(omega.angles, arrangement)
        home = next(c for c in chambers if c.signs == located.signs)
        boundary.append(BoundaryEdge(home.id, omega))

    return ChamberGraph(n, k, g, knot, by_id, list(data.values()), edges, boundary)


@dataclass
class InvariantAssignment:
    values: dict[str, InvariantExpr]
    base_symbols: frozenset[str]

    def substitute(self, base: Mapping[str, int]) -> "InvariantAssignment":
        values = {node: expr.substitute(base) for node, expr in self.values.items()}
        free = frozenset().union(*(e.symbols for e in values.values())) if values else frozenset()
        return InvariantAssignment(values, free)

    def to_json(self) -> dict:
        return {node: {"expr": str(e), "terms": e.to_json()} for node, e in self.values.items()}


def propagate(
    graph: ChamberGraph,
    anchor: str,
    anchor_value: InvariantExpr,
    order: str = "bfs",
) -> InvariantAssignment:
    """Assign values to every chamber reachable from ``anchor``.

    Reaching an already valued chamber along a new edge must reproduce its
    value; otherwise ``InconsistentCycleError`` carries the offending cycle.
    """
    if anchor not in graph.chambers:
        raise KeyError(f"unknown chamber {anchor!r}")
    if order not in ("bfs", "dfs"):
        raise ValueError("order must be 'bfs' or 'dfs'")
    values = {anchor: anchor_value}
    parent: dict[str, str | None] = {anchor: None}
    frontier = deque([anchor])
    while frontier:
        node = frontier.popleft() if order == "bfs" else frontier.pop()
        for other, jump, _ in graph.neighbours(node):
            candidate = values[node] + jump
            if other not in values:
                values[other] = candidate
                parent[other] = node
                frontier.append(other)
            elif values[other] != candidate:
                cycle = _tree_path(parent, node)[::-1] + [other]
                raise InconsistentCycleError(
                    f"two paths to {other} disagree: {values[other]} vs {candidate}", cycle
                )
    ordered = {cid: values[cid] for cid in graph.chambers if cid in values}
    free = frozenset().union(*(e.symbols for e in ordered.values()))
    return InvariantAssignment(ordered, free)


def _tree_path(parent: Mapping[str, str | None], node: str) -> list[str]:
    path = [node]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    return path


def boundary_relation(assignment: InvariantAssignment, chamber: str, omega: str | ConjugacyClass, graph: ChamberGraph | None = None) -> InvariantExpr:
    """``mu(omega) = mu(chamber) / n!`` for a constant chamber value.

    A symbolic chamber value is accepted when all its coefficients are
    divisible by ``n!``.
    """
    if graph is not None:
        target = omega_id(omega) if isinstance(omega, ConjugacyClass) else omega
        if not any(b.chamber == chamber and b.omega_node == target for b in graph.boundary):
            raise ValueError(f"no boundary edge between {chamber} and {target}")
    n = omega.n if isinstance(omega, ConjugacyClass) else _rank_of_omega(omega)
    value = assignment.values[chamber]
    euler = flag_euler(n)
    if value.divisible_by(euler):
        return value.exact_div(euler)
    if value.is_constant:
        raise BoundaryContradiction(
            f"mu = {value} at {chamber} is not divisible by chi(flag variety) = {euler}"
        )
    raise ValueError(f"symbolic value {value} at {chamber} is not divisible by {euler}")


def _rank_of_omega(node: str) -> int:
    inner = node[node.index("(") + 1 : node.rindex(")")]
    return len(inner.split(","))


@dataclass
class ConsistencyReport:
    cycles_checked: int
    violations: list[dict]

    @property
    def consistent(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "consistent": self.consistent,
            "cycles_checked": self.cycles_checked,
            "violations": self.violations,
        }


def check_loop_consistency(graph: ChamberGraph) -> ConsistencyReport:
    """Check the signed jump sum around every fundamental cycle is zero."""
    potential: dict[str, InvariantExpr] = {}
    parent: dict[str, str | None] = {}
    tree_edges: set[int] = set()
    for root in graph.chambers:
        if root in potential:
            continue
        potential[root] = InvariantExpr()
        parent[root] = None
        queue = deque([root])
        while queue:
            node = queue.popleft()
            for other, jump, idx in graph.neighbours(node):
                if other not in potential:
                    potential[other] = potential[node] + jump
                    parent[other] = node
                    tree_edges.add(idx)
                    queue.append(other)

    checked = 0
    violations = []
    for idx, edge in enumerate(graph.edges):
        if idx in tree_edges:
            continue
        checked += 1
        residual = potential[edge.beta] + graph.jump(edge) - potential[edge.alpha]
        if residual != InvariantExpr():
            violations.append(
                {
                    "edge": [edge.beta, edge.alpha],
                    "wall": edge.datum.wall.label,
                    "cycle": _cycle(parent, edge.beta, edge.alpha),
                    "residual": str(residual),
                }
            )
    return ConsistencyReport(checked, violations)


def _cycle(parent: Mapping[str, str | None], beta: str, alpha: str) -> list[str]:
    """Tree path alpha -> common ancestor -> beta, closed by the edge back to alpha."""
    up = _tree_path(parent, beta)
    down = _tree_path(parent, alpha)
    common = next(x for x in down if x in up)
    forward = down[: down.index(common) + 1]
    back = up[: up.index(common)][::-1]
    return forward + back + [alpha]
