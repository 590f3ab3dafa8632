"""``wallcross`` command line: chambers, knot, invariants, verify.

Every run prints one JSON report.  Exit codes: 0 success, 1 a checked
failure (validation, constraint or numerical check), 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import chambers as ch
from .engine import (
    BoundaryContradiction,
    InconsistentCycleError,
    anchor_symbol,
    boundary_relation,
    build_graph,
    check_loop_consistency,
    propagate,
    wall_jump,
)
from .group import format_rational
from .knots import (
    KnotFormatError,
    alexander_polynomial,
    jacobian_lefschetz_number,
    jacobian_lefschetz_polynomial,
    load_knot,
    validate,
)
from .numeric import DEFAULT_TOL, run_battery
from .polynomials import InvariantExpr, flag_euler

SCHEMA = "wallcross-report/1"


class UsageError(Exception):
    pass


class CheckedFailure(Exception):
    def __init__(self, report: dict):
        super().__init__(report.get("error", "check failed"))
        self.report = report


@dataclass
class RunConfig:
    subcommand: str
    n: int | None = None
    k: int | None = None
    genus: int | None = None
    knot: str | None = None
    fiber_dims: str | None = None
    base: str | None = None
    output: str | None = None
    anchor: str = "C0"
    trials: int = 50
    seed_base: int = 0
    tol: float = DEFAULT_TOL
    allow_qhs: bool = False

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        fields = {k: v for k, v in vars(args).items() if k in cls.__dataclass_fields__ and v is not None}
        return cls(**fields)

    def check(self) -> None:
        """Reject bad combinations before any computation."""
        inputs = [p for p in (self.knot, self.fiber_dims, self.base) if p]
        for path in (self.fiber_dims, self.base):
            if path and not os.access(path, os.R_OK):
                raise UsageError(f"cannot read {path}")
        if self.output and any(Path(self.output).resolve() == Path(p).resolve() for p in inputs):
            raise UsageError("--output would overwrite an input file")
        if self.subcommand in ("chambers", "invariants"):
            if self.n is None or self.k is None:
                raise UsageError("--n and --k are required")
            if self.n < 2 or not 1 <= self.k <= self.n - 1:
                raise UsageError(f"invalid sector --k {self.k} for --n {self.n}: need 1 <= k <= n - 1")
        if self.genus is not None and self.genus < 1:
            raise UsageError("--genus must be positive")
        if self.subcommand == "invariants" and self.genus is None:
            raise UsageError("--genus is required")
        if self.subcommand == "verify":
            if self.n is None or self.n < 1:
                raise UsageError("--n must be positive")
            if self.genus is None:
                raise UsageError("--genus is required")
            if self.trials < 1:
                raise UsageError("--trials must be positive")
            if not self.tol > 0:
                raise UsageError("--tol must be positive")


def _read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON in {path}: {exc}") from exc
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _load_knot(cfg: RunConfig):
    if not cfg.knot:
        raise UsageError("--knot is required")
    try:
        return load_knot(cfg.knot)
    except FileNotFoundError as exc:
        raise UsageError(str(exc)) from exc
    except KnotFormatError as exc:
        raise UsageError(str(exc)) from exc


def _report(command: str, **body) -> dict:
    return {"schema": SCHEMA, "command": command, **body}


# -- commands ----------------------------------------------------------------

def cmd_chambers(cfg: RunConfig) -> dict:
    n, k = cfg.n, cfg.k
    arrangement = ch.enumerate_hyperplanes(n, k)
    chambers = ch.enumerate_chambers(n, k, arrangement)
    adjacency = []
    for i, c1 in enumerate(chambers):
        for c2 in chambers[i + 1 :]:
            wall = ch.adjacent_chambers(c1, c2)
            if wall is not None:
                adjacency.append({"chambers": [c1.id, c2.id], "wall": wall.label})
    walls = []
    for w in ch.good_walls(arrangement):
        datum = ch.wall_splitting(ch.generic_wall_point(w), w)
        if cfg.genus is not None:
            ch.wall_codimension(datum, cfg.genus)
        walls.append(datum.to_json())
    return _report(
        "chambers",
        n=n,
        k=k,
        genus=cfg.genus,
        hyperplanes=[h.to_json() for h in arrangement],
        good_wall_count=len(walls),
        chambers=[c.to_json() for c in chambers],
        adjacency=adjacency,
        walls=walls,
        sector_transitions=ch.sector_transition_table(n),
        side_convention=ch.SIDE_CONVENTION,
    )


def cmd_knot(cfg: RunConfig) -> dict:
    knot = _load_knot(cfg)
    report = validate(knot, cfg.allow_qhs)
    alex = alexander_polynomial(knot)
    c = jacobian_lefschetz_polynomial(knot)
    out = _report(
        "knot",
        knot=knot.to_json(),
        validation=report.to_json(),
        alexander={"coefficients": alex.to_json(), "text": alex.format(descending=True)},
        c={"coefficients": c.to_json(), "text": c.format()},
        c_at_1=jacobian_lefschetz_number(knot),
    )
    if not report.ok:
        raise CheckedFailure(out)
    return out


def _parse_fiber_dims(path: str) -> dict:
    data = _read_json(path)
    if not isinstance(data, list):
        raise UsageError("fiber-dims file must be a list of {S, d, a, b} objects")
    dims = {}
    for entry in data:
        try:
            key = (tuple(int(i) for i in entry["S"]), int(entry["d"]))
            dims[key] = (int(entry["a"]), int(entry["b"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"bad fiber-dims entry {entry!r}") from exc
    return dims


def _parse_base(path: str) -> dict[str, int]:
    data = _read_json(path)
    if not isinstance(data, dict) or not all(
        isinstance(v, int) and not isinstance(v, bool) for v in data.values()
    ):
        raise UsageError("base-values file must map symbol names to integers")
    return data


def _bracket_values(codim: int) -> list[int]:
    # a - b over a + b = codim - 1, a, b >= 0
    return sorted({a - (codim - 1 - a) for a in range(codim)})


def cmd_invariants(cfg: RunConfig) -> dict:
    knot = _load_knot(cfg)
    validation = validate(knot, cfg.allow_qhs)
    if not validation.ok:
        raise CheckedFailure(_report("invariants", error="knot validation failed", validation=validation.to_json()))
    dims = _parse_fiber_dims(cfg.fiber_dims) if cfg.fiber_dims else {}
    base = _parse_base(cfg.base) if cfg.base else {}

    try:
        graph = build_graph(cfg.n, cfg.k, cfg.genus, knot, dims)
    except ch.FiberDimensionError as exc:
        raise CheckedFailure(_report("invariants", error=str(exc))) from exc
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if cfg.anchor not in graph.chambers:
        raise UsageError(f"unknown anchor chamber {cfg.anchor}")

    anchor_name = anchor_symbol(cfg.n, cfg.anchor)
    failed = False
    try:
        assignment = propagate(graph, cfg.anchor, InvariantExpr.symbol(anchor_name))
        inconsistency = None
    except InconsistentCycleError as exc:
        assignment, inconsistency, failed = None, {"error": str(exc), "cycle": exc.cycle}, True
    consistency = check_loop_consistency(graph)
    failed = failed or not consistency.consistent

    walls = []
    for datum in graph.walls:
        entry = datum.to_json()
        entry["jump"] = str(wall_jump(datum, knot))
        if datum.fiber_dims is None:
            entry["bracket_allowed_values"] = _bracket_values(datum.codim)
        walls.append(entry)

    chambers_out = {}
    omega_out = []
    free: list[str] = []
    if assignment is not None:
        symbolic = assignment
        if base:
            assignment = assignment.substitute(base)
        for cid, expr in assignment.values.items():
            chambers_out[cid] = {
                "expr": str(expr),
                "terms": expr.to_json(),
                "representative": [format_rational(a) for a in graph.chambers[cid].representative],
            }
        free = sorted(assignment.base_symbols)
        for b in graph.boundary:
            value = assignment.values.get(b.chamber)
            euler = flag_euler(cfg.n)
            record = {
                "omega": b.omega_node,
                "class": b.omega.to_json()["angles"],
                "chamber": b.chamber,
                "relation": f"mu({b.omega_node}) = ({value}) / {euler}",
            }
            try:
                mu_omega = boundary_relation(assignment, b.chamber, b.omega, graph)
                record.update(status="exact", value=str(mu_omega), terms=mu_omega.to_json())
            except BoundaryContradiction as exc:
                record.update(status="contradiction", value=None, error=str(exc))
                failed = True
            except ValueError:
                record.update(status="symbolic", value=None)
            omega_out.append(record)
        unused = sorted(set(base) - symbolic.base_symbols)
    else:
        unused = sorted(base)

    out = _report(
        "invariants",
        n=cfg.n,
        k=cfg.k,
        genus=cfg.genus,
        knot={"name": knot.name, "c_at_1": jacobian_lefschetz_number(knot)},
        side_convention=ch.SIDE_CONVENTION,
        side_convention_note="fiber dims (a, b): a over the alpha side; which side carries a is a convention",
        anchor={"chamber": cfg.anchor, "symbol": anchor_name},
        chambers=chambers_out,
        walls=walls,
        edges=[{"beta": e.beta, "alpha": e.alpha, "wall": e.datum.wall.label} for e in graph.edges],
        omega=omega_out,
        consistency=consistency.to_json(),
        propagation_error=inconsistency,
        free_symbols=free,
        base_values=base,
        unused_base_symbols=unused,
    )
    if failed:
        raise CheckedFailure(out)
    return out


def cmd_verify(cfg: RunConfig) -> dict:
    result = run_battery(cfg.n, cfg.genus, cfg.trials, cfg.seed_base, cfg.tol)
    out = _report("verify", **result)
    if not result["pass"]:
        raise CheckedFailure(out)
    return out


COMMANDS = {
    "chambers": cmd_chambers,
    "knot": cmd_knot,
    "invariants": cmd_invariants,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wallcross", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p):
        p.add_argument("--output", "-o", help="write the JSON report here instead of stdout")

    p = sub.add_parser("chambers", help="hyperplanes, chambers and walls of one sector")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--genus", type=int, help="also report wall codimensions at this genus")
    common(p)

    p = sub.add_parser("knot", help="validate a knot file and report its polynomials")
    p.add_argument("--knot", required=True, help="knot JSON file or a bundled sample name")
    p.add_argument("--allow-qhs", action="store_true", help="only require det(I - M) != 0")
    common(p)

    p = sub.add_parser("invariants", help="propagate invariants across the chambers of a sector")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--knot", required=True)
    p.add_argument("--fiber-dims", dest="fiber_dims")
    p.add_argument("--base", help="JSON map from symbol to integer value")
    p.add_argument("--anchor", default="C0")
    p.add_argument("--allow-qhs", action="store_true")
    common(p)

    p = sub.add_parser("verify", help="seeded numerical checks of the commutator map")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed-base", dest="seed_base", type=int, default=0)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    common(p)
    return parser


def _emit(report: dict, output: str | None) -> None:
    text = json.dumps(report, indent=2) + "\n"
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = RunConfig.from_args(args)
    try:
        cfg.check()
        report = COMMANDS[cfg.subcommand](cfg)
    except UsageError as exc:
        parser.error(str(exc))  # exits with status 2
    except CheckedFailure as exc:
        _emit(exc.report, cfg.output)
        return 1
    _emit(report, cfg.output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
