"""Command-line front end: parse inputs, dispatch operations, emit reports.

Exit codes: 0 success, 2 parse/usage error, 3 numerical failure,
4 exhausted/partial result (the partial output is still emitted).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, fields
from decimal import Decimal, InvalidOperation, localcontext

from . import bounds as bounds_mod
from . import torus_poly as torus_mod
from .errors import MahlerboundError
from .lattice_order import (
    DirectionVector,
    as_point,
    dirichlet_step,
    generate_dirichlet_points,
    generate_scaled_points,
    min_orthogonal_norm,
    order_support,
)
from .mahler_uni import mahler, mahler_quadrature
from .sparse_poly import SparseUniPoly
from .torus_poly import TorusPoly

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_NUMERICAL = 3
EXIT_PARTIAL = 4


class ParseFailure(Exception):
    """Bad input file or malformed argument literal."""


@dataclass
class Config:
    tol_quadrature: float = 1e-9
    tol_limit: float = 1e-3
    dense_degree_cap: int = 4096
    nu_shell_cap: int = 64
    q_cap: int = 10**6
    seed: int = 0
    workers: int = 1

    def __post_init__(self) -> None:
        if self.tol_quadrature <= 0 or self.tol_limit <= 0:
            raise ValueError("tolerances must be positive")
        for name in ("dense_degree_cap", "nu_shell_cap", "q_cap", "workers"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be at least 1")


def resolve_config(args: argparse.Namespace) -> Config:
    """Defaults, overridden by --config file values, overridden by flags."""
    values = {f.name: f.default for f in fields(Config)}
    if getattr(args, "config", None):
        try:
            with open(args.config) as fh:
                file_values = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ParseFailure(f"cannot read config file: {exc}") from exc
        for key, val in file_values.items():
            if key not in values:
                raise ParseFailure(f"unknown config key {key!r}")
            values[key] = val
    for name in values:
        flag = getattr(args, name, None)
        if flag is not None:
            values[name] = flag
    try:
        return Config(**values)
    except (TypeError, ValueError) as exc:
        raise ParseFailure(f"bad configuration: {exc}") from exc


# ---------------------------------------------------------------------------
# literals
# ---------------------------------------------------------------------------


def _alpha_token(token: str) -> Decimal:
    token = token.strip()
    with localcontext() as ctx:
        ctx.prec = 60
        if token == "phi":
            return (1 + Decimal(5).sqrt()) / 2
        if token.startswith("sqrt"):
            arg = token[4:]
            if not arg.isdigit():
                raise ParseFailure(f"bad sqrt token {token!r}")
            return Decimal(int(arg)).sqrt()
        if token.startswith("log"):
            arg = token[3:]
            if not arg.isdigit() or int(arg) < 2:
                raise ParseFailure(f"bad log token {token!r}")
            return Decimal(int(arg)).ln()
        try:
            return Decimal(token)
        except InvalidOperation as exc:
            raise ParseFailure(f"cannot parse direction coordinate {token!r}") from exc


def parse_alpha(text: str) -> DirectionVector:
    """Comma-separated coordinates: sqrt<k>, log<k> (natural), phi, or
    decimal literals, all expanded to 50+ digit decimals."""
    tokens = [t for t in text.split(",") if t.strip()]
    if not tokens:
        raise ParseFailure("empty direction vector")
    return DirectionVector.from_decimals([_alpha_token(t) for t in tokens], description=text)


def parse_point(text: str) -> tuple[int, ...]:
    try:
        return as_point(int(t) for t in text.split(",") if t.strip())
    except ValueError as exc:
        raise ParseFailure(f"cannot parse lattice point {text!r}: {exc}") from exc


def parse_support(text: str) -> list[tuple[int, ...]]:
    pts = [parse_point(chunk) for chunk in text.split(";") if chunk.strip()]
    if not pts:
        raise ParseFailure("empty support")
    return pts


def load_polynomial(path: str) -> SparseUniPoly | TorusPoly:
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseFailure(f"cannot read polynomial file: {exc}") from exc
    try:
        if isinstance(obj, dict) and "terms" in obj:
            return SparseUniPoly.from_json_obj(obj)
        if isinstance(obj, dict) and "coeffs" in obj:
            return TorusPoly.from_json_obj(obj)
    except (KeyError, TypeError, ValueError, MahlerboundError) as exc:
        raise ParseFailure(f"invalid polynomial data: {exc}") from exc
    raise ParseFailure("polynomial file needs a 'terms' or 'coeffs' key")


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _json_text(obj: dict) -> str:
    return json.dumps(obj, indent=2)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_measure(args: argparse.Namespace, cfg: Config) -> int:
    poly = load_polynomial(args.input)
    if isinstance(poly, SparseUniPoly):
        result = mahler(
            poly,
            dense_degree_cap=cfg.dense_degree_cap,
            grid_start=args.grid_start,
            tol=cfg.tol_quadrature,
        )
    elif args.alpha and not args.grid:
        alpha = parse_alpha(args.alpha)
        trace = torus_mod.mahler_limit(
            poly,
            alpha,
            count=args.count,
            tol=cfg.tol_limit,
            q_cap=cfg.q_cap,
            shell_cap=cfg.nu_shell_cap,
            dense_degree_cap=cfg.dense_degree_cap,
            quad_tol=cfg.tol_quadrature,
        )
        gap = trace.final_gap if math.isfinite(trace.final_gap) else 1.0
        result = torus_mod.MeasureResult(
            trace.estimate,
            math.log(trace.estimate),
            torus_mod.Method.SPECIALIZATION_LIMIT,
            trace.estimate * max(gap, cfg.tol_limit),
            {"entries": len(trace.entries), "converged": trace.converged},
        )
    else:
        result = torus_mod.mahler_torus_grid(poly, args.grid_start, args.grid_tol)
    if args.format == "csv":
        text = "value,log_value,method,error_estimate\n"
        text += f"{result.value!r},{result.log_value!r},{result.method.value},{result.error_estimate!r}\n"
    else:
        text = _json_text(result.to_json_obj())
    _emit(text, args.output)
    return EXIT_OK


def cmd_bounds(args: argparse.Namespace, cfg: Config) -> int:
    poly = load_polynomial(args.input)
    if isinstance(poly, SparseUniPoly):
        report = bounds_mod.check_coefficient_bounds(
            poly, dense_degree_cap=cfg.dense_degree_cap, tol=cfg.tol_quadrature
        )
        obj = report.to_json_obj()
        records = report.records
    else:
        if not args.alpha:
            raise ParseFailure("torus input needs --alpha")
        alpha = parse_alpha(args.alpha)
        if args.beta:
            beta = parse_alpha(args.beta)
            dual = torus_mod.dual_ordering_report(
                poly, alpha, beta, grid_start=args.grid_start, grid_tol=args.grid_tol
            )
            _emit(_json_text(dual.to_json_obj()), args.output)
            return EXIT_OK
        report = torus_mod.check_ordered_bounds(
            poly,
            alpha,
            grid_start=args.grid_start,
            grid_tol=args.grid_tol,
            limit_count=args.count,
            limit_tol=cfg.tol_limit,
        )
        obj = report.to_json_obj()
        records = report.report.records
    if args.format == "csv":
        lines = ["n,label,coeff_abs,binomial,bound,ratio"]
        for r in records:
            label = ";".join(map(str, r.label)) if isinstance(r.label, tuple) else r.label
            lines.append(f"{r.n},{label},{r.coeff_abs!r},{r.binom},{r.bound!r},{r.ratio!r}")
        text = "\n".join(lines) + "\n"
    else:
        text = _json_text(obj)
    _emit(text, args.output)
    return EXIT_OK


def cmd_lattice(args: argparse.Namespace, cfg: Config) -> int:
    if args.lattice_op == "nu":
        cert = min_orthogonal_norm(parse_point(args.point), cfg.nu_shell_cap)
        _emit(_json_text(cert.to_json_obj()), args.output)
        return EXIT_OK
    if args.lattice_op == "dirichlet":
        step = dirichlet_step(parse_alpha(args.alpha), args.Q)
        _emit(_json_text(step.to_json_obj()), args.output)
        return EXIT_OK
    # bpoints
    alpha = parse_alpha(args.alpha)
    ordered = order_support(parse_support(args.support), alpha)
    if args.generator == "scaled":
        res = generate_scaled_points(ordered, args.count, cfg.nu_shell_cap)
    else:
        res = generate_dirichlet_points(ordered, args.count, cfg.q_cap, cfg.nu_shell_cap)
    _emit(_json_text(res.to_json_obj()), args.output)
    return EXIT_PARTIAL if res.exhausted else EXIT_OK


def cmd_limit(args: argparse.Namespace, cfg: Config) -> int:
    poly = load_polynomial(args.input)
    if not isinstance(poly, TorusPoly):
        raise ParseFailure("limit needs a torus polynomial input")
    alpha = parse_alpha(args.alpha)
    trace = torus_mod.mahler_limit(
        poly,
        alpha,
        count=args.count,
        tol=cfg.tol_limit,
        q_cap=cfg.q_cap,
        shell_cap=cfg.nu_shell_cap,
        dense_degree_cap=cfg.dense_degree_cap,
        quad_tol=cfg.tol_quadrature,
    )
    text = trace.to_json() if args.format == "json" else trace.to_csv()
    _emit(text, args.output)
    return EXIT_OK if trace.converged else EXIT_PARTIAL


def cmd_scan(args: argparse.Namespace, cfg: Config) -> int:
    if args.fixed_binomial is not None:
        family = bounds_mod.ScanFamily(fixed_poly=bounds_mod.binomial_power(args.fixed_binomial))
    else:
        family = bounds_mod.ScanFamily(max_terms=args.max_terms, max_exponent=args.max_exponent)
    summary = bounds_mod.tightness_scan(
        family,
        args.samples,
        cfg.seed,
        workers=cfg.workers,
        dense_degree_cap=cfg.dense_degree_cap,
    )
    if args.format == "json":
        text = _json_text(
            {
                "rows": [vars(r) for r in summary.rows],
                "all_satisfied": summary.all_satisfied,
                "worst_ratio": summary.worst_ratio,
            }
        )
    else:
        text = summary.to_csv()
    _emit(text, args.output)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument wiring
# ---------------------------------------------------------------------------


def _add_config_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON file with configuration values")
    p.add_argument("--tol-quadrature", dest="tol_quadrature", type=float)
    p.add_argument("--tol-limit", dest="tol_limit", type=float)
    p.add_argument("--dense-degree-cap", dest="dense_degree_cap", type=int)
    p.add_argument("--nu-shell-cap", dest="nu_shell_cap", type=int)
    p.add_argument("--q-cap", dest="q_cap", type=int)
    p.add_argument("--seed", dest="seed", type=int)
    p.add_argument("--workers", dest="workers", type=int)
    p.add_argument("--format", choices=("json", "csv"), default=None)
    p.add_argument("--output", help="write to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mahlerbound",
        description="Mahler measures of sparse polynomials and binomial coefficient bounds",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("measure", help="Mahler measure of a polynomial file")
    p.add_argument("input")
    p.add_argument("--grid", action="store_true", help="force the torus grid oracle")
    p.add_argument("--grid-start", dest="grid_start", type=int, default=256)
    p.add_argument("--grid-tol", dest="grid_tol", type=float, default=1e-3)
    p.add_argument("--alpha", help="direction for the specialization limit (torus input)")
    p.add_argument("--count", type=int, default=16, help="max specializations for the limit")
    _add_config_flags(p)
    p.set_defaults(run=cmd_measure, default_format="json")

    p = sub.add_parser("bounds", help="coefficient bound reports")
    p.add_argument("input")
    p.add_argument("--alpha", help="support ordering direction (torus input)")
    p.add_argument("--beta", help="second direction: emit the dual-ordering comparison")
    p.add_argument("--grid-start", dest="grid_start", type=int, default=256)
    p.add_argument("--grid-tol", dest="grid_tol", type=float, default=1e-3)
    p.add_argument("--count", type=int, default=16)
    _add_config_flags(p)
    p.set_defaults(run=cmd_bounds, default_format="json")

    p = sub.add_parser("lattice", help="lattice ordering operations")
    lat = p.add_subparsers(dest="lattice_op", required=True)
    q = lat.add_parser("nu", help="shortest orthogonal vector certificate")
    q.add_argument("point", help="comma-separated integer coordinates")
    _add_config_flags(q)
    q.set_defaults(run=cmd_lattice, default_format="json")
    q = lat.add_parser("dirichlet", help="simultaneous approximation step")
    q.add_argument("alpha")
    q.add_argument("--Q", type=int, required=True)
    _add_config_flags(q)
    q.set_defaults(run=cmd_lattice, default_format="json")
    q = lat.add_parser("bpoints", help="admissible specialization directions")
    q.add_argument("--support", required=True, help="semicolon-separated points: '0,0;1,0;0,1'")
    q.add_argument("--alpha", required=True)
    q.add_argument("--count", type=int, default=3)
    q.add_argument("--generator", choices=("dirichlet", "scaled"), default="dirichlet")
    _add_config_flags(q)
    q.set_defaults(run=cmd_lattice, default_format="json")

    p = sub.add_parser("limit", help="specialization-limit trace for a torus polynomial")
    p.add_argument("input")
    p.add_argument("--alpha", required=True)
    p.add_argument("--count", type=int, default=16)
    _add_config_flags(p)
    p.set_defaults(run=cmd_limit, default_format="csv")

    p = sub.add_parser("scan", help="random tightness scan of the coefficient bounds")
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--max-terms", dest="max_terms", type=int, default=9)
    p.add_argument("--max-exponent", dest="max_exponent", type=int, default=64)
    p.add_argument("--fixed-binomial", dest="fixed_binomial", type=int)
    _add_config_flags(p)
    p.set_defaults(run=cmd_scan, default_format="csv")

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = args.default_format
    try:
        cfg = resolve_config(args)
        return args.run(args, cfg)
    except ParseFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (MahlerboundError, OverflowError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
