"""Command-line surface: run methods, decompose synergies, compare engines,
and run the axiom suite, emitting JSON or CSV.

Exit codes: 0 success, 1 unexpected axiom failure (`check`), 2 usage or
validation error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import expressions as ex
from . import grad_exact, set_methods
from .axioms import SuiteConfig, run_suite
from .core import (
    Instance,
    InteractionReport,
    coalition_members,
    validate_instance,
)
from .exceptions import SynergyError
from .grad_numeric import QuadratureConfig, ig_quadrature, ih2_quadrature
from .polynomials import SparsePolynomial

TABLE_METHODS = {
    "shapley": lambda table, k: set_methods.shapley(table),
    "shapley-taylor": set_methods.shapley_taylor,
    "rs": set_methods.recursive_shapley,
    "rs-aug": set_methods.augmented_recursive_shapley,
}
GRADIENT_METHODS = {
    "ig": lambda poly, x, k: grad_exact.integrated_gradients(poly, x),
    "ih": grad_exact.integrated_hessian,
    "ih-aug": grad_exact.augmented_integrated_hessian,
    "sop": grad_exact.sum_of_powers,
}
METHOD_IDS = (*TABLE_METHODS, *GRADIENT_METHODS)
ORACLE_IDS = (
    "shapley-marginal",
    "st-marginal",
    "rs-nested",
    "sop-nested",
    "ih2-closed",
    "ig-quad",
    "ih2-quad",
)


class UsageError(SynergyError):
    """Bad flags or an invalid combination of inputs."""


@dataclass
class FunctionSource:
    kind: str  # expr | poly | table
    expr: ex.Expr | None = None
    poly: SparsePolynomial | None = None
    table: set_methods.SetFunctionTable | None = None


def _parse_point(text: str, label: str) -> tuple[float, ...]:
    try:
        return tuple(float(part) for part in text.split(","))
    except ValueError as err:
        raise UsageError(f"{label} must be comma-separated reals: {err}") from None


def _parse_lets(pairs: list[str]) -> dict[str, float]:
    bindings: dict[str, float] = {}
    for pair in pairs or []:
        name, sep, value = pair.partition("=")
        if not sep or not name:
            raise UsageError(f"--let expects NAME=VALUE, got {pair!r}")
        try:
            bindings[name] = float(value)
        except ValueError:
            raise UsageError(f"--let {name}: {value!r} is not a number") from None
    return bindings


def _load_json(path: str) -> dict:
    with open(path) as handle:
        return json.load(handle)


def _load_source(args) -> tuple[FunctionSource, Instance | None]:
    """Resolve the function source plus the instance (None for raw tables)."""
    lets = _parse_lets(getattr(args, "let", None))
    if args.table is not None:
        table = set_methods.SetFunctionTable.from_json_dict(_load_json(args.table))
        return FunctionSource("table", table=table), None
    if args.poly is not None:
        poly = SparsePolynomial.from_json_dict(_load_json(args.poly))
        if args.x is None:
            return FunctionSource("poly", poly=poly), None
        x = _parse_point(args.x, "--x")
        baseline = (
            _parse_point(args.baseline, "--baseline") if args.baseline else poly.center
        )
        if baseline != poly.center:
            raise UsageError(
                "--baseline must equal the polynomial's center (recentering is not provided)"
            )
        inst = Instance(x=x, baseline=baseline)
        validate_instance(inst)
        if inst.n != poly.n:
            raise UsageError(f"--x has {inst.n} components but polynomial has {poly.n}")
        return FunctionSource("poly", poly=poly), inst
    if args.x is None:
        raise UsageError("--x is required with --expr")
    x = _parse_point(args.x, "--x")
    n = len(x)
    baseline = (
        _parse_point(args.baseline, "--baseline") if args.baseline else (0.0,) * n
    )
    inst = Instance(x=x, baseline=baseline)
    validate_instance(inst)
    expr = ex.parse(args.expr, n, lets)
    return FunctionSource("expr", expr=expr), inst


def _source_table(source: FunctionSource, inst: Instance | None) -> set_methods.SetFunctionTable:
    if source.kind == "table":
        return source.table
    if inst is None:
        raise UsageError("--x is required to tabulate this source")
    if source.kind == "poly":
        return set_methods.build_table(inst, source.poly.evaluate)
    return set_methods.build_table(inst, lambda point: ex.evaluate(source.expr, point))


def _source_polynomial(source: FunctionSource, inst: Instance) -> SparsePolynomial | None:
    if source.kind == "poly":
        return source.poly
    return ex.to_polynomial(source.expr, inst.baseline)


def _source_expression(source: FunctionSource) -> ex.Expr:
    if source.kind == "expr":
        return source.expr
    if source.kind == "poly":
        return ex.from_polynomial(source.poly)
    raise UsageError("this engine needs an expression or polynomial source")


def _quad_config(args) -> QuadratureConfig:
    return QuadratureConfig(nodes=args.quad_nodes, panels=args.quad_panels)


def _run_engine(engine: str, source: FunctionSource, inst: Instance | None, k: int, args) -> InteractionReport:
    if engine in TABLE_METHODS or engine in ("shapley-marginal", "st-marginal", "rs-nested"):
        table = _source_table(source, inst)
        if engine == "shapley-marginal":
            _require_k(engine, k, 1)
            return set_methods.shapley_from_marginals(table)
        if engine == "st-marginal":
            return set_methods.shapley_taylor_from_marginals(table, k)
        if engine == "rs-nested":
            return set_methods.recursive_shapley_nested(table, k)
        if engine == "shapley":
            _require_k(engine, k, 1)
        return TABLE_METHODS[engine](table, k)
    if source.kind == "table":
        raise UsageError(f"method {engine!r} needs gradients; a table source only supports "
                         f"{', '.join(sorted(TABLE_METHODS))}")
    if engine in ("ig-quad", "ih2-quad"):
        expr = _source_expression(source)
        config = _quad_config(args)
        if engine == "ig-quad":
            _require_k(engine, k, 1)
            return ig_quadrature(expr, inst, config)
        _require_k(engine, k, 2)
        return ih2_quadrature(expr, inst, config)
    poly = _source_polynomial(source, inst)
    if poly is None:
        # transcendental expression: the two path-integral methods have a
        # quadrature form; the others need a polynomial source
        if engine == "ig" and k == 1:
            return ig_quadrature(source.expr, inst, _quad_config(args))
        if engine == "ih" and k == 2:
            return ih2_quadrature(source.expr, inst, _quad_config(args))
        raise UsageError(
            f"method {engine!r} (k={k}) needs a polynomial-expressible source; "
            "this expression is transcendental"
        )
    if engine == "sop-nested":
        return grad_exact.sum_of_powers_nested(poly, inst.x, k)
    if engine == "ih2-closed":
        _require_k(engine, k, 2)
        return grad_exact.integrated_hessian_pairwise(poly, inst.x)
    if engine == "ig":
        _require_k(engine, k, 1)
    return GRADIENT_METHODS[engine](poly, inst.x, k)


def _require_k(engine: str, k: int, expected: int) -> None:
    if k != expected:
        raise UsageError(f"method {engine!r} only supports -k {expected}")


def _emit(args, text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_interact(args) -> int:
    source, inst = _load_source(args)
    if source.kind == "poly" and inst is None:
        raise UsageError("--x is required with --poly for interact")
    report = _run_engine(args.method, source, inst, args.k, args)
    _emit(args, report.to_csv() if args.output == "csv" else report.to_json())
    return 0


def cmd_decompose(args) -> int:
    source, inst = _load_source(args)
    if source.kind == "table":
        synergies = set_methods.mobius(source.table)
        if args.output == "csv":
            lines = ["coalition;value"]
            rows = sorted(
                (coalition_members(mask), float(synergies.values[mask]))
                for mask in range(1 << synergies.n)
            )
            for members, value in rows:
                label = "+".join(str(i) for i in members) if members else "-"
                lines.append(f"{label};{value!r}")
            _emit(args, "\n".join(lines))
        else:
            _emit(args, json.dumps(synergies.to_json_dict(), indent=2))
        return 0
    if source.kind == "poly" and inst is None:
        pieces = source.poly.synergy_split()
        if args.output == "csv":
            lines = ["coalition;m;c"]
            for coalition in sorted(pieces):
                label = "+".join(str(i) for i in coalition) if coalition else "-"
                terms = pieces[coalition].terms
                for m in sorted(terms):
                    exponents = ",".join(str(e) for e in m)
                    lines.append(f"{label};{exponents};{terms[m]!r}")
            _emit(args, "\n".join(lines))
            return 0
        payload = {
            "n": source.poly.n,
            "center": list(source.poly.center),
            "pieces": [
                {
                    "coalition": list(coalition),
                    "terms": pieces[coalition].to_json_dict()["terms"],
                }
                for coalition in sorted(pieces)
            ],
        }
        _emit(args, json.dumps(payload, indent=2))
        return 0
    # evaluated route: synergy values at x (exact split for polynomials,
    # masked-point Möbius route otherwise)
    poly = _source_polynomial(source, inst)
    n = inst.n
    if poly is not None:
        pieces = poly.synergy_split()
        entries = {
            coalition: piece.evaluate(inst.x) for coalition, piece in pieces.items()
        }
        report = InteractionReport(
            n=n,
            order=n,
            entries={
                members: entries.get(members, 0.0)
                for mask in range(1 << n)
                for members in [coalition_members(mask)]
            },
        )
    else:
        table = _source_table(source, inst)
        synergies = set_methods.mobius(table)
        report = InteractionReport(
            n=n,
            order=n,
            entries={
                coalition_members(mask): float(synergies.values[mask])
                for mask in range(1 << n)
            },
        )
    _emit(args, report.to_csv() if args.output == "csv" else report.to_json())
    return 0


def cmd_compare(args) -> int:
    source, inst = _load_source(args)
    left = _run_engine(args.left, source, inst, args.k, args)
    right = _run_engine(args.right, source, inst, args.k, args)
    if set(left.entries) != set(right.entries):
        raise UsageError(
            f"engines {args.left!r} and {args.right!r} report different coalition sets"
        )
    coalitions = sorted(left.entries)
    diffs = {c: abs(left.entries[c] - right.entries[c]) for c in coalitions}
    max_diff = max(diffs.values())
    if args.output == "csv":
        lines = [f"coalition;{args.left};{args.right};abs_diff"]
        for c in coalitions:
            label = "+".join(str(i) for i in c) if c else "-"
            lines.append(
                f"{label};{left.entries[c]!r};{right.entries[c]!r};{diffs[c]!r}"
            )
        lines.append(f"max_abs_diff;;;{max_diff!r}")
        _emit(args, "\n".join(lines))
    else:
        payload = {
            "order": left.order,
            "left": args.left,
            "right": args.right,
            "entries": [
                {
                    "coalition": list(c),
                    "left": left.entries[c],
                    "right": right.entries[c],
                    "abs_diff": diffs[c],
                }
                for c in coalitions
            ],
            "max_abs_diff": max_diff,
        }
        _emit(args, json.dumps(payload, indent=2))
    return 0


def cmd_check(args) -> int:
    if args.config:
        config = SuiteConfig.from_json_dict(_load_json(args.config))
    else:
        config = SuiteConfig()
    overrides = {}
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.trials is not None:
        overrides["trials"] = args.trials
    if args.method:
        overrides["methods"] = tuple(args.method)
    if args.axiom:
        overrides["axioms"] = tuple(args.axiom)
    if overrides:
        config = SuiteConfig(
            seed=overrides.get("seed", config.seed),
            trials=overrides.get("trials", config.trials),
            methods=overrides.get("methods", config.methods),
            axioms=overrides.get("axioms", config.axioms),
            tolerance_overrides=config.tolerance_overrides,
        )
    result = run_suite(config)
    if args.output == "csv":
        lines = ["method;axiom;status;expected;max_residual;trials"]
        for r in result.results:
            lines.append(
                f"{r.method};{r.axiom};{r.status};{r.expected};{r.max_residual!r};{r.trials}"
            )
        lines.append(f"ok;;;;{str(result.ok).lower()};")
        _emit(args, "\n".join(lines))
    else:
        _emit(args, json.dumps(result.to_json_dict(), indent=2))
    return 0 if result.ok else 1


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _add_source_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--expr", help="expression text over x1..xn")
    group.add_argument("--poly", help="polynomial JSON file")
    group.add_argument("--table", help="set-function table JSON file")
    parser.add_argument("--x", help="input point, comma-separated reals")
    parser.add_argument("--baseline", help="baseline point (default: zeros / the polynomial center)")
    parser.add_argument("--let", action="append", metavar="NAME=VALUE",
                        help="bind a named constant (repeatable)")
    parser.add_argument("--quad-nodes", type=int, default=64,
                        help="Gauss-Legendre nodes per panel (default 64)")
    parser.add_argument("--quad-panels", type=int, default=4,
                        help="composite quadrature panels (default 4)")


def _add_output_flag(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--output", choices=("json", "csv"), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="synergy",
        description="Game-theoretic attributions and k-th-order interactions "
        "via exact synergy decomposition.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    interact = sub.add_parser("interact", help="run one method on one instance")
    _add_source_flags(interact)
    interact.add_argument("--method", required=True, choices=METHOD_IDS)
    interact.add_argument("-k", type=int, default=1, help="interaction order (default 1)")
    _add_output_flag(interact)
    interact.set_defaults(handler=cmd_interact)

    decompose = sub.add_parser(
        "decompose", help="exact synergy decomposition of a function"
    )
    _add_source_flags(decompose)
    _add_output_flag(decompose)
    decompose.set_defaults(handler=cmd_decompose)

    compare = sub.add_parser("compare", help="run two engines side by side")
    compare.add_argument("left", choices=METHOD_IDS + ORACLE_IDS)
    compare.add_argument("right", choices=METHOD_IDS + ORACLE_IDS)
    _add_source_flags(compare)
    compare.add_argument("-k", type=int, default=1, help="interaction order (default 1)")
    _add_output_flag(compare)
    compare.set_defaults(handler=cmd_compare)

    check = sub.add_parser("check", help="run the axiom suite")
    check.add_argument("--config", help="suite config JSON file")
    check.add_argument("--seed", type=int)
    check.add_argument("--trials", type=int)
    check.add_argument("--method", action="append", help="restrict to a method (repeatable)")
    check.add_argument("--axiom", action="append", help="restrict to an axiom (repeatable)")
    _add_output_flag(check)
    check.set_defaults(handler=cmd_check)
    return parser


_VECTOR_FLAGS = ("--x", "--baseline")


def _normalize_argv(argv: list[str]) -> list[str]:
    """Join vector flags with their values so negative components are not
    mistaken for option names."""
    out: list[str] = []
    i = 0
    while i < len(argv):
        if argv[i] in _VECTOR_FLAGS and i + 1 < len(argv):
            out.append(f"{argv[i]}={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    try:
        args = parser.parse_args(_normalize_argv(list(argv)))
    except SystemExit as exit_:  # argparse uses 2 for usage errors
        return exit_.code if isinstance(exit_.code, int) else 2
    try:
        return args.handler(args)
    except (SynergyError, ValueError, OSError, json.JSONDecodeError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
