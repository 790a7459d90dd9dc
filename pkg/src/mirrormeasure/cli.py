"""Command-line driver: tables, verify, mahler, search.

    mirrormeasure tables --example 3 -N 9
    mirrormeasure tables -A 16 -B 0 -L 4 --alpha 1 -N 9
    mirrormeasure verify --example 2 -N 100
    mirrormeasure mahler --example 6 -t 100
    mirrormeasure mahler --poly "X^2*Y*Z" -t 5
    mirrormeasure search --a-range 0:30 --b-range -10:0 --lam-range 0:10 -M 30

Formats: text (default), json, csv (tables and search only).  Output is
deterministic: json keys are emitted in a fixed order, every integer in a
table is rendered as a decimal string (consumers never overflow), rationals
as "p/q", and floats through mpmath at a fixed digit count.  Exit codes:
0 success, 1 verification failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import mpmath

from ._rational import is_integral, rational
from .laurent import LaurentParseError, parse_poly
from .mahler import (
    DomainNotCertifiedError,
    UnreliableEvaluationError,
    mahler_report,
    mahler_vs_bigQ,
)
from .modular import identity_suite
from .picard_fuchs import (
    RecurrenceSpec,
    check_consistency,
    frobenius,
    ode_residual,
    resolve_example,
    search_triples,
)
from .qexpansion import expansion_table

REAL_DIGITS = 24  # significant digits for float rendering


class UsageError(ValueError):
    """Bad flag combination or value; maps to exit code 2."""


@dataclass(frozen=True)
class RunConfig:
    """One resolved CLI invocation."""

    command: str
    fmt: str = "text"
    output: str | None = None
    example: str | None = None
    poly_text: str | None = None
    spec: RecurrenceSpec | None = None
    order: int = 9
    grid: int = 128
    precision: int | None = None
    t: str | None = None
    a_range: tuple | None = None
    b_range: tuple | None = None
    lam_range: tuple | None = None
    depth: int = 30


def _value_str(v) -> str:
    """Exact value to canonical text: decimal string, or 'p/q'."""
    q = rational(v)
    if is_integral(q):
        return str(int(q))
    return f"{q.numerator}/{q.denominator}"


def _real_str(v) -> str:
    if v is None:
        return ""
    return mpmath.nstr(v, REAL_DIGITS, strip_zeros=True)


def _parse_range(text: str, name: str) -> tuple:
    lo, sep, hi = text.partition(":")
    if not sep:
        raise UsageError(f"{name} must look like LO:HI, got {text!r}")
    try:
        bounds = (int(lo), int(hi))
    except ValueError:
        raise UsageError(f"{name} bounds must be integers, got {text!r}") from None
    if bounds[0] > bounds[1]:
        raise UsageError(f"{name} is empty: {text!r}")
    return bounds


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mirrormeasure",
        description="Exact q-expansions, instanton numbers, and Mahler "
        "measures for pencils of elliptic curves given by recurrence triples.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_output(p, formats=("text", "json")):
        p.add_argument("--format", "-f", choices=formats, default="text")
        p.add_argument("--output", "-o", default=None, metavar="PATH")

    t = sub.add_parser("tables", help="a_n/b_n table for an example or triple")
    t.add_argument("--example", "-e", help="registry id: 1-6, '#3', or E8/E7/E6/E5")
    t.add_argument("-A", type=int, default=None)
    t.add_argument("-B", type=int, default=None)
    t.add_argument("-L", "--lam", dest="lam", type=int, default=None)
    t.add_argument("--nu", type=int, default=1)
    t.add_argument("--alpha", type=int, default=-1, choices=(1, -1))
    t.add_argument("--kappa", type=int, default=None)
    t.add_argument("-N", "--order", dest="order", type=int, default=9)
    add_output(t, ("text", "json", "csv"))

    v = sub.add_parser("verify", help="consistency, ODE, and identity checks")
    v.add_argument("--example", "-e", required=True)
    v.add_argument("-N", "--order", dest="order", type=int, default=100)
    add_output(v)

    m = sub.add_parser("mahler", help="Mahler measure cross-checks")
    group = m.add_mutually_exclusive_group(required=True)
    group.add_argument("--example", "-e")
    group.add_argument("--poly", help="Laurent polynomial in X, Y, Z")
    m.add_argument("-t", required=True, help="parameter value (real or complex)")
    m.add_argument("-N", "--order", dest="order", type=int, default=80)
    m.add_argument("-M", "--grid", dest="grid", type=int, default=128)
    m.add_argument("--precision", type=int, default=None, metavar="BITS")
    add_output(m)

    s = sub.add_parser("search", help="integral recurrence triples in a box")
    s.add_argument("--a-range", required=True, metavar="LO:HI")
    s.add_argument("--b-range", required=True, metavar="LO:HI")
    s.add_argument("--lam-range", required=True, metavar="LO:HI")
    s.add_argument("-M", "--depth", dest="depth", type=int, default=30)
    add_output(s, ("text", "json", "csv"))

    return parser


def _config_from_args(args) -> RunConfig:
    common = dict(
        command=args.command,
        fmt=getattr(args, "format", "text"),
        output=getattr(args, "output", None),
    )
    if args.command == "tables":
        explicit = [args.A, args.B, args.lam]
        if args.example is not None:
            if any(v is not None for v in explicit):
                raise UsageError("give either --example or -A/-B/-L, not both")
            spec = resolve_example(args.example).spec
        else:
            if any(v is None for v in explicit):
                raise UsageError("an explicit spec needs all of -A, -B, -L")
            spec = RecurrenceSpec(
                A=args.A,
                B=args.B,
                lam=args.lam,
                nu=args.nu,
                alpha=args.alpha,
                kappa=args.kappa,
            )
        if args.order < 1:
            raise UsageError("order must be at least 1")
        return RunConfig(example=args.example, spec=spec, order=args.order, **common)
    if args.command == "verify":
        if args.order < 2:
            raise UsageError("order must be at least 2")
        return RunConfig(example=args.example, order=args.order, **common)
    if args.command == "mahler":
        if args.order < 1:
            raise UsageError("order must be at least 1")
        if args.grid < 1:
            raise UsageError("grid must be at least 1")
        return RunConfig(
            example=args.example,
            poly_text=args.poly,
            order=args.order,
            grid=args.grid,
            precision=args.precision,
            t=args.t,
            **common,
        )
    if args.command == "search":
        if args.depth < 1:
            raise UsageError("depth must be at least 1")
        return RunConfig(
            a_range=_parse_range(args.a_range, "--a-range"),
            b_range=_parse_range(args.b_range, "--b-range"),
            lam_range=_parse_range(args.lam_range, "--lam-range"),
            depth=args.depth,
            **common,
        )
    raise UsageError(f"unknown command {args.command!r}")


def _spec_dict(spec: RecurrenceSpec) -> dict:
    return {
        "A": spec.A,
        "B": spec.B,
        "lam": spec.lam,
        "nu": spec.nu,
        "alpha": spec.alpha,
        "kappa": spec.kappa,
    }


def cmd_tables(config: RunConfig) -> tuple:
    table = expansion_table(config.spec, config.order)
    rows = [
        {"n": n + 1, "a": _value_str(table.raw_a[n]), "b": _value_str(table.raw_b[n])}
        for n in range(config.order)
    ]
    if config.fmt == "json":
        payload = {
            "command": "tables",
            "spec": _spec_dict(config.spec),
            "order": config.order,
            "rows": rows,
            "a_integral": table.a_integral,
            "b_integral": table.b_integral,
        }
        return 0, json.dumps(payload, indent=2) + "\n"
    if config.fmt == "csv":
        lines = ["n,a_n,b_n"]
        lines += [f"{r['n']},{r['a']},{r['b']}" for r in rows]
        return 0, "\n".join(lines) + "\n"
    width_a = max((len(r["a"]) for r in rows), default=3)
    width_b = max((len(r["b"]) for r in rows), default=3)
    s = config.spec
    lines = [
        f"spec: A={s.A} B={s.B} lam={s.lam} nu={s.nu} alpha={s.alpha}"
        + (f" kappa={s.kappa}" if s.kappa is not None else ""),
        f"{'n':>3}  {'a_n':>{width_a}}  {'b_n':>{width_b}}",
    ]
    lines += [f"{r['n']:>3}  {r['a']:>{width_a}}  {r['b']:>{width_b}}" for r in rows]
    lines.append(
        f"a integral: {'yes' if table.a_integral else 'NO'}   "
        f"b integral: {'yes' if table.b_integral else 'NO'}"
    )
    return 0, "\n".join(lines) + "\n"


def cmd_verify(config: RunConfig) -> tuple:
    entry = resolve_example(config.example)
    spec = entry.spec
    n = config.order
    poly = parse_poly(entry.polynomial)
    consistency = check_consistency(poly, spec, n)
    pair = frobenius(spec, n)
    g1_zero = ode_residual(spec, pair.g1).is_zero()
    partner_zero = ode_residual(spec, pair.h, use_log_partner=True).is_zero()
    suite = identity_suite(entry.example_id, n)
    passed = consistency.passed and g1_zero and partner_zero and suite.passed

    records = []
    records.append(
        {
            "label": f"diagonal coefficients match the recurrence (order {n})",
            "status": "pass" if consistency.passed else "mismatch",
            "detail": None
            if consistency.passed
            else {
                "order": consistency.first_mismatch[0],
                "diagonal": _value_str(consistency.first_mismatch[1]),
                "recurrence": _value_str(consistency.first_mismatch[2]),
            },
        }
    )
    records.append(
        {
            "label": f"operator annihilates the holomorphic solution (order {n})",
            "status": "pass" if g1_zero else "mismatch",
            "detail": None,
        }
    )
    records.append(
        {
            "label": f"operator annihilates the log partner (order {n})",
            "status": "pass" if partner_zero else "mismatch",
            "detail": None,
        }
    )
    for check in suite.checks:
        detail = None
        if check.status == "mismatch":
            detail = {
                "order": check.mismatch_order,
                "lhs": _value_str(check.lhs_coefficient),
                "rhs": _value_str(check.rhs_coefficient),
            }
        records.append(
            {
                "label": check.label,
                "status": check.status,
                "detail": detail,
                **({"note": check.note} if check.note else {}),
            }
        )

    if config.fmt == "json":
        payload = {
            "command": "verify",
            "example": entry.example_id,
            "order": n,
            "checks": records,
            "passed": passed,
        }
        return (0 if passed else 1), json.dumps(payload, indent=2) + "\n"
    lines = [f"example #{entry.example_id}  ({entry.polynomial}),  order {n}"]
    for rec in records:
        tag = {"pass": "[pass]  ", "caveat": "[caveat]", "mismatch": "[FAIL]  "}[
            rec["status"]
        ]
        lines.append(f"{tag} {rec['label']}")
        if rec.get("note"):
            lines.append(f"         note: {rec['note']}")
        if rec["detail"]:
            d = rec["detail"]
            lines.append(
                f"         first mismatch at order {d.get('order')}: "
                f"{d.get('lhs', d.get('diagonal'))} != {d.get('rhs', d.get('recurrence'))}"
            )
    caveats = sum(1 for r in records if r["status"] == "caveat")
    summary = "pass" if passed else "FAIL"
    if passed and caveats:
        summary += f" ({caveats} caveat{'s' if caveats > 1 else ''})"
    lines.append(f"result: {summary}")
    return (0 if passed else 1), "\n".join(lines) + "\n"


def cmd_mahler(config: RunConfig) -> tuple:
    if config.example is not None:
        entry = resolve_example(config.example)
        try:
            check = mahler_vs_bigQ(
                entry, config.t, config.order, config.grid, config.precision
            )
        except (DomainNotCertifiedError, ValueError) as exc:
            report = mahler_report(
                parse_poly(entry.polynomial),
                config.t,
                config.order,
                config.grid,
                config.precision,
            )
            return _render_mahler_report(
                config, report, extra=f"product-route cross-check unavailable: {exc}"
            )
        payload = {
            "command": "mahler",
            "example": check.example_id,
            "t": _real_str(check.t),
            "order": check.order,
            "grid": check.grid,
            "series_value": _real_str(check.series_value),
            "quadrature_value": _real_str(check.quadrature_value),
            "bigq_value": _real_str(check.bigq_value),
            "series_tail_bound": _real_str(check.series_tail),
            "bigq_tail_estimate": _real_str(check.bigq_tail_estimate),
            "max_pairwise_difference": _real_str(check.max_pairwise_difference),
            "warnings": [check.quadrature.warning] if check.quadrature.warning else [],
        }
        if config.fmt == "json":
            return 0, json.dumps(payload, indent=2) + "\n"
        lines = [
            f"example #{check.example_id}, t = {payload['t']}",
            f"series     (N={check.order}):  {payload['series_value']}",
            f"quadrature (M={check.grid}):  {payload['quadrature_value']}",
            f"-(1/nu) log|Q|:  {payload['bigq_value']}",
            f"max pairwise difference: {payload['max_pairwise_difference']}",
            f"series tail bound: {payload['series_tail_bound']}",
        ]
        for w in payload["warnings"]:
            lines.append(f"warning: {w}")
        return 0, "\n".join(lines) + "\n"
    poly = parse_poly(config.poly_text)
    report = mahler_report(
        poly, config.t, config.order, config.grid, config.precision
    )
    return _render_mahler_report(config, report)


def _render_mahler_report(config: RunConfig, report, extra: str | None = None) -> tuple:
    warnings = list(report.warnings)
    if extra:
        warnings.insert(0, extra)
    payload = {
        "command": "mahler",
        "t": _real_str(report.t),
        "domain_certified": report.domain_certified,
        "series_value": _real_str(report.series_value)
        if report.series_value is not None
        else None,
        "quadrature_value": _real_str(report.quadrature_value),
        "grid": report.grid_size,
        "abs_difference": _real_str(report.abs_difference)
        if report.abs_difference is not None
        else None,
        "warnings": warnings,
    }
    if config.example is not None:
        payload["example"] = resolve_example(config.example).example_id
    if config.fmt == "json":
        return 0, json.dumps(payload, indent=2) + "\n"
    lines = [f"t = {payload['t']}   domain certified: {report.domain_certified}"]
    if payload["series_value"] is not None:
        lines.append(f"series     (N={config.order}):  {payload['series_value']}")
    lines.append(f"quadrature (M={report.grid_size}):  {payload['quadrature_value']}")
    if payload["abs_difference"] is not None:
        lines.append(f"abs difference: {payload['abs_difference']}")
    for w in warnings:
        lines.append(f"warning: {w}")
    return 0, "\n".join(lines) + "\n"


def cmd_search(config: RunConfig) -> tuple:
    triples = search_triples(
        config.a_range, config.b_range, config.lam_range, config.depth
    )
    if config.fmt == "json":
        payload = {
            "command": "search",
            "depth": config.depth,
            "count": len(triples),
            "triples": [{"A": a, "B": b, "lam": lam} for a, b, lam in triples],
        }
        return 0, json.dumps(payload, indent=2) + "\n"
    if config.fmt == "csv":
        lines = ["A,B,lam"] + [f"{a},{b},{lam}" for a, b, lam in triples]
        return 0, "\n".join(lines) + "\n"
    lines = [f"integral triples to depth {config.depth}: {len(triples)}"]
    lines += [f"  ({a}, {b}, {lam})" for a, b, lam in triples]
    return 0, "\n".join(lines) + "\n"


_DISPATCH = {
    "tables": cmd_tables,
    "verify": cmd_verify,
    "mahler": cmd_mahler,
    "search": cmd_search,
}


_RANGE_FLAGS = ("--a-range", "--b-range", "--lam-range")


def _join_range_flags(argv: list) -> list:
    """Merge '--b-range -10:0' into '--b-range=-10:0' so argparse does not
    mistake a range starting with a minus sign for an option."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _RANGE_FLAGS and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    try:
        args = parser.parse_args(_join_range_flags(list(argv)))
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        config = _config_from_args(args)
        if config.fmt == "csv" and config.command not in ("tables", "search"):
            raise UsageError("csv output is only available for tables and search")
        code, text = _DISPATCH[config.command](config)
    except (UsageError, LaurentParseError, KeyError) as exc:
        message = exc.args[0] if exc.args else str(exc)
        print(f"error: {message}", file=sys.stderr)
        return 2
    except (DomainNotCertifiedError, UnreliableEvaluationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if config.output:
        with open(config.output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
