"""Command-line front end.

One subcommand per analysis family:

    analyze             constraint matrix, Smith normal form, hom count,
                        grading-set search
    enumerate           brute-force homomorphism enumeration with
                        elementary tagging
    orbits              orbit counting under the automorphism group
    kn-count            closed-form count of nonequivalent elementary
                        gradings of a full matrix ring
    verify-grading-set  exhaustive unique-extension check for an arrow set
    check-corollary     the |ord_p(G)| = |G|^(p-1) (mod p) congruence
    catalog             list the built-in digraphs

Reports are deterministic: the same inputs produce byte-identical stdout.
Exit codes: 0 success, 1 usage error, 2 validation failure, 3 budget
exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field

from . import digraph as dg
from . import homs, knformula, transmat
from .arith import is_prime
from .groups import (
    CayleyTableError,
    GroupSpecError,
    parse_cayley_file,
    parse_group_spec,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_BUDGET = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class AnalysisReport:
    """Ordered report sections; values are JSON-native.

    Counts that can be astronomically large are carried as exact decimal
    strings.  timing_ms is informational only and never rendered into the
    report body, which keeps output byte-identical across runs.
    """

    sections: dict = field(default_factory=dict)
    timing_ms: float | None = None

    def to_dict(self) -> dict:
        return self.sections


def format_report(report: AnalysisReport, mode: str) -> str:
    """Render a report as indented text or as stable JSON."""
    if mode == "json":
        return json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n"
    lines = []
    for section, payload in report.sections.items():
        if isinstance(payload, dict):
            lines.append(f"{section}:")
            for key, value in payload.items():
                lines.append(f"  {key}: {_fmt(value)}")
        elif isinstance(payload, list):
            lines.append(f"{section}:")
            for item in payload:
                if isinstance(item, dict):
                    lines.append("  " + ", ".join(f"{k}: {_fmt(v)}" for k, v in item.items()))
                else:
                    lines.append(f"  {_fmt(item)}")
        else:
            lines.append(f"{section}: {_fmt(payload)}")
    return "\n".join(lines) + "\n"


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, list):
        return " ".join(_fmt(v) for v in value)
    return str(value)


def _arrow_text(arrow) -> str:
    return f"{arrow[0]}->{arrow[1]}"


def _parse_arrow_list(text: str) -> list[tuple[int, int]]:
    arrows = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        sep = "->" if "->" in token else "-"
        parts = token.split(sep)
        if len(parts) != 2:
            raise UsageError(f"bad arrow {token!r}; expected a->b")
        try:
            arrows.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise UsageError(f"bad arrow {token!r}; endpoints must be integers") from None
    if not arrows and text.strip():
        raise UsageError(f"could not parse arrow list {text!r}")
    return arrows


def _add_common_flags(parser):
    parser.add_argument("--json", action="store_true", help="emit the report as JSON")


def _add_digraph_flags(parser):
    parser.add_argument("--graph", metavar="PATH", help="graph description file")
    parser.add_argument(
        "--catalog", metavar="NAME[:N]", help="built-in digraph, e.g. complete:4"
    )
    parser.add_argument(
        "--closure",
        action="store_true",
        help="apply the reflexive-transitive closure after loading",
    )


def _add_group_flags(parser):
    parser.add_argument("--group", metavar="SPEC", help="abelian group, e.g. Z6 or Z4xZ2")
    parser.add_argument("--cayley", metavar="PATH", help="Cayley table file")


def _load_digraph(args) -> tuple[dg.Digraph, str]:
    if args.graph and args.catalog:
        raise UsageError("--graph and --catalog are mutually exclusive")
    if args.graph:
        try:
            text = open(args.graph, encoding="utf-8").read()
        except OSError as exc:
            raise UsageError(f"cannot read {args.graph}: {exc}") from None
        d = dg.parse_digraph(text)
        source = f"file:{args.graph}"
    elif args.catalog:
        name, _, param_text = args.catalog.partition(":")
        param = None
        if param_text:
            if not param_text.isdigit():
                raise UsageError(f"bad catalog parameter {param_text!r}")
            param = int(param_text)
        try:
            d = dg.catalog(name, param)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        source = f"catalog:{args.catalog}"
    else:
        raise UsageError("a digraph is required (--graph or --catalog)")
    if args.closure:
        d = dg.closure(d)
        source += "+closure"
    return d, source


def _load_group(args):
    if args.group and args.cayley:
        raise UsageError("--group and --cayley are mutually exclusive")
    if args.group:
        try:
            return parse_group_spec(args.group)
        except GroupSpecError as exc:
            raise UsageError(str(exc)) from None
    if args.cayley:
        try:
            text = open(args.cayley, encoding="utf-8").read()
        except OSError as exc:
            raise UsageError(f"cannot read {args.cayley}: {exc}") from None
        return parse_cayley_file(text)
    raise UsageError("a group is required (--group or --cayley)")


def _digraph_section(d: dg.Digraph, source: str) -> dict:
    report = dg.validate(d)
    return {
        "source": source,
        "vertices": d.n,
        "arrows": len(d.arrows),
        "nonloop_arrows": len(d.nonloop_arrows),
        "transitive_triples": len(dg.transitive_triples(d)),
        "preordered": report.preordered,
    }


def _group_section(group) -> dict:
    if group.is_abelian and hasattr(group, "factors"):
        return {"kind": "abelian", "spec": group.describe(), "order": str(group.order)}
    return {
        "kind": "cayley",
        "order": str(group.order),
        "abelian": group.is_abelian,
    }


def _require_transitive(d: dg.Digraph):
    report = dg.validate(d, require_reflexive=False)
    if not report.transitive:
        first = report.transitivity_violations[0]
        raise transmat.NotTransitiveError(
            f"digraph is not transitive (e.g. {first[0]}->{first[1]}->{first[2]} "
            f"without {first[0]}->{first[2]}); try --closure"
        )


def _cmd_analyze(args) -> AnalysisReport:
    d, source = _load_digraph(args)
    if args.cayley:
        raise UsageError(
            "analyze needs an abelian --group; use enumerate/orbits for Cayley tables"
        )
    group = _load_group(args)
    _require_transitive(d)

    matrix, idx, triples = transmat.transitivity_matrix(d)
    system, _ = transmat.hom_system(d)
    snf = transmat.smith_normal_form(system)
    count = transmat.hom_count_from_invariants(snf.invariant_factors, len(idx), group)
    search = transmat.try_grading_set(d, group)

    report = AnalysisReport()
    report.sections["digraph"] = _digraph_section(d, source)
    report.sections["group"] = _group_section(group)
    report.sections["system"] = {
        "rows": system.rows,
        "cols": system.cols,
        "triple_rows": matrix.rows,
        "pair_rows": system.rows - matrix.rows,
    }
    report.sections["snf"] = {
        "invariant_factors": list(snf.invariant_factors),
        "rank": snf.rank,
    }
    report.sections["hom_count"] = str(count)
    if search.found:
        report.sections["grading_set"] = {
            "certified": True,
            "size": len(search.arrows),
            "arrows": [_arrow_text(a) for a in search.arrows],
        }
    else:
        report.sections["grading_set"] = {
            "certified": False,
            "reason": search.reason,
            "hom_count_power_of_group_order": search.power_of_group_order,
            "nonexistence_proved": search.nonexistence_proved,
        }
    if args.prime is not None:
        arrows, rank = transmat.grading_set_mod_p(d, args.prime)
        report.sections["mod_p"] = {
            "p": args.prime,
            "rank": rank,
            "size": len(arrows),
            "arrows": [_arrow_text(a) for a in arrows],
        }
    if args.dump_matrix:
        with open(args.dump_matrix, "w", encoding="utf-8") as handle:
            handle.write(transmat.format_matrix_dump(matrix, idx))
        report.sections["dump_matrix"] = args.dump_matrix
    return report


def _cmd_enumerate(args) -> AnalysisReport:
    d, source = _load_digraph(args)
    group = _load_group(args)
    found = homs.enumerate_homs(d, group, budget=args.budget)
    elementary = sum(1 for phi in found if homs.is_elementary(phi) is not None)

    report = AnalysisReport()
    report.sections["digraph"] = _digraph_section(d, source)
    report.sections["group"] = _group_section(group)
    report.sections["enumeration"] = {
        "hom_count": str(len(found)),
        "elementary_count": str(elementary),
    }
    if args.emit_homs:
        with open(args.emit_homs, "w", encoding="utf-8") as handle:
            for phi in found:
                handle.write(homs.format_hom(phi) + "\n")
        report.sections["enumeration"]["emitted_to"] = args.emit_homs
    return report


def _cmd_orbits(args) -> AnalysisReport:
    d, source = _load_digraph(args)
    group = _load_group(args)
    auts = dg.automorphisms(d)
    count = homs.orbit_count(d, group, budget=args.budget)
    total = len(homs.enumerate_homs(d, group, budget=args.budget))

    report = AnalysisReport()
    report.sections["digraph"] = _digraph_section(d, source)
    report.sections["group"] = _group_section(group)
    report.sections["orbits"] = {
        "automorphisms": len(auts),
        "hom_count": str(total),
        "orbit_count": str(count),
    }
    return report


def _cmd_kn_count(args) -> AnalysisReport:
    group = _load_group(args)
    report = AnalysisReport()
    report.sections["n"] = args.n
    report.sections["group"] = _group_section(group)
    try:
        if args.symbolic:
            report.sections["formula"] = knformula.format_formula(args.n)
        else:
            report.sections["count"] = str(
                knformula.count_nonequivalent_elementary(args.n, group)
            )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return report


def _cmd_verify_grading_set(args) -> AnalysisReport:
    d, source = _load_digraph(args)
    group = _load_group(args)
    if args.arrows is not None and args.prime is not None:
        raise UsageError("--arrows and --prime are mutually exclusive")
    if args.arrows is not None:
        arrows = _parse_arrow_list(args.arrows)
    elif args.prime is not None:
        _require_transitive(d)
        arrows, _ = transmat.grading_set_mod_p(d, args.prime)
        arrows = list(arrows)
    else:
        raise UsageError("verify-grading-set needs --arrows or --prime")
    verdict = homs.verify_grading_set(d, group, arrows, budget=args.budget)

    report = AnalysisReport()
    report.sections["digraph"] = _digraph_section(d, source)
    report.sections["group"] = _group_section(group)
    report.sections["verify"] = {
        "arrows": [_arrow_text(a) for a in sorted(arrows)],
        "ok": verdict.ok,
        "reason": verdict.reason,
    }
    return report


def _cmd_check_corollary(args) -> AnalysisReport:
    group = _load_group(args)
    if args.prime is None:
        raise UsageError("check-corollary needs --prime")
    try:
        check = knformula.corollary_residue_check(args.prime, group)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report = AnalysisReport()
    report.sections["group"] = _group_section(group)
    report.sections["congruence"] = {
        "p": check.p,
        "ord_p_residue": check.ord_p_residue,
        "power_residue": check.power_residue,
        "holds": check.holds,
    }
    return report


def _cmd_catalog(args) -> AnalysisReport:
    report = AnalysisReport()
    report.sections["catalog"] = [
        {"name": name, "description": desc} for name, desc in dg.catalog_entries()
    ]
    return report


def build_parser() -> _Parser:
    parser = _Parser(prog="structgrade", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    p = sub.add_parser("analyze", help="matrix, SNF, hom count, grading set")
    _add_digraph_flags(p)
    _add_group_flags(p)
    p.add_argument("--prime", type=int, metavar="P", help="also compute the mod-p grading set")
    p.add_argument("--dump-matrix", metavar="PATH", help="write the transitivity matrix")
    _add_common_flags(p)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("enumerate", help="brute-force homomorphisms")
    _add_digraph_flags(p)
    _add_group_flags(p)
    p.add_argument("--budget", type=int, default=homs.DEFAULT_BUDGET, metavar="N")
    p.add_argument("--emit-homs", metavar="PATH", help="write one homomorphism per line")
    _add_common_flags(p)
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("orbits", help="orbit counting under Aut(D)")
    _add_digraph_flags(p)
    _add_group_flags(p)
    p.add_argument("--budget", type=int, default=homs.DEFAULT_BUDGET, metavar="N")
    _add_common_flags(p)
    p.set_defaults(func=_cmd_orbits)

    p = sub.add_parser("kn-count", help="nonequivalent elementary gradings of M_n")
    p.add_argument("--n", type=int, required=True, metavar="N")
    _add_group_flags(p)
    p.add_argument("--symbolic", action="store_true", help="print the expanded formula")
    _add_common_flags(p)
    p.set_defaults(func=_cmd_kn_count)

    p = sub.add_parser("verify-grading-set", help="unique-extension check for an arrow set")
    _add_digraph_flags(p)
    _add_group_flags(p)
    p.add_argument("--arrows", metavar="LIST", help="comma-separated arrows, e.g. 1-2,1-3")
    p.add_argument("--prime", type=int, metavar="P", help="use the mod-p grading set")
    p.add_argument("--budget", type=int, default=homs.DEFAULT_BUDGET, metavar="N")
    _add_common_flags(p)
    p.set_defaults(func=_cmd_verify_grading_set)

    p = sub.add_parser("check-corollary", help="|ord_p(G)| = |G|^(p-1) (mod p)")
    p.add_argument("--prime", type=int, metavar="P")
    _add_group_flags(p)
    _add_common_flags(p)
    p.set_defaults(func=_cmd_check_corollary)

    p = sub.add_parser("catalog", help="list built-in digraphs")
    _add_common_flags(p)
    p.set_defaults(func=_cmd_catalog)

    return parser


def run(argv) -> tuple[int, str]:
    """Execute argv and return (exit status, report text)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "command", None):
            raise UsageError("a subcommand is required (see --help)")
        if getattr(args, "prime", None) is not None and args.command in (
            "analyze",
            "verify-grading-set",
        ):
            if not is_prime(args.prime):
                raise UsageError(f"{args.prime} is not prime")
        started = time.perf_counter()
        report = args.func(args)
        report.timing_ms = (time.perf_counter() - started) * 1000.0
        mode = "json" if getattr(args, "json", False) else "text"
        text = format_report(report, mode)
        print(f"# elapsed: {report.timing_ms:.1f} ms", file=sys.stderr)
        return EXIT_OK, text
    except UsageError as exc:
        return EXIT_USAGE, f"usage error: {exc}\n"
    except (
        dg.GraphFormatError,
        dg.GraphTooLargeError,
        CayleyTableError,
        transmat.NotTransitiveError,
    ) as exc:
        return EXIT_VALIDATION, f"validation failure: {exc}\n"
    except ValueError as exc:
        return EXIT_VALIDATION, f"validation failure: {exc}\n"
    except homs.BudgetExceededError as exc:
        return EXIT_BUDGET, f"budget exceeded: {exc}\n"


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    status, text = run(list(argv))
    stream = sys.stdout if status == EXIT_OK else sys.stderr
    stream.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
