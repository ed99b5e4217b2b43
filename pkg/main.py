"""
Command line for the stable Kneser lab.

Exit codes: 0 success (Satisfied, Equal, check passed), 2 a finding (Violated,
a failed check, not colorable, refutation failed), 1 errors, 3 an engine cap was hit.
"""
import argparse
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

from models.hypergraph import Hypergraph
from models.limits import BACKENDS, EngineLimits
from models.reports import CheckReport, Comparison, EqualityReport, GapReport, RemarkReport, ScanParams, Verdict
from models.set_system import SetSystem, StabilityKind
from parsers.dimacs import export_cnf
from parsers.hypergraph_io import hypergraph_to_json, write_edge_list
from parsers.report_io import (CertificateStore, check_to_dict, chi_to_dict, coloring_payload, defect_to_dict,
                               dump_document, equality_to_dict, gap_report_to_dict, refutation_to_dict,
                               remark_to_dict, report_document, scan_to_dict, summary_text)
from parsers.set_system_parser import load_input, serialize_set_system, set_system_to_json
from solver.coloring import chromatic_number, is_m_colorable
from solver.conjectures import (afl_check, footnote_grid, frick_gap, schrijver_check, scan_random_families,
                                verify_proposition1, verify_proposition2, verify_remark_bound, weak_gap,
                                ziegler_check)
from solver.defect import colorability_defect, defect_lower_bound_report
from solver.families import complete_k_subsets, family_F_nr, family_prop2, filter_part
from solver.kneser import build_kneser, family_as_hypergraph
from utils.errors import CapExceededError, KneserLabError, ParseError

logger = logging.getLogger("kneserlab")

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_FINDING = 2
EXIT_CAP = 3


class UsageError(Exception):
    """Bad command-line arguments"""


class KneserArgumentParser(argparse.ArgumentParser):
    """argparse exits with 2 on bad usage; 2 is taken by findings here"""

    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


@dataclass
class Outcome:
    kind: str
    report: Union[dict, list]
    text: str
    code: int = EXIT_OK


def _positive_int(value: str) -> int:
    try:
        n = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{value!r} is not an integer")
    if n < 1:
        raise argparse.ArgumentTypeError(f"{value} must be a positive integer")
    return n


def _non_negative_int(value: str) -> int:
    try:
        n = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{value!r} is not an integer")
    if n < 0:
        raise argparse.ArgumentTypeError(f"{value} must be non-negative")
    return n


def _int_range(value: str) -> Tuple[int, int]:
    """`lo:hi` (inclusive) or a single integer"""
    parts = value.split(":")
    try:
        bounds = [int(p) for p in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"{value!r} is not a range lo:hi")
    if len(bounds) == 1:
        return bounds[0], bounds[0]
    if len(bounds) != 2 or bounds[0] > bounds[1]:
        raise argparse.ArgumentTypeError(f"{value!r} is not a range lo:hi with lo <= hi")
    return bounds[0], bounds[1]


def _plant_fnr(value: str) -> Tuple[int, int]:
    parts = value.split(":")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"{value!r} is not N:R")
    return _positive_int(parts[0]), _positive_int(parts[1])


def build_parser() -> argparse.ArgumentParser:
    common = KneserArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text",
                        help="output format (default: text)")
    common.add_argument("--output", "-o", type=Path, help="write to this file instead of stdout")
    common.add_argument("--max-edges", type=_non_negative_int, default=10_000_000,
                        help="largest Kneser edge count materialized (default: 10000000)")
    common.add_argument("--max-members", type=_non_negative_int, default=1_000_000,
                        help="largest set system a constructor enumerates (default: 1000000)")
    common.add_argument("--max-defect-size", type=_non_negative_int, default=None,
                        help="largest removal size the defect search may reach (default: unbounded)")
    common.add_argument("--time-budget-seconds", type=float, default=None,
                        help="wall-clock budget per engine call (default: unbounded; set one for large inputs)")
    common.add_argument("--threads", type=_positive_int, default=1,
                        help="worker count; values never depend on it")
    common.add_argument("--backend", choices=BACKENDS, default="backtrack",
                        help="exact colorability backend")
    common.add_argument("--seed", type=_non_negative_int, default=0,
                        help="seed for scans and the CP-SAT backend")
    common.add_argument("-v", "--verbose", action="count", default=0,
                        help="-v for progress, -vv for search details (stderr)")

    p = KneserArgumentParser(
        prog="kneserlab",
        description="Exact chromatic numbers and colorability defects of generalized Kneser hypergraphs.",
    )
    sub = p.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    construct = sub.add_parser("construct", help="build a set system")
    which = construct.add_subparsers(dest="family", metavar="FAMILY")
    which.required = True
    complete = which.add_parser("complete", parents=[common], help="all k-subsets of [n]")
    complete.add_argument("--n", type=_positive_int, required=True)
    complete.add_argument("--k", type=_positive_int, required=True)
    fnr = which.add_parser("fnr", parents=[common], help="2-subsets of [n] that are not r-stable")
    fnr.add_argument("--n", type=_positive_int, required=True)
    fnr.add_argument("--r", type=_positive_int, required=True)
    prop2 = which.add_parser("prop2", parents=[common], help="F(r(2r-1), r) plus the closed chain of stable pairs")
    prop2.add_argument("--r", type=_positive_int, required=True)

    filt = sub.add_parser("filter", parents=[common], help="keep the s-stable or almost s-stable members")
    filt.add_argument("--input", "-i", required=True)
    filt.add_argument("--s", type=_positive_int, required=True)
    filt.add_argument("--kind", choices=[k.value for k in StabilityKind], default=StabilityKind.STABLE.value)

    kneser = sub.add_parser("kneser", parents=[common], help="build KG^r of a set system")
    kneser.add_argument("--input", "-i", required=True)
    kneser.add_argument("--r", type=_positive_int, required=True)

    chi = sub.add_parser("chi", parents=[common], help="exact chromatic number")
    chi.add_argument("--input", "-i", required=True)
    chi.add_argument("--kneser", type=_positive_int, metavar="R",
                     help="color KG^R of the set system instead of the set system itself")

    colorable = sub.add_parser("colorable", parents=[common], help="decide m-colorability")
    colorable.add_argument("--input", "-i", required=True)
    colorable.add_argument("--m", type=_positive_int, required=True)
    colorable.add_argument("--kneser", type=_positive_int, metavar="R")

    defect = sub.add_parser("defect", parents=[common], help="exact r-colorability defect")
    defect.add_argument("--input", "-i", required=True)
    defect.add_argument("--r", type=_positive_int, required=True)
    defect.add_argument("--refute", type=_non_negative_int, metavar="B",
                        help="only prove cd_r > B by refuting every removal set of size <= B")

    verify = sub.add_parser("verify", help="check a proposition or closed form")
    claim = verify.add_subparsers(dest="claim", metavar="CLAIM")
    claim.required = True
    prop1 = claim.add_parser("prop1", parents=[common], help="cd_r(F(kr+1, r)) = 1 with an empty stable part")
    prop1.add_argument("--r", type=_positive_int, required=True)
    prop1.add_argument("--k", type=_positive_int, required=True)
    prop2v = claim.add_parser("prop2", parents=[common], help="chi = 1 and cd_r >= r on the augmented family")
    prop2v.add_argument("--r", type=_positive_int, required=True)
    prop2v.add_argument("--no-exact", action="store_true", help="skip the exact cd computation")
    remark = claim.add_parser("remark", parents=[common], help="almost stable chi is at most one above stable chi")
    remark.add_argument("--input", "-i", required=True)
    remark.add_argument("--r", type=_positive_int, required=True)
    for name, help_text in (("ziegler", "chi of the r-stable part of C(n,k) against the closed form"),
                            ("afl", "chi of KG^r(C(n,k)) against the closed form")):
        eq = claim.add_parser(name, parents=[common], help=help_text)
        eq.add_argument("--n", type=_positive_int, required=True)
        eq.add_argument("--k", type=_positive_int, required=True)
        eq.add_argument("--r", type=_positive_int, required=True)
    schrijver = claim.add_parser("schrijver", parents=[common], help="chi of the 2-stable part of C(n,k)")
    schrijver.add_argument("--n", type=_positive_int, required=True)
    schrijver.add_argument("--k", type=_positive_int, required=True)
    footnote = claim.add_parser("footnote", parents=[common], help="stable gap on F(n, r) for r <= n <= n_max")
    footnote.add_argument("--r", type=_positive_int, required=True)
    footnote.add_argument("--n-max", type=_positive_int, required=True)
    footnote.add_argument("--include-multiples", action="store_true",
                          help="also report n divisible by r (expected Satisfied)")

    gap = sub.add_parser("gap", parents=[common], help="chi of a stable part against ceil(cd_r / (r-1))")
    gap.add_argument("variant", choices=("frick", "weak"))
    gap.add_argument("--input", "-i", required=True)
    gap.add_argument("--r", type=_positive_int, required=True)

    scan = sub.add_parser("scan", parents=[common], help="seeded random counterexample scan")
    scan.add_argument("--n", type=_int_range, default=(4, 9), metavar="LO:HI", help="ground sizes")
    scan.add_argument("--members", type=_int_range, default=(1, 10), metavar="LO:HI", help="member counts")
    scan.add_argument("--member-size", type=_int_range, default=(1, 3), metavar="LO:HI")
    scan.add_argument("--r", type=_int_range, default=(2, 3), metavar="LO:HI")
    scan.add_argument("--samples", type=_non_negative_int, default=20)
    scan.add_argument("--plant-fnr", type=_plant_fnr, action="append", default=[], metavar="N:R",
                      help="also evaluate F(N, R); repeatable")
    scan.add_argument("--plant-prop2", type=_positive_int, action="append", default=[], metavar="R",
                      help="also evaluate the augmented family for R; repeatable")

    cnf = sub.add_parser("export-cnf", parents=[common], help="DIMACS CNF of m-colorability")
    cnf.add_argument("--input", "-i", required=True)
    cnf.add_argument("--m", type=_positive_int, required=True)
    cnf.add_argument("--kneser", type=_positive_int, metavar="R")
    return p


def _limits(args: argparse.Namespace) -> EngineLimits:
    return EngineLimits(
        max_edges=args.max_edges,
        max_members=args.max_members,
        max_defect_size=args.max_defect_size,
        time_budget_seconds=args.time_budget_seconds,
        threads=args.threads,
        backend=args.backend,
        cpsat_seed=args.seed,
    )


def _load_family(path: str) -> SetSystem:
    loaded = load_input(path)
    if not isinstance(loaded, SetSystem):
        raise ParseError(f"{path}: expected a set system, got a hypergraph")
    return loaded


def _load_hypergraph(args: argparse.Namespace, limits: EngineLimits) -> Hypergraph:
    loaded = load_input(args.input)
    r = getattr(args, "kneser", None)
    if isinstance(loaded, Hypergraph):
        if r is not None:
            raise ParseError(f"{args.input}: --kneser needs a set system, got a hypergraph")
        return loaded
    if r is not None:
        return build_kneser(loaded, r, limits)
    return family_as_hypergraph(loaded)


def _set_system_outcome(family: SetSystem) -> Outcome:
    return Outcome("set_system", set_system_to_json(family), serialize_set_system(family))


def _check_text(report: CheckReport) -> str:
    params = " ".join(f"{k}={v}" for k, v in report.params.items())
    lines = [f"{report.name} {params}: {'PASSED' if report.passed else 'FAILED'}"]
    for check in report.checks:
        mark = "ok" if check.passed else "FAIL"
        lines.append(f"  [{mark}] {check.name}" + (f": {check.detail}" if check.detail else ""))
    for key, value in report.values.items():
        lines.append(f"  {key} = {value}")
    return "\n".join(lines) + "\n"


def _equality_text(report: EqualityReport) -> str:
    return (f"{report.name} n={report.n} k={report.k} r={report.r}: chi = {report.chi.chi}, "
            f"closed form {report.expected}: {report.comparison.value}\n")


def _remark_text(report: RemarkReport) -> str:
    lines = [
        f"remark {report.family} r={report.r}: {'PASSED' if report.passed else 'FAILED'}",
        f"  chi stable = {report.chi_stable.chi}, chi almost stable = {report.chi_almost.chi}, "
        f"difference = {report.difference}",
        f"  extension uses {report.extension_colors} colors, verified = {report.extension_verified}",
        f"  rhs = {report.rhs}, stable slack = {report.stable_slack}, weak inequality holds = {report.weak_holds}",
    ]
    return "\n".join(lines) + "\n"


def _gap_text(reports: Sequence[GapReport], sample_indices: Optional[List[int]] = None) -> str:
    text = summary_text(reports, sample_indices)
    for rep in reports:
        if rep.note:
            text += f"note ({rep.family}, r={rep.r}): {rep.note}\n"
    return text


def _cmd_construct(args, limits, store) -> Outcome:
    if args.family == "complete":
        return _set_system_outcome(complete_k_subsets(args.n, args.k, limits))
    if args.family == "fnr":
        return _set_system_outcome(family_F_nr(args.n, args.r))
    return _set_system_outcome(family_prop2(args.r))


def _cmd_filter(args, limits, store) -> Outcome:
    family = _load_family(args.input)
    return _set_system_outcome(filter_part(family, args.s, StabilityKind(args.kind)))


def _cmd_kneser(args, limits, store) -> Outcome:
    graph = build_kneser(_load_family(args.input), args.r, limits)
    return Outcome("hypergraph", hypergraph_to_json(graph), write_edge_list(graph))


def _cmd_chi(args, limits, store) -> Outcome:
    graph = _load_hypergraph(args, limits)
    result = chromatic_number(graph, limits)
    report = {"vertex_count": graph.vertex_count, "edge_count": len(graph.edges), **chi_to_dict(result, store)}
    text = f"chi = {result.chi}\n"
    if result.certificate is not None:
        text += f"coloring: {' '.join(str(c) for c in result.certificate.colors)}\n"
    return Outcome("chi", report, text)


def _cmd_colorable(args, limits, store) -> Outcome:
    graph = _load_hypergraph(args, limits)
    found = is_m_colorable(graph, args.m, limits)
    report = {"m": args.m, "colorable": found is not None,
              "certificate": store.put(coloring_payload(found)) if found is not None else None}
    if found is None:
        return Outcome("colorable", report, f"not {args.m}-colorable\n", EXIT_FINDING)
    return Outcome("colorable", report, f"{args.m}-colorable: {' '.join(str(c) for c in found.colors)}\n")


def _cmd_defect(args, limits, store) -> Outcome:
    graph = _load_hypergraph(args, limits)
    if args.refute is not None:
        record = defect_lower_bound_report(graph, args.r, args.refute, limits)
        if record.refuted:
            text = (f"cd_{args.r} > {args.refute}: {record.total_refuted} removal sets refuted "
                    f"({record.by_obstruction} by obstruction, {record.by_search} by search)\n")
            return Outcome("refutation", refutation_to_dict(record), text)
        witness = [graph.label_of(v) for v in record.counterwitness]
        text = f"cd_{args.r} <= {args.refute}: removing {witness} leaves an {args.r}-colorable remainder\n"
        return Outcome("refutation", refutation_to_dict(record), text, EXIT_FINDING)
    result = colorability_defect(graph, args.r, limits)
    text = (f"cd_{args.r} = {result.cd}\nremoved ({result.label_kind}): {list(result.removed_labels)}\n"
            f"coloring: {' '.join(str(c) for c in result.certificate.coloring.colors)}\n")
    return Outcome("defect", defect_to_dict(result), text)


def _cmd_verify(args, limits, store) -> Outcome:
    if args.claim == "prop1":
        report = verify_proposition1(args.r, args.k, limits)
    elif args.claim == "prop2":
        report = verify_proposition2(args.r, limits, exact=not args.no_exact)
    elif args.claim == "remark":
        family = _load_family(args.input)
        remark = verify_remark_bound(family, args.r, limits, family_name=Path(args.input).name)
        return Outcome("remark", remark_to_dict(remark, store), _remark_text(remark),
                       EXIT_OK if remark.passed else EXIT_FINDING)
    elif args.claim == "footnote":
        reports = footnote_grid(args.r, args.n_max, limits, include_multiples=args.include_multiples)
        agree = all(rep.verdict == rep.expected for rep in reports)
        return Outcome("footnote", [gap_report_to_dict(rep, store) for rep in reports], _gap_text(reports),
                       EXIT_OK if agree else EXIT_FINDING)
    else:
        if args.claim == "ziegler":
            equality = ziegler_check(args.n, args.k, args.r, limits)
        elif args.claim == "afl":
            equality = afl_check(args.n, args.k, args.r, limits)
        else:
            equality = schrijver_check(args.n, args.k, limits)
        return Outcome("equality", equality_to_dict(equality, store), _equality_text(equality),
                       EXIT_OK if equality.comparison == Comparison.EQUAL else EXIT_FINDING)
    return Outcome(args.claim, check_to_dict(report, store), _check_text(report),
                   EXIT_OK if report.passed else EXIT_FINDING)


def _cmd_gap(args, limits, store) -> Outcome:
    family = _load_family(args.input)
    evaluate = frick_gap if args.variant == "frick" else weak_gap
    report = evaluate(family, args.r, limits, family_name=Path(args.input).name)
    text = _gap_text([report]) + f"removed ({report.defect.label_kind}): {list(report.defect.removed_labels)}\n"
    return Outcome("gap", gap_report_to_dict(report, store), text,
                   EXIT_FINDING if report.verdict == Verdict.VIOLATED else EXIT_OK)


def _cmd_scan(args, limits, store) -> Outcome:
    params = ScanParams(
        ground_size_range=args.n,
        member_count_range=args.members,
        member_size_range=args.member_size,
        r_range=args.r,
        samples=args.samples,
        seed=args.seed,
    )
    planted = [(f"F({n},{r})", family_F_nr(n, r), r) for n, r in args.plant_fnr]
    planted += [(f"prop2({r})", family_prop2(r), r) for r in args.plant_prop2]
    result = scan_random_families(params, limits, planted)
    summary = result.summary()
    text = _gap_text(result.reports, result.sample_indices)
    text += " ".join(f"{key}={value}" for key, value in summary.items()) + "\n"
    return Outcome("scan", scan_to_dict(result, store), text,
                   EXIT_FINDING if summary["violated"] else EXIT_OK)


def _cmd_export_cnf(args, limits, store) -> Outcome:
    # DIMACS is written as is, whatever --format says
    text = export_cnf(_load_hypergraph(args, limits), args.m)
    return Outcome("cnf", {}, text)


COMMANDS = {
    "construct": _cmd_construct,
    "filter": _cmd_filter,
    "kneser": _cmd_kneser,
    "chi": _cmd_chi,
    "colorable": _cmd_colorable,
    "defect": _cmd_defect,
    "verify": _cmd_verify,
    "gap": _cmd_gap,
    "scan": _cmd_scan,
    "export-cnf": _cmd_export_cnf,
}


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity == 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s", force=True)


def _emit(outcome: Outcome, args: argparse.Namespace, store: CertificateStore) -> None:
    if args.format == "json" and outcome.kind != "cnf":
        payload = dump_document(report_document(outcome.kind, outcome.report, store))
    else:
        payload = outcome.text
    if args.output is not None:
        args.output.write_text(payload, encoding="utf-8")
    else:
        sys.stdout.write(payload)


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse argv, dispatch, write the report and return the exit code"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_ERROR
    except SystemExit as exc:
        # --help
        return int(exc.code or 0)
    _configure_logging(args.verbose)

    store = CertificateStore()
    try:
        limits = _limits(args)
        outcome = COMMANDS[args.command](args, limits, store)
        _emit(outcome, args, store)
    except CapExceededError as exc:
        logger.error(f"Cap hit: {exc}")
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (KneserLabError, ValueError, OSError) as exc:
        logger.debug("Command failed", exc_info=True)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    return outcome.code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
