"""Command-line front end: monodromy, verification suites, and rank tables.

Output is deterministic and byte-stable: fixed orderings everywhere, no
timestamps.  Every verification subcommand exits 0 exactly when all
requested checks pass, and prints one FAIL line per failed instance
otherwise.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from multiprocessing import Pool

from . import arrangements as arr
from . import liealg
from . import monomial as mono
from .braid import braid_to_text, linking_numbers
from .report import Report
from .wiring import WiringError, braid_monodromy, parse_wiring, real_line, wiring_from_real_lines

MAX_R = 6
MAX_N = 6
MAX_DEGREE = 8


class CliError(Exception):
    pass


def _guard(name: str, value: int, cap: int) -> None:
    if value > cap:
        raise CliError(
            f"{name}={value} exceeds the supported bound {cap}: conjugated "
            "braid words and graded Lie dimensions grow combinatorially, so "
            "cost explodes past desk scale"
        )
    if value < 1:
        raise CliError(f"{name} must be positive, got {value}")


def _print_report(report: Report, out) -> bool:
    for check in report.checks:
        out.write(check.line() + "\n")
    out.write(report.summary() + "\n")
    if not report.passed:
        for check in report.failures:
            out.write(f"FAIL\t{report.title}\t{check.name}\n")
    return report.passed


def _monodromy_text(W) -> str:
    lines = [f"n {W.n}"]
    for g in braid_monodromy(W):
        lines.append(f"generator {g.index}")
        lines.append("gamma: " + braid_to_text(g.braid))
        lines.append(
            "V: " + " | ".join(" ".join(map(str, b)) for b in g.blocks)
        )
        lk = linking_numbers(g.braid)
        lines.append("linking:")
        for row in lk:
            lines.append(" ".join(map(str, row)))
    return "\n".join(lines) + "\n"


def _cmd_monodromy(args, out) -> int:
    text = _read_file(args.wiring_file)
    W = parse_wiring(text)
    out.write(_monodromy_text(W))
    return 0


def _parse_lines_file(text: str):
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        parts = body.split()
        if len(parts) != 2:
            raise CliError(f"line {lineno}: expected 'slope intercept'")
        try:
            lines.append(real_line(Fraction(parts[0]), Fraction(parts[1])))
        except (ValueError, ZeroDivisionError) as exc:
            raise CliError(f"line {lineno}: bad rational ({exc})") from exc
    return lines


def _cmd_lines(args, out) -> int:
    lines = _parse_lines_file(_read_file(args.lines_file))
    W = wiring_from_real_lines(lines)
    out.write(_monodromy_text(W))
    return 0


def _cmd_typeb(args, out) -> int:
    _guard("n", args.n, MAX_N)
    chi = arr.typeb_monodromy_closed(args.n)
    for sym in arr.typeb_meridian_symbols(args.n):
        out.write(f"chi({sym.label()}) = {braid_to_text(chi[sym])}\n")
    if args.verify:
        report = arr.typeb_wiring_cross_check(args.n)
        return 0 if _print_report(report, out) else 1
    return 0


def _cmd_monomial(args, out) -> int:
    _guard("r", args.r, MAX_R)
    _guard("n", args.n, MAX_N)
    prm = mono.params(args.r, args.n)
    suites = {
        "relations": mono.verify_monomial_relations,
        "lemma-conj": mono.verify_lemma_conj,
        "presentation": mono.verify_presentation,
        "generators": mono.verify_generators_free_factor,
    }
    runner = suites[args.verify]
    if args.verify == "relations" and args.jobs > 1:
        report = _run_pairs(
            f"monomial braid relations, r={prm.r}, n={prm.n}",
            mono.monomial_relation_instances(prm),
            args.jobs,
        )
    else:
        report = runner(prm)
    return 0 if _print_report(report, out) else 1


def _pair_worker(task):
    from .braid import BraidWord, braid_equal

    name, n, la, lb = task
    return name, braid_equal(BraidWord(n, la), BraidWord(n, lb))


def _run_pairs(title: str, instances, jobs: int) -> Report:
    """Ordered relation sweep over (name, lhs, rhs) braid pairs."""
    tasks = [
        (name, lhs.strands, lhs.letters, rhs.letters) for name, lhs, rhs in instances
    ]
    report = Report(title)
    if jobs > 1:
        with Pool(jobs) as pool:
            for name, ok in pool.map(_pair_worker, tasks):
                report.add(name, ok)
    else:
        for task in tasks:
            name, ok = _pair_worker(task)
            report.add(name, ok)
    return report


def _cmd_present(args, out) -> int:
    if args.what == "typeb":
        _guard("n", args.n, MAX_N)
        tower = arr.build_typeb_tower(args.n)
    else:
        _guard("r", args.r, MAX_R)
        _guard("n", args.n, MAX_N)
        tower = arr.build_monomial_tower(args.r, args.n)
    pres = arr.assemble_presentation(tower)
    out.write(arr.format_presentation(pres))
    return 0


def _parse_flats_file(text: str) -> liealg.HolonomyPresentation:
    gens: list[str] = []
    flats: list[tuple[str, ...]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        if body.startswith("gens:"):
            gens = body[5:].split()
            continue
        if body.startswith("flat:"):
            members = tuple(body[5:].split())
        else:
            members = tuple(body.split())
        if len(members) < 2:
            raise CliError(f"line {lineno}: a flat needs at least two members")
        flats.append(members)
    if not gens:
        seen = {}
        for flat in flats:
            for name in flat:
                seen.setdefault(name, None)
        gens = list(seen)
    index = {name: i + 1 for i, name in enumerate(gens)}
    rels = []
    for flat in flats:
        try:
            ids = [index[name] for name in flat]
        except KeyError as exc:
            raise CliError(f"flat member {exc.args[0]} missing from gens") from exc
        rels.extend(liealg.flat_relations(ids, len(gens)))
    return liealg.HolonomyPresentation(len(gens), tuple(gens), tuple(rels))


def _rank_table(ranks, exps, fmt: str) -> str:
    rows = [("degree", "rank", "expected", "match")]
    for k, rank in enumerate(ranks, start=1):
        if exps is None:
            rows.append((str(k), str(rank), "-", "-"))
        else:
            expect = sum(liealg.witt_rank(d, k) for d in exps)
            rows.append((str(k), str(rank), str(expect), "yes" if rank == expect else "NO"))
    if fmt == "tsv":
        return "\n".join("\t".join(row) for row in rows) + "\n"
    widths = [max(len(row[c]) for row in rows) for c in range(4)]
    return "\n".join(
        "  ".join(cell.ljust(widths[c]) for c, cell in enumerate(row)).rstrip()
        for row in rows
    ) + "\n"


def _cmd_lie(args, out) -> int:
    _guard("max-degree", args.max_degree, MAX_DEGREE)
    exps = None
    if args.exponents:
        exps = [int(tok) for tok in args.exponents.split(",") if tok]
    if args.monomial:
        r_str, n_str = args.monomial.split(",")
        r, n = int(r_str), int(n_str)
        _guard("r", r, MAX_R)
        _guard("n", n, MAX_N)
        pres = liealg.holonomy_relations_from_flats(
            arr.monomial_flats(r, n), arr.monomial_hyperplanes(r, n)
        )
        ranks = liealg.graded_ranks(pres, args.max_degree)
        if exps is None:
            exps = arr.exponents("monomial", r, n)
    elif args.flats:
        pres = _parse_flats_file(_read_file(args.flats))
        ranks = liealg.graded_ranks(pres, args.max_degree)
    elif exps is not None:
        ranks = [sum(liealg.witt_rank(d, k) for d in exps) for k in range(1, args.max_degree + 1)]
    else:
        raise CliError("lie needs one of --exponents, --monomial, or --flats")
    out.write(_rank_table(ranks, exps, args.format))
    if exps is not None:
        bad = [
            k
            for k, rank in enumerate(ranks, start=1)
            if rank != sum(liealg.witt_rank(d, k) for d in exps)
        ]
        if bad:
            for k in bad:
                out.write(f"FAIL\tlie\tdegree {k}\n")
            return 1
    return 0


def _cmd_verify(args, out) -> int:
    if args.what != "purebraid":
        raise CliError(f"unknown verify target {args.what!r}")
    _guard("n", args.n, MAX_N)
    from .braid import braid_relation_instances, pure_braid_relation_instances

    instances = braid_relation_instances(args.n) + pure_braid_relation_instances(args.n)
    report = _run_pairs(f"braid and pure braid relations, n={args.n}", instances, args.jobs)
    return 0 if _print_report(report, out) else 1


def _read_file(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "tsv"], default="text")
    common.add_argument("--jobs", type=int, default=1, help="parallel relation sweeps")
    parser = argparse.ArgumentParser(
        prog="braidforge",
        description="exact braid monodromy, monomial braid groups, holonomy Lie ranks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("monodromy", parents=[common],
                       help="braid monodromy of a wiring diagram file")
    p.add_argument("wiring_file")

    p = sub.add_parser("lines", parents=[common],
                       help="braid monodromy of a real-line arrangement file")
    p.add_argument("lines_file")

    p = sub.add_parser("typeb", parents=[common], help="type-B closed-form monodromy")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--verify", action="store_true")

    p = sub.add_parser("monomial", parents=[common],
                       help="monomial braid verification suites")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument(
        "--verify",
        required=True,
        choices=["relations", "lemma-conj", "presentation", "generators"],
    )

    p = sub.add_parser("present", parents=[common], help="emit a tower presentation")
    psub = p.add_subparsers(dest="what", required=True)
    pt = psub.add_parser("typeb", parents=[common])
    pt.add_argument("--n", type=int, required=True)
    pm = psub.add_parser("monomial", parents=[common])
    pm.add_argument("--r", type=int, required=True)
    pm.add_argument("--n", type=int, required=True)

    p = sub.add_parser("lie", parents=[common],
                       help="graded rank table with Witt comparison")
    p.add_argument("--exponents")
    p.add_argument("--monomial")
    p.add_argument("--flats")
    p.add_argument("--max-degree", type=int, required=True)

    p = sub.add_parser("verify", parents=[common], help="relation suites")
    p.add_argument("what", choices=["purebraid"])
    p.add_argument("--n", type=int, required=True)
    return parser


_COMMANDS = {
    "monodromy": _cmd_monodromy,
    "lines": _cmd_lines,
    "typeb": _cmd_typeb,
    "monomial": _cmd_monomial,
    "present": _cmd_present,
    "lie": _cmd_lie,
    "verify": _cmd_verify,
}


def run(argv: list[str], out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args, out)
    except (CliError, WiringError, liealg.LieError, arr.ArrangementError, ValueError) as exc:
        out.write(f"error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))
