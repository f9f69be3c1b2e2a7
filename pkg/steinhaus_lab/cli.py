import argparse
import json
import logging
import re
import sys
import time
from typing import List, Optional

from dotenv import find_dotenv, load_dotenv

from .utils.balance_utils import (
    VERIFY_CLAIMS,
    admissible_orders,
    proportion_report,
    run_verification,
)
from .utils.common import FIGURE_KINDS, env_flag, env_int, parse_csv_ints
from .utils.data_model import SEARCH_KINDS, SearchSpec, SearchStrategy
from .utils.figure_utils import FigureKind, build_figure, render, rot120, rot240
from .utils.idao_utils import (
    BLOCK_FORMS,
    IdaoWitness,
    idao_solve_batch,
    idao_system_solve,
    idao_verify,
)
from .utils.matrix_utils import exact_det, exact_rank, wendt
from .utils.search_utils import search_balanced
from .utils.sequence_utils import (
    FiniteSeq,
    Weights,
    derive,
    derive_alpha,
    idao_sequence,
    orbit_rows,
    universal_sequence,
)
from .utils.tetra_utils import (
    TETRA_KINDS,
    TriangleSlice,
    pascal_tetrahedron,
    render_tetrahedron,
    search_balanced_tetra,
    steinhaus_tetrahedron,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_REFUTED = 2
EXIT_INCOMPLETE = 3

LOG_FORMAT = """{"time": "%(asctime)s" , "level": "%(levelname)s", "message": "%(message)s"}"""


class UsageError(Exception):
    pass


CSV_FLAGS = ("--seq", "--weights")
NEGATIVE_CSV = re.compile(r"^-\d+(,-?\d+)*$")


class CliParser(argparse.ArgumentParser):
    """
    Argument errors become UsageError so run() can map them to exit code 1.
    A comma-separated value starting with a minus sign is glued to its flag
    (`--seq -1,2` reads as `--seq=-1,2`), otherwise argparse takes it for an option.
    """

    def parse_known_args(self, args=None, namespace=None):
        args = list(sys.argv[1:] if args is None else args)
        joined, i = [], 0
        while i < len(args):
            if args[i] in CSV_FLAGS and i + 1 < len(args) and NEGATIVE_CSV.match(args[i + 1]):
                joined.append(f"{args[i]}={args[i + 1]}")
                i += 2
            else:
                joined.append(args[i])
                i += 1
        return super().parse_known_args(joined, namespace)

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _add_format(p: argparse.ArgumentParser):
    p.add_argument("--format", choices=["text", "json"], default="text")


def build_parser() -> CliParser:
    parser = CliParser(prog="steinhaus", description="Steinhaus figures over Z/nZ")
    parser.add_argument("--verbose", action="store_true", help="debug logging")
    parser.add_argument("--quiet", action="store_true", help="warnings and errors only")
    verbs = parser.add_subparsers(dest="verb", required=True, parser_class=CliParser)

    p = verbs.add_parser("figure", help="build a figure and count its residues")
    p.add_argument("kind", choices=FIGURE_KINDS + ["alpha-triangle", "tetra"])
    p.add_argument("--mod", type=int, required=True)
    p.add_argument("--seq", type=parse_csv_ints, help="generating sequence, or tetrahedron base cells")
    p.add_argument("--height", type=int)
    p.add_argument("--a", type=int)
    p.add_argument("--d1", type=int)
    p.add_argument("--d2", type=int)
    p.add_argument("--order", type=int)
    p.add_argument("--weights", type=parse_csv_ints)
    p.add_argument("--tetra-kind", choices=TETRA_KINDS, default="steinhaus")
    _add_format(p)

    p = verbs.add_parser("derive", help="derived sequences")
    p.add_argument("--mod", type=int)
    p.add_argument("--seq", type=parse_csv_ints, required=True)
    p.add_argument("--times", type=int, default=1)
    p.add_argument("--weights", type=parse_csv_ints)
    _add_format(p)

    p = verbs.add_parser("rotate", help="generating sequence of a rotated triangle")
    p.add_argument("angle", choices=["120", "240"])
    p.add_argument("--mod", type=int, required=True)
    p.add_argument("--seq", type=parse_csv_ints, required=True)
    _add_format(p)

    p = verbs.add_parser("universal", help="rows of the universal orbit")
    p.add_argument("--mod", type=int, required=True)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--from", dest="j0", type=int, default=0)
    p.add_argument("--to", dest="j1", type=int, default=8)
    p.add_argument("--rows", type=int, default=1)
    _add_format(p)

    p = verbs.add_parser("idao", help="Wendt matrices and interlaced doubly arithmetic orbits")
    p.add_argument("action", choices=["wendt", "solve", "verify"])
    p.add_argument("--k", type=int, default=6)
    p.add_argument("--ks", type=parse_csv_ints, help="solve: several k as one parallel batch")
    p.add_argument("--k2", type=int)
    p.add_argument("--form", choices=BLOCK_FORMS, default="display")
    p.add_argument("--mod", type=int)
    p.add_argument("--a0", type=int, default=0)
    p.add_argument("--a1", type=int, default=-1)
    p.add_argument("--a2", type=int, default=1)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--depth", type=int, default=4)
    p.add_argument("--width", type=int, default=4)
    p.add_argument("--threads", type=int, help="worker processes, STEINHAUS_THREADS by default")
    _add_format(p)

    p = verbs.add_parser("search", help="exhaustive search for balanced figures")
    p.add_argument("kind", choices=[k.value for k in SEARCH_KINDS] + ["tetra"])
    p.add_argument("--mod", type=int, required=True)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--height", type=int)
    p.add_argument("--strategy", choices=[s.value for s in SearchStrategy], default="full")
    p.add_argument("--budget", type=int)
    p.add_argument("--threads", type=int)
    p.add_argument("--max-found", type=int, default=10)
    p.add_argument("--negation-halving", action="store_true")
    p.add_argument("--tetra-kind", choices=TETRA_KINDS, default="steinhaus")
    _add_format(p)

    p = verbs.add_parser("verify", help="check a balance theorem on concrete instances")
    p.add_argument("claim", choices=VERIFY_CLAIMS)
    p.add_argument("--mod", type=int, required=True)
    p.add_argument("--a", type=int, default=0)
    p.add_argument("--a0", type=int, default=0)
    p.add_argument("--a1", type=int, default=1)
    p.add_argument("--a2", type=int, default=2)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--lambda", dest="lambda_max", type=int, default=1)
    p.add_argument("--samples", type=int)
    p.add_argument("--m-max", type=int, default=8)
    p.add_argument("--threads", type=int, help="worker processes, STEINHAUS_THREADS by default")
    _add_format(p)

    p = verbs.add_parser("admissible", help="size classes with n | cardinality")
    p.add_argument("kind", choices=FIGURE_KINDS)
    p.add_argument("--mod", type=int, required=True)
    _add_format(p)

    p = verbs.add_parser("proportions", help="share of admissible sizes covered by the universal orbit")
    p.add_argument("--mod", type=int, required=True)
    _add_format(p)
    return parser


def _emit(args, payload: dict, text: str):
    if args.format == "json":
        sys.stdout.write(json.dumps(payload, sort_keys=True) + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _csv(values) -> str:
    return ",".join(str(v) for v in values)


def _cmd_figure(args) -> int:
    if args.kind == "tetra":
        if not args.seq:
            raise ValueError("a tetrahedron needs its base cells in --seq")
        base = TriangleSlice.from_flat(args.mod, args.seq)
        build = pascal_tetrahedron if args.tetra_kind == "pascal" else steinhaus_tetrahedron
        tetra = build(base)
        counts = list(tetra.multiplicity().counts)
        payload = {"tetrahedron": tetra.to_dict(), "counts": counts, "balanced": tetra.is_balanced()}
        _emit(args, payload, render_tetrahedron(tetra) + f"counts: {_csv(counts)}\nbalanced: {tetra.is_balanced()}")
        return EXIT_OK
    figure = build_figure(
        args.kind, args.mod, args.seq, args.height, args.a, args.d1, args.d2, args.order, args.weights
    )
    counts = list(figure.multiplicity().counts)
    payload = {"figure": figure.to_dict(), "counts": counts, "balanced": figure.is_balanced()}
    _emit(args, payload, render(figure) + f"counts: {_csv(counts)}\nbalanced: {figure.is_balanced()}")
    return EXIT_OK


def _cmd_derive(args) -> int:
    s = FiniteSeq(tuple(args.seq), args.mod)
    rows = [s]
    for _ in range(args.times):
        rows.append(derive_alpha(rows[-1], Weights(tuple(args.weights))) if args.weights else derive(rows[-1]))
    payload = {"modulus": args.mod, "rows": [list(r.terms) for r in rows]}
    _emit(args, payload, "\n".join(_csv(r.terms) for r in rows))
    return EXIT_OK


def _cmd_rotate(args) -> int:
    s = FiniteSeq(tuple(args.seq), args.mod)
    rotated = rot120(s) if args.angle == "120" else rot240(s)
    payload = {"modulus": args.mod, "angle": int(args.angle), "sequence": list(rotated.terms)}
    _emit(args, payload, _csv(rotated.terms))
    return EXIT_OK


def _cmd_universal(args) -> int:
    spec = universal_sequence(args.mod, args.d)
    rows = orbit_rows(spec, args.rows, args.j0, args.j1)
    payload = {
        "spec": spec.to_dict(),
        "columns": [args.j0, args.j1],
        "rows": [list(r.terms) for r in rows],
    }
    _emit(args, payload, "\n".join(_csv(r.terms) for r in rows))
    return EXIT_OK


def _cmd_idao(args) -> int:
    if args.action == "wendt":
        w = wendt(args.k)
        payload = {"k": args.k, "matrix": w.to_lists(), "rank": exact_rank(w), "det": exact_det(w)}
        text = "\n".join(" ".join(str(x) for x in row) for row in w.entries)
        _emit(args, payload, text + f"\nrank: {payload['rank']}\ndet: {payload['det']}")
        return EXIT_OK
    if args.action == "solve" and args.ks:
        threads = args.threads or env_int("STEINHAUS_THREADS", 1)
        kernels = idao_solve_batch(args.ks, args.form, threads, env_flag("STEINHAUS_PROGRESS"))
        payload = {
            "form": args.form,
            "kernels": [
                {"k": k, "kernel": [{"A": list(a), "D": list(d)} for a, d in basis]} for k, basis in kernels.items()
            ],
        }
        _emit(args, payload, "\n".join(f"k={k}: kernel dimension {len(basis)}" for k, basis in kernels.items()))
        return EXIT_OK
    if args.action == "solve":
        basis = idao_system_solve(args.k, args.form)
        payload = {"k": args.k, "form": args.form, "kernel": [{"A": list(a), "D": list(d)} for a, d in basis]}
        lines = [f"kernel dimension: {len(basis)}"] + [f"A={_csv(a)} D={_csv(d)}" for a, d in basis]
        _emit(args, payload, "\n".join(lines))
        return EXIT_OK
    spec = idao_sequence(args.a0, args.a1, args.a2, args.d, args.mod)
    k2 = args.k2 if args.k2 is not None else args.k
    outcome = idao_verify(spec, args.k, k2, args.depth, args.width)
    payload = {"spec": spec.to_dict(), "witness": isinstance(outcome, IdaoWitness), **outcome.to_dict()}
    if isinstance(outcome, IdaoWitness):
        text = f"({args.k},{k2})-interlaced doubly arithmetic on a {args.depth}x{args.width} class box"
        _emit(args, payload, text)
        return EXIT_OK
    _emit(args, payload, f"refuted at cell {outcome.cell}: expected {outcome.expected}, found {outcome.actual}")
    return EXIT_REFUTED


def _cmd_search(args) -> int:
    threads = args.threads or env_int("STEINHAUS_THREADS", 1)
    budget = args.budget or env_int("STEINHAUS_BUDGET")
    progress = env_flag("STEINHAUS_PROGRESS")
    if args.kind == "tetra":
        report = search_balanced_tetra(
            args.mod, args.order, args.tetra_kind, budget, threads, args.max_found, progress
        )
    else:
        spec = SearchSpec(
            args.mod,
            FigureKind(args.kind),
            args.order,
            args.height,
            SearchStrategy(args.strategy),
            budget,
            args.max_found,
            args.negation_halving,
        )
        report = search_balanced(spec, threads=threads, progress=progress)
    logging.info(f"elapsedMs: {report.elapsed_ms:.3f}")

    if not report.admissible:
        text = f"{report.claim}: not admissible, none can exist"
    elif report.found_total:
        text = f"{report.claim}: {report.found_total} found\n" + "\n".join(_csv(s) for s in report.found)
    else:
        text = f"{report.claim}: none found"
    text += f"\nexamined: {report.examined}\nexhaustive: {report.exhaustive}"
    if report.symmetry_reductions:
        text += "\nreductions: " + "; ".join(report.symmetry_reductions)
    _emit(args, report.to_dict(), text)
    return EXIT_OK if report.exhaustive else EXIT_INCOMPLETE


def _cmd_verify(args) -> int:
    start = time.perf_counter()
    report = run_verification(
        args.claim,
        args.mod,
        args.a,
        args.a0,
        args.a1,
        args.a2,
        args.d,
        args.lambda_max,
        args.samples,
        args.m_max,
        args.threads or env_int("STEINHAUS_THREADS", 1),
        env_flag("STEINHAUS_PROGRESS"),
    )
    logging.info(f"elapsedMs: {(time.perf_counter() - start) * 1000:.3f}")
    status = "passed" if report.passed else "REFUTED"
    lines = [f"{report.claim}: {status} ({report.examined} checks)"]
    lines += [f"  {v['figure']}" for v in report.violations]
    lines += [f"  note: {note}" for note in report.notes]
    _emit(args, report.to_dict(), "\n".join(lines))
    return EXIT_OK if report.passed else EXIT_REFUTED


def _cmd_admissible(args) -> int:
    classes = admissible_orders(args.mod, args.kind)
    shown = ", ".join(str(c) for c in classes.classes)
    _emit(args, classes.to_dict(), f"period {classes.period}: {shown}")
    return EXIT_OK


def _cmd_proportions(args) -> int:
    report = proportion_report(args.mod)
    lines = [f"n={report['modulus']}, omega={report['omega']}, bound {report['bound']}"]
    for kind in ("triangle", "pascal", "lozenge"):
        part = report[kind]
        lines.append(f"{kind}: {part['covered']}/{part['admissible']} = {part['fraction']}")
    _emit(args, report, "\n".join(lines))
    return EXIT_OK


COMMANDS = {
    "figure": _cmd_figure,
    "derive": _cmd_derive,
    "rotate": _cmd_rotate,
    "universal": _cmd_universal,
    "idao": _cmd_idao,
    "search": _cmd_search,
    "verify": _cmd_verify,
    "admissible": _cmd_admissible,
    "proportions": _cmd_proportions,
}


def run(argv: Optional[List[str]] = None) -> int:
    """
    Parses argv and runs one verb.

    Returns:
        0 on success, 1 on a usage error, 2 when a verified claim is refuted,
        3 when a search ran out of budget.
    """
    load_dotenv(find_dotenv(usecwd=True))
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        logging.error(str(e))
        return EXIT_USAGE

    if args.verbose:
        logging.getLogger().setLevel(logging.DEBUG)
    elif args.quiet:
        logging.getLogger().setLevel(logging.WARNING)

    try:
        return COMMANDS[args.verb](args)
    except (ValueError, TypeError) as e:
        logging.error(f"{args.verb}: {e}")
        return EXIT_USAGE


def main():
    logging.basicConfig(
        level=logging.INFO,
        format=LOG_FORMAT,
        handlers=[logging.StreamHandler()],
    )
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
