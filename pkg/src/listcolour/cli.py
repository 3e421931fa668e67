"""Command-line front end.

Exit codes are shared by every subcommand: 0 yes / free / confirmed,
1 no / not free / refuted, 2 usage error or rejected input, 3 budget
exhausted or inconclusive, 4 a structural claim failed on accepted input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from importlib import metadata

from . import detect, gadget
from .engine import UsageError
from .gen import SamplingExhausted, random_graph, random_lists
from .graph import GraphError
from .io import FormatError, format_graph, read_formula, read_graph, write_graph
from .oracle import OracleBudget, brute_list_colour
from .solver import NP_COMPLETE, ClaimViolation, InputRejected, Solver, classify

EXIT_YES, EXIT_NO, EXIT_USAGE, EXIT_EXHAUSTED, EXIT_CLAIM = 0, 1, 2, 3, 4
CHECK_PATTERNS = ("p7", "k4", "p2p5", "p3p4", "p3p5")


def version() -> str:
    try:
        return metadata.version("artifact")
    except metadata.PackageNotFoundError:
        return "unknown"


class Report:
    """Key-value report, printed as text lines or one JSON object.

    Wall time is measured from the start of :func:`main`, so file parsing counts.
    """

    started: float | None = None

    def __init__(self, command: str, as_json: bool):
        self.fields: dict = {"command": command}
        self.cert: dict[int, int] | None = None
        self.as_json = as_json
        self.t0 = Report.started if Report.started is not None else time.perf_counter()

    def set(self, **kw):
        self.fields.update(kw)

    def emit(self, out=None) -> None:
        out = out or sys.stdout
        self.fields["time"] = round(time.perf_counter() - self.t0, 6)
        if self.as_json:
            obj = dict(self.fields)
            if self.cert is not None:
                obj["certificate"] = {str(v): c for v, c in sorted(self.cert.items())}
            out.write(json.dumps(obj, sort_keys=True) + "\n")
            return
        for k, v in self.fields.items():
            if isinstance(v, dict):
                for sk, sv in sorted(v.items()):
                    out.write(f"{k} {sk} {sv}\n")
            elif isinstance(v, (list, tuple)):
                out.write(f"{k} {' '.join(map(str, v))}\n")
            else:
                out.write(f"{k} {v}\n")
        if self.cert is not None:
            for v, c in sorted(self.cert.items()):
                out.write(f"v {v} {c}\n")


def _one_based(g, vs):
    """Translate in-memory vertex ids back to the 1-based file numbering."""
    num = {v: i + 1 for i, v in enumerate(g.vertices())}
    return [num[v] for v in vs]


# -- subcommands -----------------------------------------------------------------


def cmd_solve(args) -> int:
    g, lists, k = read_graph(args.file)
    rep = Report("solve", args.json)
    if k != 3 or any(not L <= {1, 2, 3} for L in lists.values()):
        raise UsageError("solve works on lists over {1,2,3}")
    solver = Solver(h=args.h, verify_freeness=args.verify_freeness == "on", workers=args.parallel)
    rep.set(file=args.file, seed=args.seed)
    try:
        res = solver.solve(g, lists)
    except InputRejected as e:
        rep.set(answer="rejected", reason=str(e), witness=_one_based(g, e.witness or []))
        rep.emit()
        return EXIT_USAGE
    except ClaimViolation as e:
        rep.set(answer="claim-violation", claim=e.claim, reason=str(e))
        rep.emit()
        return EXIT_CLAIM
    finally:
        if args.trace:
            with open(args.trace, "w", encoding="utf-8") as fh:
                fh.write("".join(line + "\n" for line in solver.trace))
    rep.set(answer=res.status, h=res.h, stats=dict(sorted(res.stats.items())))
    if res.answer:
        rep.cert = dict(zip(_one_based(g, sorted(res.colouring)), (res.colouring[v] for v in sorted(res.colouring))))
    rep.emit()
    return {True: EXIT_YES, False: EXIT_NO, None: EXIT_EXHAUSTED}[res.answer]


def cmd_oracle(args) -> int:
    g, lists, k = read_graph(args.file)
    if args.k is not None:
        full = frozenset(range(1, k + 1))
        lists = {v: (frozenset(range(1, args.k + 1)) if L == full else L) for v, L in lists.items()}
    rep = Report("oracle", args.json)
    res = brute_list_colour(g, lists, OracleBudget(args.budget_nodes, args.budget_secs))
    rep.set(file=args.file, answer=res.status, nodes=res.nodes)
    if res.colouring is not None:
        rep.cert = dict(zip(_one_based(g, sorted(res.colouring)), (res.colouring[v] for v in sorted(res.colouring))))
    rep.emit()
    return {"yes": EXIT_YES, "no": EXIT_NO}.get(res.status, EXIT_EXHAUSTED)


def cmd_check_free(args) -> int:
    g, _, _ = read_graph(args.file)
    w = detect.find_induced(g, detect.pattern(args.pattern))
    rep = Report("check-free", args.json)
    rep.set(file=args.file, pattern=args.pattern, free="yes" if w is None else "no")
    if w is not None:
        rep.set(witness=_one_based(g, w))
    rep.emit()
    return EXIT_YES if w is None else EXIT_NO


def cmd_classify(args) -> int:
    g, _, _ = read_graph(args.file)
    label = classify(g)
    rep = Report("classify", args.json)
    rep.set(file=args.file, vertices=len(g), label=label)
    rep.emit()
    return EXIT_NO if label == NP_COMPLETE else EXIT_YES


def cmd_gadget_build(args) -> int:
    f = read_formula(args.formula)
    gad = gadget.build_G_prime(f) if args.prime else gadget.build_G(f)
    comments = [f"{i + 1} {gadget.role_name(gad.roles[v])}" for i, v in enumerate(gad.graph.vertices())]
    if args.prime:
        write_graph(args.output, gad.graph, comments=comments)
    else:
        write_graph(args.output, gad.graph, gad.lists, k=5, comments=comments)
    rep = Report("gadget-build", args.json)
    rep.set(formula=args.formula, prime=args.prime, vertices=len(gad.graph), edges=gad.graph.num_edges(),
            output=args.output)
    rep.emit()
    return EXIT_YES


def cmd_gadget_verify(args) -> int:
    f = read_formula(args.formula)
    budget = OracleBudget(args.budget_nodes, args.budget_secs)
    res = gadget.VERIFIERS[args.lemma](f, budget=budget)
    rep = Report("gadget-verify", args.json)
    rep.set(formula=args.formula, lemma=args.lemma, result=res.status)
    if res.detail:
        rep.set(detail=res.detail)
    if res.witness is not None:
        rep.set(witness=str(res.witness))
    rep.emit()
    return {gadget.CONFIRMED: EXIT_YES, gadget.REFUTED: EXIT_NO}.get(res.status, EXIT_EXHAUSTED)


def cmd_gen(args) -> int:
    forbid = [p for p in args.forbid.split(",") if p] if args.forbid else []
    for p in forbid:
        detect.pattern(p)
    try:
        g = random_graph(args.n, args.density, forbid=forbid, require_p7=args.require_p7, seed=args.seed,
                         max_attempts=args.max_attempts, far_bias=args.far_bias,
                         connected=not args.disconnected)
    except SamplingExhausted as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_EXHAUSTED
    lists = random_lists(g, args.seed, p_full=args.p_full) if args.lists else None
    text = format_graph(g, lists, comments=[f"gen n={args.n} density={args.density} forbid={','.join(forbid)} "
                                            f"require_p7={int(args.require_p7)} seed={args.seed}"])
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_YES


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="listcolour", description="List 3-colouring for (P2+P5)-free and (P3+P4)-free graphs.")
    p.add_argument("--version", action="version", version=f"%(prog)s {version()}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--json", action="store_true", help="one JSON object instead of key-value lines")

    s = sub.add_parser("solve", help="decide list 3-colourability")
    s.add_argument("file")
    s.add_argument("--h", choices=("p2p5", "p3p4"), help="target class (default: detect)")
    s.add_argument("--verify-freeness", choices=("on", "off"), default="on")
    s.add_argument("--trace", metavar="PATH", help="write branching events here")
    s.add_argument("--seed", type=int, default=0, help="recorded in the report; solving is deterministic")
    s.add_argument("--parallel", type=int, default=1, metavar="N", help="worker processes for Branching I")
    common(s)
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("oracle", help="exact backtracking decision")
    s.add_argument("file")
    s.add_argument("--k", type=int, help="palette size for vertices without an explicit list")
    s.add_argument("--budget-nodes", type=int, default=10**7)
    s.add_argument("--budget-secs", type=float, default=60.0)
    common(s)
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("check-free", help="search for an induced pattern")
    s.add_argument("file")
    s.add_argument("--pattern", choices=CHECK_PATTERNS, required=True)
    common(s)
    s.set_defaults(func=cmd_check_free)

    s = sub.add_parser("classify", help="linear-forest dichotomy label for a small H")
    s.add_argument("file")
    common(s)
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("gadget", help="NAE-3SAT reduction gadget")
    gsub = s.add_subparsers(dest="gadget_command", required=True)
    b = gsub.add_parser("build")
    b.add_argument("formula")
    b.add_argument("--prime", action="store_true", help="add the k-type clique")
    b.add_argument("-o", "--output", required=True)
    common(b)
    b.set_defaults(func=cmd_gadget_build)
    v = gsub.add_parser("verify")
    v.add_argument("formula")
    v.add_argument("--lemma", type=int, choices=(11, 12, 13), required=True)
    v.add_argument("--budget-nodes", type=int, default=10**7)
    v.add_argument("--budget-secs", type=float, default=60.0)
    common(v)
    v.set_defaults(func=cmd_gadget_verify)

    s = sub.add_parser("gen", help="seeded random instance")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--density", type=float, default=0.3)
    s.add_argument("--forbid", default="", help="comma-separated patterns, e.g. k4,p3p4")
    s.add_argument("--require-p7", action="store_true")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--far-bias", type=float, default=0.0)
    s.add_argument("--disconnected", action="store_true", help="allow vertices to arrive without neighbours")
    s.add_argument("--lists", action="store_true", help="also emit random lists")
    s.add_argument("--p-full", type=float, default=0.7)
    s.add_argument("--max-attempts", type=int, default=20000)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_gen)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    Report.started = time.perf_counter()
    try:
        return args.func(args)
    except (UsageError, GraphError, FormatError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
