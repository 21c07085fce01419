"""Command-line front end: ``twistbracket <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import sys
import time
from pathlib import Path

from . import __version__
from .bracket import TwistBracket, kauffman_bracket, reduce_variables, specialize_twists, twist_bracket
from .diagram import DiagramError, WiringDiagram, insert_twists, parse_diagram, serialize_diagram
from .families import FAMILIES, FamilySpec, family_diagram, family_jones, family_twist_bracket, link_jones
from .kernel import BACKEND
from .mahler import CSV_COLUMNS, mahler_jensen, mahler_lawton, mahler_quadrature, scan_twist_family
from .poly import parse_laurent, parse_multi
from .verify import SUITES, run_suite


class UsageError(Exception):
    """Bad input: reported on stderr with exit code 2."""


def _ints(text: str | None) -> list[int] | None:
    if text is None:
        return None
    text = text.strip()
    if not text:
        return []
    try:
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _range(text: str) -> list[int]:
    try:
        lo, hi = text.split("..")
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise UsageError(f"range must look like LO..HI, got {text!r}") from None
    if hi < lo:
        raise UsageError("range upper end is below lower end")
    return list(range(lo, hi + 1))


class Run:
    """Collects outputs and the reproducibility manifest for one invocation."""

    def __init__(self, args: argparse.Namespace, argv: list[str]):
        self.args = args
        self.argv = argv
        self.inputs: dict[str, str] = {}
        self.outputs: list[str] = []
        self.start = time.perf_counter()

    def read(self, path: str) -> str:
        try:
            data = Path(path).read_bytes() if path != "-" else sys.stdin.buffer.read()
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from None
        self.inputs[path] = hashlib.sha256(data).hexdigest()
        return data.decode()

    def diagram(self, path: str) -> WiringDiagram:
        try:
            return parse_diagram(self.read(path))
        except json.JSONDecodeError as exc:
            raise UsageError(f"{path}: invalid JSON ({exc.msg})") from None
        except DiagramError as exc:
            raise UsageError(f"{path}: {exc}") from None

    def emit(self, text: str, name: str):
        print(text)
        if self.args.out:
            out = Path(self.args.out)
            out.mkdir(parents=True, exist_ok=True)
            (out / name).write_text(text + "\n")
            self.outputs.append(str(out / name))

    def finish(self):
        if not self.args.out:
            return
        manifest = {
            "command": self.argv,
            "inputs": self.inputs,
            "version": __version__,
            "kernel": BACKEND,
            "seed": self.args.seed,
            "threads": self.args.threads,
            "wall_time_s": round(time.perf_counter() - self.start, 6),
            "outputs": self.outputs,
        }
        path = Path(self.args.out) / "manifest.json"
        path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")


def _closed(run: Run, args) -> tuple[WiringDiagram, list[int] | None]:
    d = run.diagram(args.diagram)
    n = _ints(args.twists)
    if n is not None:
        if len(n) != d.k:
            raise UsageError(f"--twists needs {d.k} entries, got {len(n)}")
        return d, n
    return d, None


def cmd_bracket(run: Run, args) -> int:
    d, n = _closed(run, args)
    if n is not None:
        br = specialize_twists(twist_bracket(d), n)
        closed = insert_twists(d, n)
    elif d.k:
        raise UsageError(f"diagram has {d.k} open sites; pass --twists or use twist-bracket")
    else:
        br, closed = kauffman_bracket(d), d
    meta = {"bracket": br.to_text(), "k": d.k, "sigma": sum(n) if n else 0,
            "provenance": hashlib.sha256(serialize_diagram(d).encode()).hexdigest()[:16]}
    if closed.orientation is not None:
        meta["jones"] = link_jones(closed).to_text()
        meta["writhe"] = closed.writhe()
    if args.json:
        run.emit(json.dumps(meta, sort_keys=True), "bracket.json")
    else:
        lines = [meta["bracket"]] + ([meta["jones"]] if "jones" in meta else [])
        run.emit("\n".join(lines), "bracket.txt")
    return 0


def cmd_twist_bracket(run: Run, args) -> int:
    d = run.diagram(args.diagram)
    P = twist_bracket(d)
    if args.json:
        run.emit(json.dumps({"twist_bracket": P.to_text(), "k": P.k, "provenance": P.provenance}, sort_keys=True),
                 "twist_bracket.json")
    else:
        run.emit(P.to_text(), "twist_bracket.txt")
    return 0


def cmd_jones(run: Run, args) -> int:
    d, n = _closed(run, args)
    if n is None and d.k:
        raise UsageError(f"diagram has {d.k} open sites; pass --twists")
    closed = insert_twists(d, n) if n is not None else d
    if closed.orientation is None:
        raise UsageError("Jones polynomial needs an oriented diagram")
    V = link_jones(closed)
    if args.json:
        run.emit(json.dumps({"jones": V.to_text(), "variable": V.var, "writhe": closed.writhe()}, sort_keys=True),
                 "jones.json")
    else:
        run.emit(V.to_text(), "jones.txt")
    return 0


def cmd_family(run: Run, args) -> int:
    params = _ints(args.params) or []
    try:
        spec = FamilySpec(args.name, tuple(params))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.emit == "twist-bracket":
        run.emit(family_twist_bracket(spec).to_text(), "twist_bracket.txt")
    elif args.emit == "diagram":
        run.emit(serialize_diagram(family_diagram(spec)), "diagram.json")
    else:
        run.emit(family_jones(spec).to_text(), "jones.txt")
    return 0


def _poly_arg(run: Run, args):
    text = args.poly
    if args.stdin:
        text = run.read("-")
    if text is None:
        raise UsageError("give --poly TEXT or --stdin")
    text = text.strip()
    try:
        one = parse_laurent(text)
    except ValueError:
        one = None
    if one is not None and one.var not in ("x", "y") and not one.var.startswith("x"):
        return one.to_multi(0)
    try:
        p = parse_multi(text)
    except ValueError as exc:
        raise UsageError(f"cannot parse polynomial: {exc}") from None
    return p


def cmd_mahler(run: Run, args) -> int:
    p = _poly_arg(run, args)
    if not p:
        raise UsageError("Mahler measure of the zero polynomial is undefined")
    method = args.method or ("jensen" if p.arity == 0 else "quadrature")
    if method == "jensen":
        if p.arity:
            raise UsageError("jensen method needs a one-variable polynomial")
        est = mahler_jensen(p.to_laurent())
    elif method == "quadrature":
        est = mahler_quadrature(p, args.grid)
    else:
        est = mahler_lawton(p, args.tol if args.tol is not None else 1e-3)
    if args.json:
        detail = {k: v for k, v in est.detail.items() if k != "ladder"}
        run.emit(json.dumps({"value": est.value, "method": est.method, "error_bound": est.error_bound,
                             "detail": detail}, sort_keys=True), "mahler.json")
    else:
        run.emit(f"{est.value:.12g}", "mahler.txt")
    return 0


def cmd_scan(run: Run, args) -> int:
    d = run.diagram(args.diagram)
    if d.orientation is None:
        raise UsageError("scan needs an oriented diagram")
    fill = _ints(args.fill)
    try:
        rows = scan_twist_family(d, _range(args.range), site=args.site, fill=fill)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in rows:
        w.writerow(r.csv_fields())
    run.emit(buf.getvalue().rstrip("\n"), "scan.csv")
    return 0


def cmd_verify(run: Run, args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    failed = False
    lines = []
    for name in names:
        res = run_suite(name, seed=args.seed)
        lines.append(res.summary())
        for f in res.failures[:10]:
            lines.append(f"  failed: {f}")
        failed |= not res.passed
    run.emit("\n".join(lines), "verify.txt")
    return 1 if failed else 0


def cmd_reduce(run: Run, args) -> int:
    a = _ints(args.a)
    if args.diagram:
        P = twist_bracket(run.diagram(args.diagram))
    else:
        p = _poly_arg(run, args)
        P = TwistBracket(p, p.arity, "cli")
    try:
        Q = reduce_variables(P, a)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    run.emit(Q.to_text(), "reduced.txt")
    return 0


def _common(suppress: bool) -> argparse.ArgumentParser:
    # subcommands repeat the global flags; SUPPRESS keeps them from clobbering earlier values
    def dflt(v):
        return argparse.SUPPRESS if suppress else v

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=dflt(None), help="directory for output files and manifest.json")
    common.add_argument("--seed", type=int, default=dflt(0), help="seed for randomized corpora")
    common.add_argument("--threads", type=int, default=dflt(1), help="worker threads (recorded; kernel is serial)")
    common.add_argument("--tol", type=float, default=dflt(None), help="tolerance for iterative methods")
    common.add_argument("--json", action="store_true", default=dflt(False), help="emit JSON instead of plain text")
    return common


def build_parser() -> argparse.ArgumentParser:
    top, common = _common(False), _common(True)
    parser = argparse.ArgumentParser(prog="twistbracket", description="Twist-brackets, Jones polynomials and Mahler measures.",
                                     parents=[top])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bracket", parents=[common], help="Kauffman bracket of a diagram")
    p.add_argument("diagram")
    p.add_argument("--twists", help="fill open sites, e.g. 1,1")
    p.set_defaults(func=cmd_bracket)

    p = sub.add_parser("twist-bracket", parents=[common], help="twist-bracket P(A, x1..xk)")
    p.add_argument("diagram")
    p.set_defaults(func=cmd_twist_bracket)

    p = sub.add_parser("jones", parents=[common], help="Jones polynomial of an oriented diagram")
    p.add_argument("diagram")
    p.add_argument("--twists")
    p.set_defaults(func=cmd_jones)

    p = sub.add_parser("family", parents=[common], help="built-in link families")
    p.add_argument("--name", required=True, choices=FAMILIES)
    p.add_argument("--params", default="")
    p.add_argument("--emit", choices=("twist-bracket", "diagram", "jones"), default="twist-bracket")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("mahler", parents=[common], help="Mahler measure of a polynomial")
    p.add_argument("--poly")
    p.add_argument("--stdin", action="store_true")
    p.add_argument("--method", choices=("jensen", "quadrature", "lawton"))
    p.add_argument("--grid", type=int, default=256)
    p.set_defaults(func=cmd_mahler)

    p = sub.add_parser("scan", parents=[common], help="Jones/Mahler table along one twist site")
    p.add_argument("--diagram", required=True)
    p.add_argument("--site", type=int, default=0)
    p.add_argument("--range", default="-10..10")
    p.add_argument("--fill", help="twists for the other sites")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("verify", parents=[common], help="run an identity suite")
    p.add_argument("suite", choices=list(SUITES) + ["all"])
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("reduce", parents=[common], help="relation-driven variable reduction")
    p.add_argument("--a", required=True, help="relation vector a0,...,ak")
    p.add_argument("--poly")
    p.add_argument("--stdin", action="store_true")
    p.add_argument("--diagram")
    p.set_defaults(func=cmd_reduce)
    return parser


_VALUE_FLAGS = {"--twists", "--params", "--range", "--fill", "--a", "--poly"}


def _join_values(argv: list[str]) -> list[str]:
    """Let values such as ``--range -10..10`` start with a minus sign."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_join_values(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    run = Run(args, argv)
    try:
        code = args.func(run, args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ArithmeticError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    run.finish()
    return code


if __name__ == "__main__":
    sys.exit(main())
