"""Command-line front end: identity suites, dataset checks, transport and generation.

Exit status is 0 when every check passes, 1 when a check fails or an
upstream check refuses to run, and 2 for usage, file or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Sequence

from . import dataset as D
from . import gerbe as G
from .crossed import instance_by_name
from .errors import CheckRefused, DatasetError, GerbeFormsError, ParseError
from .identities import EquivParams, SuiteParams, run_equiv_suite, run_forms_suite
from .report import Report

# desk-scale defaults; larger values run but print a warning
BOUNDS = {"N": 4, "dim": 4, "size": 3, "degree": 2}


@dataclass
class RunReport:
    command: str
    seed: int | None = None
    params: dict = field(default_factory=dict)
    report: Report = field(default_factory=Report)

    @property
    def passed(self) -> bool:
        return self.report.passed

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "seed": self.seed,
            "params": self.params,
            "records": [r.to_dict() for r in self.report.records],
            "summary": self.report.summary(),
        }


def emit_report(run: RunReport, fmt: str = "text", verbose: bool = False) -> bytes:
    """Deterministic bytes for a run report, ``fmt`` being ``text`` or ``structured``."""
    if fmt == "structured":
        return (json.dumps(run.to_dict(), indent=2) + "\n").encode()
    if fmt != "text":
        raise ValueError(f"unknown report format {fmt!r}")
    rep = run.report
    lines = [f"# {run.command}" + (f" (seed {run.seed})" if run.seed is not None else "")]
    if run.params:
        lines.append("# " + " ".join(f"{k}={v}" for k, v in run.params.items()))
    for eq, (npass, nfail) in rep.by_equation().items():
        lines.append(f"{'PASS' if not nfail else 'FAIL'} {eq}: {npass}/{npass + nfail}")
    for r in rep.records if verbose else rep.failures():
        idx = ",".join(map(str, r.index))
        line = f"  {r.status} {r.equation} ({idx})"
        if r.leading:
            line += f": leading term {r.leading}"
        lines.append(line)
    s = rep.summary()
    lines.append(f"summary: {s['passed']} passed, {s['failed']} failed, {s['total']} total")
    return ("\n".join(lines) + "\n").encode()


def _warn_bounds(**values: int) -> None:
    for key, value in values.items():
        if value is not None and value > BOUNDS[key]:
            print(f"warning: {key}={value} exceeds the desk-scale bound {BOUNDS[key]}; "
                  "exact arithmetic may be slow", file=sys.stderr)


def _load(path: str) -> D.DatasetFile:
    try:
        ds = D.load(path)
    except (ParseError, DatasetError) as exc:
        exc.path = path
        raise
    _warn_bounds(N=ds.N, dim=ds.dim, size=ds.size)
    return ds


def _write_text(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


# -- commands -----------------------------------------------------------------

def cmd_identities(args) -> RunReport:
    p = SuiteParams(args.seed, args.trials, args.dim, args.size, args.degree)
    _warn_bounds(dim=p.dim, size=p.size, degree=p.degree)
    cm = instance_by_name(args.instance, p.size)
    params = {"instance": cm.name, **p.as_dict()}
    return RunReport("identities", p.seed, params, run_forms_suite(p, cm))


def cmd_equiv(args) -> RunReport:
    p = EquivParams(args.seed, args.ones, args.twos, args.dim, args.size, args.degree)
    _warn_bounds(dim=p.dim, size=p.size, degree=p.degree)
    cm = instance_by_name(args.instance, p.size)
    params = {"instance": cm.name, **p.as_dict()}
    return RunReport("equiv", p.seed, params, run_equiv_suite(p, cm))


def cmd_check(args) -> RunReport:
    data = D.to_gerbe(_load(args.file))
    report = G.check_all(data)
    if data.cocycle is not None and data.curving is not None:
        report.merge(G.check_cech_defect(data.cm, data.cocycle, data.curving.B, data.cover.N))
    return RunReport("check", None, {"file": args.file}, report)


def cmd_curvature(args) -> RunReport:
    ds = _load(args.file)
    data = D.to_gerbe(ds)
    if data.cocycle is None or data.connection is None or data.curving is None:
        raise DatasetError("curvature needs lambda, g, m, gamma and B", "B")
    cm, N = data.cm, data.cover.N
    data.derived = G.derive_curving(cm, data.cocycle, data.connection, data.curving, N)
    report = G.check_curving(cm, data.cocycle, data.connection, data.derived, N, data.curving)
    out = D.from_parts(cm, N, ds.dim, gerbe=data)
    out.names, out.size = ds.names, ds.size
    _write_text(D.format_dataset(out), args.output)
    return RunReport("curvature", None, {"file": args.file}, report)


def cmd_coboundary(args) -> RunReport:
    ds = _load(args.file)
    data = D.to_gerbe(ds)
    if data.cocycle is None:
        raise DatasetError("transport needs at least lambda and g", "lambda")
    cb = D.to_coboundary(_load(args.by))
    primed = G.transport(data, cb)
    report = G.check_all(primed)
    report.merge(G.check_coboundary_consistency(data.cm, cb, data, primed))
    if args.output:
        out = D.from_parts(data.cm, data.cover.N, ds.dim, gerbe=primed)
        out.names, out.size = ds.names, ds.size
        _write_text(D.format_dataset(out), args.output)
    return RunReport("coboundary", None, {"file": args.file, "by": args.by}, report)


def cmd_remark(args) -> RunReport:
    data = D.to_gerbe(_load(args.file))
    cb = D.to_coboundary(_load(args.by))
    return RunReport("remark", None, {"file": args.file, "by": args.by}, G.remark_check(data, cb))


def cmd_bundle(args) -> RunReport:
    ds = _load(args.file)
    return RunReport("bundle", None, {"file": args.file}, G.bundle_check(D.to_bundle(ds), ds.N))


def cmd_generate(args) -> RunReport:
    _warn_bounds(N=args.cover, dim=args.dim, size=args.size, degree=args.degree)
    cm = instance_by_name(args.instance, args.size)
    N, dim = args.cover, args.dim
    gerbe = cb = bundle = None
    if args.kind in ("gerbe", "all"):
        gerbe, _ = G.generate_exact(cm, args.seed, N, dim, args.degree, identity=args.identity)
    if args.kind in ("coboundary", "all"):
        G.Cover(N, dim)
        if args.identity:
            cb = G.identity_coboundary(cm, N, dim)
        elif args.reduced:
            cb = G.reduced_coboundary(cm, args.seed, N, dim, args.degree)
        else:
            cb = G.random_coboundary(cm, args.seed, N, dim, args.degree, "further")
    if args.kind in ("bundle", "all"):
        bundle = G.generate_bundle(cm, args.seed, N, dim, args.degree)
    ds = D.from_parts(cm, N, dim, gerbe=gerbe, coboundary=cb, bundle=bundle,
                      derived=not args.no_derived)
    _write_text(D.format_dataset(ds), args.output)
    report = Report("generate")
    if gerbe is not None:
        report.merge(G.check_all(gerbe))
    if bundle is not None:
        report.merge(G.bundle_check(bundle, N))
    params = {"kind": args.kind, "instance": cm.name, "N": N, "dim": dim, "size": args.size,
              "degree": args.degree, "identity": args.identity, "reduced": args.reduced}
    return RunReport("generate", args.seed, params, report)


# -- argument parsing -----------------------------------------------------------

def _suite_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dim", type=int, default=3, help="chart dimension d")
    p.add_argument("--size", type=int, default=3, help="matrix size k")
    p.add_argument("--degree", type=int, default=2, help="coefficient degree bound")
    p.add_argument("--instance", default="INNER", choices=["INNER", "ABELIAN"])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gerbeforms", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--report", metavar="PATH", help="also write a structured JSON report")
    common.add_argument("-v", "--verbose", action="store_true", help="list passing records too")

    p = sub.add_parser("identities", parents=[common], help="forms identity suite")
    _suite_args(p)
    p.add_argument("--trials", type=int, default=10)
    p.set_defaults(run=cmd_identities)

    p = sub.add_parser("equiv", parents=[common], help="combinatorial equivalence suite")
    _suite_args(p)
    p.set_defaults(size=2)
    p.add_argument("--ones", type=int, default=25, help="number of random 1-forms")
    p.add_argument("--twos", type=int, default=10, help="number of random 2-forms")
    p.set_defaults(run=cmd_equiv)

    p = sub.add_parser("check", parents=[common], help="check every equation of a dataset")
    p.add_argument("file")
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("curvature", parents=[common], help="emit nu, delta, omega3 as a dataset")
    p.add_argument("file")
    p.add_argument("-o", "--output", help="dataset output path (default: stdout)")
    p.set_defaults(run=cmd_curvature)

    p = sub.add_parser("coboundary", parents=[common], help="transport along a coboundary")
    p.add_argument("file")
    p.add_argument("--by", required=True, metavar="FILE", help="dataset holding r, theta, e, n")
    p.add_argument("-o", "--output", help="write the transported dataset here")
    p.set_defaults(run=cmd_coboundary)

    p = sub.add_parser("bundle", parents=[common], help="check principal-bundle data")
    p.add_argument("file")
    p.set_defaults(run=cmd_bundle)

    p = sub.add_parser("remark", parents=[common], help="reduction check for r = 1, theta = 1")
    p.add_argument("file")
    p.add_argument("--by", required=True, metavar="FILE")
    p.set_defaults(run=cmd_remark)

    p = sub.add_parser("generate", parents=[common], help="write a seeded exact dataset")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cover", type=int, default=3, help="number of charts N")
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--size", type=int, default=2)
    p.add_argument("--degree", type=int, default=1)
    p.add_argument("--instance", default="INNER", choices=["INNER", "ABELIAN"])
    p.add_argument("--kind", default="gerbe", choices=["gerbe", "coboundary", "bundle", "all"])
    p.add_argument("--identity", action="store_true", help="use the identity coboundary")
    p.add_argument("--reduced", action="store_true",
                   help="coboundary with r = 1 and theta = 1 (for the remark command)")
    p.add_argument("--no-derived", action="store_true", help="omit nu, delta, omega3")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(run=cmd_generate)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        run = args.run(args)
    except CheckRefused as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 1
    except (ParseError, DatasetError) as exc:
        path = getattr(exc, "path", None)
        print(f"error: {path + ': ' if path else ''}{exc}", file=sys.stderr)
        return 2
    except (OSError, GerbeFormsError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = emit_report(run, "text", args.verbose)
    # the dataset goes to stdout when -o is '-', so the report moves to stderr
    stream = sys.stderr if getattr(args, "output", None) in ("-",) or (
        args.command == "curvature" and not args.output) else sys.stdout
    stream.write(text.decode())
    if args.report:
        with open(args.report, "wb") as fh:
            fh.write(emit_report(run, "structured"))
    return 0 if run.passed else 1


if __name__ == "__main__":
    sys.exit(main())
