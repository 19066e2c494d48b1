"""Command-line interface.

Exit status: 0 analysis completed (whatever the verdicts), 1 parse or
validation failure, 2 usage error, 3 internal invariant breach.
"""
from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .catalog import catalog_names, get_entry
from .curvature import ricci, ricci_matrix
from .geodesic import ProbePlan, go_certificate, go_survey
from .killing import OrbitPlan, length_profile, verify_abelian_ideal_theorem
from .liealg import EPS_RANK, EPS_STRUCT, InvariantError
from .modelfile import ModelFileError, emit_model, entry_subspaces, parse_model
from .report import AnalysisOptions, dumps, ric_star_json, run_analysis


class UsageError(Exception):
    pass


def _vector(text, length, what):
    try:
        v = [float(Fraction(t.strip())) for t in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"{what}: expected comma-separated numbers, got {text!r}") from None
    if len(v) != length:
        raise UsageError(f"{what}: expected {length} components, got {len(v)}")
    return np.array(v)


def _seed(args):
    if args.seed is not None:
        return args.seed
    env = os.environ.get("METRICLIE_SEED")
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"METRICLIE_SEED must be an integer, got {env!r}") from None
    return 42


def _load(args):
    return parse_model(Path(args.file), force=args.force,
                       eps_struct=args.eps_struct, eps_rank=args.eps_rank)


def _fmt(x):
    return f"{x: .10g}"


def _fvec(v):
    return "(" + ", ".join(f"{float(x):.10g}" for x in v) + ")"


def _print_rows(rows):
    width = max(len(k) for k, _ in rows)
    for k, v in rows:
        print(f"  {k.ljust(width)}  {v}")


def cmd_validate(args):
    model = _load(args)
    print(f"model {model.name or args.file}: VALID")
    _print_rows([(k, "-" if v is None else _fmt(v)) for k, v in model.residuals.items()])
    for w in model.warnings:
        print(f"  warning: {w}")
    return 0


def cmd_analyze(args):
    model = _load(args)
    opts = AnalysisOptions(seed=_seed(args), probes=args.probes, eps_len=args.eps_len)
    report = run_analysis(model, opts)
    if args.json:
        Path(args.json).write_text(dumps(report))
    gs = report["go_survey"]
    rows = [("GO survey", f"{gs['verdict']} ({gs['feasible']}/{gs['probes']} probes geodesic)"),
            ("naturally reductive", str(report["naturally_reductive"]["ok"])),
            ("symmetric pair", str(report["symmetric_pair"]["ok"])),
            ("unimodularity defect", _fmt(report["unimodularity"]["residuals"]["defect"])),
            ("Ricci eigenvalues", " ".join(_fmt(x) for x in report["ricci"]["eigenvalues"]))]
    if gs["witness"]:
        w = gs["witness"]
        rows.append(("GO witness", f"X = {w['direction']}  Y = {w['witness']}  "
                                   f"value {_fmt(w['witness_value'])}"))
    for p in report["length_profiles"]:
        rows.append((f"length of {p['basis']}", f"{p['verdict']} (spread {p['spread']:.3g})"))
    if isinstance(report["abelian_ideal_theorem"], dict):
        for name, t in report["abelian_ideal_theorem"].items():
            rows.append((f"abelian ideal {name}", t["status"]))
    if isinstance(report["ric_star"], dict):
        for name, t in report["ric_star"].items():
            rows.append((f"Ric* identity {name}", t.get("error") or
                         f"max difference {t['max_difference']:.3g}"))
    print(f"analysis of {model.name or args.file}  (seed {opts.seed})")
    _print_rows(rows)
    for note in report["unimodularity"]["notes"]:
        print(f"  {note}")
    print(f"  note: {report['scope']}")
    return 0


def cmd_go_check(args):
    model = _load(args)
    if args.direction:
        x = _vector(args.direction, model.r, "--direction")
        cert = go_certificate(model, x)
        if cert.feasible:
            print(f"feasible: H_X = {_fvec(cert.h_solution)}  residual {cert.residual:.3g}")
        else:
            print(f"infeasible: residual {cert.residual:.6g}")
            print(f"  witness Y = {_fvec(cert.witness)}  g([H+X, Y]_m, X) = "
                  f"{cert.witness_value:.10g} for every H")
        return 0
    survey = go_survey(model, ProbePlan(random_count=args.probes, seed=_seed(args)))
    ok = sum(c.feasible for c in survey.certificates)
    print(f"GO survey: {survey.verdict} ({ok}/{len(survey.certificates)} probes geodesic)")
    if survey.failure is not None:
        c = survey.failure
        print(f"  non-geodesic direction X = {_fvec(c.direction)}")
        print(f"  witness Y = {_fvec(c.witness)}  value {c.witness_value:.10g}")
    return 0


def cmd_ricci(args):
    model = _load(args)
    if args.direction:
        x = _vector(args.direction, model.r, "--direction")
        res = ricci(model, x)
        print(f"Ric(X, X) = {res.value:.12g}")
        _print_rows([("-B(X,X)/2", _fmt(res.killing_term)),
                     ("-sum |[X,Xi]_m|^2 / 2", _fmt(res.bracket_norm_term)),
                     ("sum ([Xi,Xj]_m, X)^2 / 4", _fmt(res.double_sum_term)),
                     ("-([Z,X]_m, X)", _fmt(res.z_term))])
        return 0
    rm = ricci_matrix(model)
    print("Ricci matrix (complement coordinates):")
    for row in rm:
        print("  " + " ".join(_fmt(v) for v in row))
    return 0


def cmd_const_length(args):
    model = _load(args)
    x = _vector(args.field, model.n, "--field")
    prof = length_profile(model, x, OrbitPlan(seed=_seed(args), eps_len=args.eps_len))
    sq = [s.sq_length for s in prof.samples]
    print(f"field {_fvec(x)}: {prof.verdict}")
    _print_rows([("samples", str(len(sq))), ("length at origin", _fmt(prof.samples[0].length)),
                 ("min g(X,X)", _fmt(min(sq))), ("max g(X,X)", _fmt(max(sq))),
                 ("spread", _fmt(prof.spread)), ("max critical residual", _fmt(prof.max_residual))])
    return 0


def _named(model, name):
    if name not in model.subspaces:
        known = ", ".join(model.subspaces) or "none"
        raise UsageError(f"no subspace named {name!r} in the model file (known: {known})")
    return model.subspaces[name]


def cmd_theorem1(args):
    model = _load(args)
    a = _named(model, args.ideal)
    seed = _seed(args)
    rep = verify_abelian_ideal_theorem(model, a, OrbitPlan(seed=seed, eps_len=args.eps_len),
                                       probe_plan=ProbePlan(random_count=args.probes, seed=seed))
    label = {"pass": "PASS", "CONTRADICTION": "CONTRADICTION",
             "precondition-failed": "PRECONDITION FAILED"}[rep.status]
    print(f"abelian ideal {args.ideal}: {label}")
    _print_rows([(k, str(v)) for k, v in rep.preconditions.items()]
                + [("fields tested", str(len(rep.profiles))), ("max spread", _fmt(rep.max_spread))])
    for note in rep.notes:
        print(f"  note: {note}")
    return 0


def cmd_ricstar(args):
    model = _load(args)
    k = _named(model, args.k)
    out = ric_star_json(model, k, _seed(args), args.samples)
    if "error" in out:
        print(f"k = {args.k}: preconditions not met: {out['error']}")
        return 1
    print(f"k = {args.k}: dim m1 = {out['m1_dim']}, dim m2 = {out['m2_dim']}")
    _print_rows([("samples", str(out["samples"])),
                 ("max |Ric* - (Ric - corr)|", f"{out['max_difference']:.3g}"),
                 ("skew residual of ad(m1) on m", f"{out['skew_residual']:.3g}"),
                 ("hypotheses met", str(out["hypotheses_met"]))])
    return 0


def cmd_catalog(args):
    if args.action == "list":
        for name in catalog_names():
            entry = get_entry(name)
            print(f"{name:28s} dim {entry.model.n}  GO {entry.go_verdict}")
        return 0
    if not args.name:
        raise UsageError("catalog emit requires an entry name")
    try:
        entry = get_entry(args.name)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    text = emit_model(entry.model, entry_subspaces(entry))
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="metriclie", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"metriclie {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def model_cmd(name, func, help):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("file")
        sp.add_argument("--force", action="store_true", help="downgrade validation errors")
        sp.add_argument("--eps-struct", type=float, default=None,
                        help=f"axiom residual tolerance (default {EPS_STRUCT})")
        sp.add_argument("--eps-rank", type=float, default=None,
                        help=f"rank/feasibility tolerance (default {EPS_RANK})")
        sp.add_argument("--seed", type=int, default=None,
                        help="sampling seed (default $METRICLIE_SEED or 42)")
        sp.add_argument("--probes", type=int, default=200, help="random GO probes")
        sp.add_argument("--eps-len", type=float, default=1e-8, help="constant-length tolerance")
        sp.set_defaults(func=func)
        return sp

    model_cmd("validate", cmd_validate, "parse and validate a model file")
    sp = model_cmd("analyze", cmd_analyze, "run the full analysis")
    sp.add_argument("--json", metavar="OUT", help="write the full JSON report")
    sp = model_cmd("go-check", cmd_go_check, "geodesic-orbit check")
    sp.add_argument("--direction", help="complement coordinates v1,...,vr")
    sp = model_cmd("ricci", cmd_ricci, "Ricci curvature")
    sp.add_argument("--direction", help="complement coordinates v1,...,vr")
    sp = model_cmd("const-length", cmd_const_length, "length profile of a Killing field")
    sp.add_argument("--field", required=True, help="algebra coordinates c1,...,cn")
    sp = model_cmd("theorem1", cmd_theorem1, "constant length on an abelian ideal")
    sp.add_argument("--ideal", required=True, help="name of a subspace in the model file")
    sp = model_cmd("ricstar", cmd_ricstar, "compact-quotient Ricci identity")
    sp.add_argument("--k", required=True, help="name of a subalgebra in the model file")
    sp.add_argument("--samples", type=int, default=50)

    sp = sub.add_parser("catalog", help="built-in models")
    sp.add_argument("action", choices=["list", "emit"])
    sp.add_argument("name", nargs="?")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_catalog)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ModelFileError as exc:
        print(f"{args.file}: invalid model", file=sys.stderr)
        for d in exc.diagnostics:
            print(f"  {d}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InvariantError as exc:
        print(f"internal invariant breach: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
