"""Command-line front end.

    dmsym check KERNEL.json
    dmsym demo NAME
    dmsym group-residual GENERATOR.json --n 1,0,0 --nbar 0,1,0

Exit codes: 0 success, 1 failed validation, 2 unreadable or malformed input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from . import channels as ch
from . import demos
from . import generators as gen
from .fileformats import FormatError, load_generator, load_kernel
from .linalg import DEFAULT_SEED

SNAP = 1e-13
TEXT_LABELS = {"cp": "CP"}


# --- formatting ---------------------------------------------------------------


def _snap(x: float) -> float:
    return 0.0 if abs(x) < SNAP else float(x)


def fmt_float(x: float) -> str:
    x = _snap(x)
    s = f"{x:.12g}"
    if s in ("-0", "0"):
        return "0.0"
    if not any(c in s for c in ".eninf"):
        s += ".0"
    return s


def fmt(v) -> str:
    if v is None:
        return "none"
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return fmt_float(float(v))
    if isinstance(v, (complex, np.complexfloating)):
        re, im = _snap(v.real), _snap(v.imag)
        if im == 0:
            return fmt_float(re)
        sign = "-" if im < 0 else "+"
        return f"{fmt_float(re)}{sign}{fmt_float(abs(im))}j"
    if isinstance(v, (list, tuple, np.ndarray)):
        return "[" + ", ".join(fmt(x) for x in v) + "]"
    return str(v)


def jsonable(v):
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        x = _snap(float(v))
        return float(f"{x:.12g}") if np.isfinite(x) else str(x)
    if isinstance(v, (complex, np.complexfloating)):
        return [jsonable(v.real), jsonable(v.imag)]
    if isinstance(v, (list, tuple, np.ndarray)):
        return [jsonable(x) for x in v]
    return v


def render(rep: demos.Report, form: str) -> str:
    if form == "json":
        obj = {"title": rep.title}
        obj.update({k.lower(): jsonable(v) for k, v in rep.fields})
        obj["notes"] = rep.notes
        obj["passed"] = rep.passed
        return json.dumps(obj, indent=1) + "\n"
    if form == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["key", "value"])
        for k, v in rep.fields:
            w.writerow([k.lower(), fmt(v)])
        w.writerow(["passed", fmt(rep.passed)])
        return buf.getvalue()
    lines = [f"# {rep.title}"]
    lines += [f"{TEXT_LABELS.get(k.lower(), k)}: {fmt(v)}" for k, v in rep.fields]
    lines += [f"note: {n}" for n in rep.notes]
    lines.append(f"passed: {fmt(rep.passed)}")
    return "\n".join(lines) + "\n"


# --- commands -----------------------------------------------------------------


def cmd_check(args) -> tuple[int, str]:
    k, val = load_kernel(args.path)
    rep = demos.Report(f"check {args.path}")
    rep.add("dim", k.d)
    rep.add("hermiticity_residual", val.hermiticity_residual)
    rep.add("trace_residual", val.trace_residual)
    rep.passed = val.passed
    if val.hermiticity_ok:
        eig = ch.spectrum(k)
        rep.add("eigenvalues", eig.etas)
        cp, eta_min = ch.is_completely_positive(k)
        rep.add("CP", cp)
        rep.add("min_eig", eta_min)
        if cp:
            rep.add("kraus_rank", len(ch.to_kraus(k)))
    if val.passed:
        pos = ch.is_positive_sampled(k, trials=args.trials, seed=args.seed)
        rep.add("positive_on_samples", pos.positive)
        rep.add("worst_image_eigenvalue", pos.worst_min_eigenvalue)
    return (0 if rep.passed else 1), render(rep, args.format)


def cmd_demo(args) -> tuple[int, str]:
    if args.name == "lindblad-backward" and args.format == "csv":
        from .lindblad import write_trajectory_csv

        buf = io.StringIO()
        write_trajectory_csv(demos.lindblad_backward_trajectory(args.dt, args.t), buf)
        return 0, buf.getvalue()
    kwargs = {"seed": args.seed, "trials": args.trials}
    if args.name == "lindblad-backward":
        kwargs.update(dt=args.dt, t=args.t)
    rep = demos.RUNNERS[args.name](**kwargs)
    return (0 if rep.passed else 1), render(rep, args.format)


def _direction(text: str) -> np.ndarray:
    try:
        vals = np.array([float(x) for x in text.split(",")])
    except ValueError as exc:
        raise FormatError(f"direction must be comma-separated reals, got {text!r}") from exc
    if not np.all(np.isfinite(vals)):
        raise FormatError("direction must be finite")
    return vals


def cmd_group_residual(args) -> tuple[int, str]:
    g = load_generator(args.path)
    n, nbar = _direction(args.n), _direction(args.nbar)
    if n.size != g.r_dim or nbar.size != g.r_dim:
        raise FormatError(f"directions must have {g.r_dim} components")
    res = gen.group_residual(g, n, nbar)
    rep = demos.Report(f"group-residual {args.path}")
    rep.add("n", n)
    rep.add("nbar", nbar)
    rep.add("residual", res)
    rep.passed = res <= 1e-8
    return (0 if rep.passed else 1), render(rep, args.format)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=lambda s: int(s, 0), default=DEFAULT_SEED,
                        help=f"random seed (default {DEFAULT_SEED:#x})")
    common.add_argument("--trials", type=int, default=1000, help="sample count for randomized checks")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")

    p = argparse.ArgumentParser(prog="dmsym", description="Kernels and symmetries of density matrices.")
    sub = p.add_subparsers(dest="command", required=True)
    c = sub.add_parser("check", parents=[common], help="validate a kernel file")
    c.add_argument("path")
    c.set_defaults(func=cmd_check)
    d = sub.add_parser("demo", parents=[common], help="run a worked scenario")
    d.add_argument("name", choices=demos.DEMOS)
    d.add_argument("--dt", type=float, default=1e-3, help="integration step")
    d.add_argument("--t", type=float, default=3.0, help="integration time span")
    d.set_defaults(func=cmd_demo)
    g = sub.add_parser("group-residual", parents=[common], help="group-law residual of a generator file")
    g.add_argument("path")
    g.add_argument("--n", required=True, help="direction, comma-separated")
    g.add_argument("--nbar", required=True, help="second direction, comma-separated")
    g.set_defaults(func=cmd_group_residual)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "trials", 1) < 1 or (hasattr(args, "dt") and not args.dt > 0):
        print("dmsym: --trials and --dt must be positive", file=sys.stderr)
        return 2
    try:
        code, text = args.func(args)
    except FormatError as exc:
        print(f"dmsym: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError) as exc:
        print(f"dmsym: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
