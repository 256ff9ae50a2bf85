"""Command-line front end: ``hyp43 eval | verify | sweep``.

Negative values that are not plain numbers need the ``=`` form, e.g.
``--a=-0.5,1.5,0.3,0.8`` or ``--z=-3+4i``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import mpmath

from . import errata
from .dispatch import METHOD_NAMES, default_schedule, evaluate
from .errors import Hyp43Error, NumericalFailure, UnsupportedPattern
from .mellin_barnes import mellin_barnes
from .numerics import PrecisionContext, parse_scalar
from .oracles import epsilon_limit
from .patterns import ParameterSet, PatternKind, classify_pattern
from .results import SeriesControl
from .suites import Case, builtin_suite

DEFAULT_DIGITS = 30
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NUMERICAL, EXIT_UNSUPPORTED = 0, 1, 2, 3, 4
TOL_EXACT = 1e-10
TOL_EPS = 1e-6
VERIFY_METHODS = ("expansion", "mb", "eps")


class UsageError(Exception):
    pass


def exit_code_for(exc: BaseException) -> int:
    if isinstance(exc, UnsupportedPattern):
        return EXIT_UNSUPPORTED
    if isinstance(exc, NumericalFailure):
        return EXIT_NUMERICAL
    return EXIT_USAGE


# --- configuration ---------------------------------------------------------

def read_config(path: str) -> dict:
    """Flat ``key = value`` file; ``#`` starts a comment."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            out[key.replace("-", "_")] = value
    return out


@dataclass
class Settings:
    digits: int = DEFAULT_DIGITS
    rel_tol: float | None = None
    max_terms: int = 10000
    method: str = "auto"
    seed: int = 42
    as_json: bool = False

    def control(self) -> SeriesControl:
        kwargs = {"max_terms": self.max_terms}
        if self.rel_tol is not None:
            kwargs["rel_tol"] = self.rel_tol
        return SeriesControl(PrecisionContext(self.digits), **kwargs)


_CASTS = {"digits": int, "rel_tol": float, "max_terms": int, "method": str, "seed": int}


def resolve_settings(args) -> Settings:
    """flag > config file > HYP43_DIGITS > default."""
    s = Settings()
    env = os.environ.get("HYP43_DIGITS")
    if env:
        try:
            s.digits = int(env)
        except ValueError as exc:
            raise UsageError(f"HYP43_DIGITS must be an integer, got {env!r}") from exc
    config_path = getattr(args, "config", None)
    if config_path:
        for key, value in read_config(config_path).items():
            if key not in _CASTS:
                raise UsageError(f"unknown config key {key!r}")
            try:
                setattr(s, key, _CASTS[key](value))
            except ValueError as exc:
                raise UsageError(f"bad value for {key}: {value!r}") from exc
    for key in _CASTS:
        value = getattr(args, key, None)
        if value is not None:
            setattr(s, key, value)
    s.as_json = bool(getattr(args, "json", False))
    if s.method not in METHOD_NAMES:
        raise UsageError(f"unknown method {s.method!r}")
    if s.digits < 15:
        raise UsageError("--digits must be at least 15")
    return s


# --- parsing helpers -------------------------------------------------------

def parse_list(text: str, count: int, what: str) -> tuple:
    items = [t.strip() for t in text.split(",") if t.strip()]
    if len(items) != count:
        raise UsageError(f"{what} needs {count} comma-separated values, got {len(items)}")
    ctx = PrecisionContext(DEFAULT_DIGITS)
    for item in items:
        try:
            parse_scalar(item, ctx)
        except ValueError as exc:
            raise UsageError(f"cannot parse {what} entry {item!r}") from exc
    return tuple(items)


def fmt_complex(v, digits: int) -> dict:
    return {"re": mpmath.nstr(v.real, digits), "im": mpmath.nstr(v.imag, digits)}


# --- eval ------------------------------------------------------------------

def cmd_eval(args, out) -> int:
    if args.explain:
        out.write(errata.format_errata())
        if args.a is None:
            return EXIT_OK
    if args.a is None or args.b is None or args.z is None:
        raise UsageError("eval needs --a, --b and --z")
    s = resolve_settings(args)
    params = ParameterSet(parse_list(args.a, 4, "--a"), parse_list(args.b, 3, "--b"))
    ctl = s.control()
    z = parse_scalar(args.z, ctl.ctx)
    printed = tuple(p for p in (args.use_printed or "").split(",") if p)
    result = evaluate(params, z, ctl, s.method, use_printed=printed)
    if s.as_json:
        out.write(json.dumps(result.to_json(s.digits)) + "\n")
    else:
        out.write(f"value:   {mpmath.nstr(result.value.real, s.digits)} {'+' if result.value.imag >= 0 else '-'} "
                  f"{mpmath.nstr(abs(result.value.imag), s.digits)}i\n")
        out.write(f"abs_err: {float(result.abs_err_estimate):.3e}\n")
        out.write(f"method:  {result.method.value}\n")
        out.write(f"terms:   {result.terms_used}\n")
        for w in result.warnings:
            out.write(f"warning: {w}\n")
    return EXIT_OK


# --- verify ----------------------------------------------------------------

@dataclass
class ReportRecord:
    case: Case
    methods: list = field(default_factory=list)
    max_pairwise_rel_diff: float | None = None
    tolerance: float = TOL_EXACT
    status: str = "fail"
    notes: list = field(default_factory=list)

    def to_json(self, digits: int) -> dict:
        return {
            "id": self.case.id,
            "pattern": self.case.pattern,
            "params": {"a": list(self.case.params.a), "b": list(self.case.params.b)},
            "z": self.case.z,
            "methods": [
                {"method": tag, "value": fmt_complex(v, digits), "abs_err": float(err)} for tag, v, err in self.methods
            ],
            "max_pairwise_rel_diff": None if self.max_pairwise_rel_diff is None else float(
                mpmath.nstr(self.max_pairwise_rel_diff, 6)),
            "tolerance": self.tolerance,
            "status": self.status,
            "notes": self.notes,
        }


def run_case(case: Case, settings: Settings, methods) -> ReportRecord:
    ctl = settings.control()
    ctx = ctl.ctx
    rec = ReportRecord(case)
    try:
        z = parse_scalar(case.z, ctx)
        pattern = classify_pattern(case.params.upper(ctx), ctx)
    except Hyp43Error as exc:
        rec.notes.append(f"{type(exc).__name__}: {exc}")
        return rec
    clustered = pattern.kind in (PatternKind.PAIR, PatternKind.TRIPLE, PatternKind.QUAD)
    runners = []
    if "expansion" in methods:
        runners.append(lambda: evaluate(case.params, z, ctl))
    if "mb" in methods:
        runners.append(lambda: mellin_barnes(case.params, z, None, ctx))
    if "eps" in methods and clustered and abs(z) > 1:
        runners.append(lambda: epsilon_limit(case.params, pattern, z, default_schedule(ctx.digits), ctl))
        rec.tolerance = TOL_EPS
    for run in runners:
        try:
            res = run()
        except Hyp43Error as exc:
            rec.notes.append(f"{type(exc).__name__}: {exc}")
            continue
        rec.methods.append((res.method.value, res.value, res.abs_err_estimate))
        rec.notes.extend(res.warnings)
    if len(rec.methods) >= 2 and len(rec.methods) == len(runners):
        worst = mpmath.mpf(0)
        for i in range(len(rec.methods)):
            for j in range(i + 1, len(rec.methods)):
                vi, vj = rec.methods[i][1], rec.methods[j][1]
                worst = max(worst, abs(vi - vj) / max(abs(vi), abs(vj)))
        rec.max_pairwise_rel_diff = worst
        rec.status = "pass" if worst <= rec.tolerance else "fail"
    elif len(runners) < 2:
        rec.notes.append("fewer than two applicable methods")
    return rec


def _parse_only(text):
    if not text:
        return None
    key, _, value = text.partition("=")
    if key.strip() != "pattern" or not value:
        raise UsageError("--only expects pattern=<generic|pair|triple|quad>")
    return value.strip().lower()


def cmd_verify(args, out) -> int:
    s = resolve_settings(args)
    if args.suite:
        with open(args.suite, encoding="utf-8") as fh:
            data = json.load(fh)
        if not isinstance(data, list):
            raise UsageError("suite file must hold a JSON array")
        cases = [Case.from_json(item, i) for i, item in enumerate(data)]
    else:
        cases = builtin_suite(s.seed, args.per_kind)
    only = _parse_only(args.only)
    if only:
        cases = [c for c in cases if (c.pattern or "").lower() == only]
    methods = VERIFY_METHODS
    if args.methods:
        methods = tuple(m.strip() for m in args.methods.split(",") if m.strip())
        bad = set(methods) - set(VERIFY_METHODS)
        if bad:
            raise UsageError(f"unknown --methods entries {sorted(bad)}; choose from {', '.join(VERIFY_METHODS)}")
    failed = 0
    for case in cases:
        rec = run_case(case, s, methods)
        failed += rec.status != "pass"
        out.write(json.dumps(rec.to_json(s.digits)) + "\n")
    return EXIT_FAIL if failed else EXIT_OK


# --- sweep -----------------------------------------------------------------

def parse_grid(text: str, ctx: PrecisionContext) -> list:
    """``START,STOP,COUNT`` (a segment) or ``rect:RE0,RE1,NRE,IM0,IM1,NIM``."""
    mp = ctx.mp
    try:
        if text.startswith("rect:"):
            re0, re1, nre, im0, im1, nim = text[5:].split(",")
            nre, nim = int(nre), int(nim)
            res = _linspace(mp.mpf(re0), mp.mpf(re1), nre, mp)
            ims = _linspace(mp.mpf(im0), mp.mpf(im1), nim, mp)
            return [mp.mpc(r.real, i.real) for i in ims for r in res]
        start, stop, count = text.split(",")
        return _linspace(parse_scalar(start, ctx), parse_scalar(stop, ctx), int(count), mp)
    except ValueError as exc:
        raise UsageError(f"bad --z-grid {text!r}: {exc}") from exc


def _linspace(a, b, n, mp):
    if n < 1:
        raise ValueError("grid count must be positive")
    if n == 1:
        return [mp.mpc(a)]
    return [mp.mpc(a + (b - a) * k / (n - 1)) for k in range(n)]


def _sweep_row(job):
    params, (z_re, z_im), settings = job
    ctl = settings.control()
    mp = ctl.ctx.mp
    z = mp.mpc(mp.mpf(z_re), mp.mpf(z_im))
    zre, zim = mpmath.nstr(z.real, 17), mpmath.nstr(z.imag, 17)
    try:
        res = evaluate(params, z, ctl, settings.method)
    except Hyp43Error as exc:
        return [zre, zim, "", "", "", type(exc).__name__, ""], False
    v = res.value
    return [zre, zim, mpmath.nstr(v.real, settings.digits), mpmath.nstr(v.imag, settings.digits),
            f"{float(res.abs_err_estimate):.6e}", res.method.value, str(res.terms_used)], True


def cmd_sweep(args, out) -> int:
    s = resolve_settings(args)
    if args.a is None or args.b is None or args.z_grid is None:
        raise UsageError("sweep needs --a, --b and --z-grid")
    params = ParameterSet(parse_list(args.a, 4, "--a"), parse_list(args.b, 3, "--b"))
    ctx = PrecisionContext(s.digits)
    points = parse_grid(args.z_grid, ctx)
    # full-precision text keeps the points exact across worker processes
    jobs = [(params, (mpmath.nstr(z.real, ctx.mp.dps), mpmath.nstr(z.imag, ctx.mp.dps)), s) for z in points]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_sweep_row, jobs))
    else:
        rows = [_sweep_row(j) for j in jobs]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["z_re", "z_im", "f_re", "f_im", "abs_err", "method", "terms"])
    for row, _ in rows:
        writer.writerow(row)
    out.write(buf.getvalue())
    return EXIT_OK if any(ok for _, ok in rows) else EXIT_USAGE


# --- argument parser -------------------------------------------------------

def _add_common(p: argparse.ArgumentParser, suppress: bool):
    default = argparse.SUPPRESS if suppress else None
    p.add_argument("--digits", type=int, default=default, help="working precision in significant digits (default 30)")
    p.add_argument("--rel-tol", type=float, default=default, help="series truncation tolerance (>= 10^(5-digits))")
    p.add_argument("--max-terms", type=int, default=default, help="term budget per series (default 10000)")
    p.add_argument("--method", choices=METHOD_NAMES, default=default, help="force an evaluator (default auto)")
    p.add_argument("--json", action="store_true", default=argparse.SUPPRESS if suppress else False,
                   help="machine-readable output")
    p.add_argument("--seed", type=int, default=default, help="seed for the built-in verify suite (default 42)")
    p.add_argument("--config", default=default, help="key=value config file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hyp43", description="4F3 in the logarithmic cases and its oracles.")
    _add_common(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate 4F3(a; b; z)")
    _add_common(p, suppress=True)
    p.add_argument("--a", help="four upper parameters, comma-separated")
    p.add_argument("--b", help="three lower parameters, comma-separated")
    p.add_argument("--z", help="argument, e.g. -5 or -3+4i")
    p.add_argument("--explain", action="store_true", help="print the erratum table")
    p.add_argument("--use-printed", help="comma-separated erratum ids whose printed form to use")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("verify", help="compare expansions against the oracles")
    _add_common(p, suppress=True)
    p.add_argument("--suite", help="JSON array of {a, b, z[, id, pattern]} cases")
    p.add_argument("--per-kind", type=int, default=3, help="cases per pattern in the built-in suite")
    p.add_argument("--only", help="filter, e.g. pattern=pair")
    p.add_argument("--methods", help=f"subset of {','.join(VERIFY_METHODS)}")
    p.add_argument("--output", help="write JSONL here instead of stdout")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="evaluate over a grid of z values, CSV output")
    _add_common(p, suppress=True)
    p.add_argument("--a", help="four upper parameters, comma-separated")
    p.add_argument("--b", help="three lower parameters, comma-separated")
    p.add_argument("--z-grid", help="START,STOP,COUNT or rect:RE0,RE1,NRE,IM0,IM1,NIM")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--output", help="write CSV here instead of stdout")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    path = getattr(args, "output", None)
    out = open(path, "w", encoding="utf-8", newline="") if path else sys.stdout
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"hyp43: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (Hyp43Error, ValueError) as exc:
        print(f"hyp43: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exit_code_for(exc)
    finally:
        if path:
            out.close()


if __name__ == "__main__":
    sys.exit(main())
