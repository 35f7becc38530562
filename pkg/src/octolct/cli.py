"""Batch front end: ``octolct {gen,transform,invert,verify,selftest}``.

Exit codes: 0 success, 1 selftest failure, 2 unreadable or malformed
file, 3 invalid transform/signal parameters, 4 invalid check parameters.
"""
from __future__ import annotations

import argparse
import csv
import io
import math
import sys
import time

import numpy as np

from . import algebra, inequalities as ineq, kernels, oos1, signals, transform as tr
from .grid import (Grid, OctField, ball_mask, even_odd_axis3, local_pair_split, parity8,
                   relative_error, weighted_sq_norm)

EXIT_OK, EXIT_SELFTEST, EXIT_FILE, EXIT_PARAMS, EXIT_CHECK = 0, 1, 2, 3, 4

CSV_COLUMNS = ("check", "alpha", "p", "q", "E_measure", "convention", "lhs", "rhs", "constant",
               "slack", "holds", "grid_n", "grid_halfwidth", "b1", "b2", "b3")

FOURIER = "0,1,-1,0,0,0"


class CliError(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


# ---------------------------------------------------------------------------
# argument helpers

def _floats(text, what):
    try:
        return [float(v) for v in str(text).split(",") if v.strip() != ""]
    except ValueError:
        raise CliError(EXIT_PARAMS, f"{what}: cannot parse {text!r} as comma-separated numbers") from None


def _params(args):
    seqs = [_floats(getattr(args, f"A{k}"), f"axis {k} (A{k})") for k in (1, 2, 3)]
    try:
        return tr.OLCTParamsTriple.build(*seqs, det_tol=1e-9)
    except tr.InvalidParams as exc:
        raise CliError(EXIT_PARAMS, str(exc)) from None


def _options(args):
    return tr.TransformOptions(phase_convention=args.convention, path=args.path)


def _read(path):
    try:
        return oos1.read(path)
    except OSError as exc:
        raise CliError(EXIT_FILE, f"cannot read {path}: {exc.strerror or exc}") from None
    except oos1.FormatError as exc:
        raise CliError(EXIT_FILE, f"malformed OOS1 file {path}: {exc}") from None


def _write(path, f):
    try:
        oos1.write(path, f)
    except OSError as exc:
        raise CliError(EXIT_FILE, f"cannot write {path}: {exc.strerror or exc}") from None


def _triple(text, what, cast):
    vals = _floats(text, what)
    if len(vals) == 1:
        vals = vals * 3
    if len(vals) != 3:
        raise CliError(EXIT_PARAMS, f"{what}: expected 1 or 3 values, got {len(vals)}")
    return tuple(cast(v) for v in vals)


def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return repr(float(v))


def _echo(out, **items):
    for key, val in items.items():
        if isinstance(val, float):
            val = repr(val)
        elif isinstance(val, tuple):
            val = ",".join(repr(v) if isinstance(v, float) else str(v) for v in val)
        print(f"{key}={val}", file=out)


# ---------------------------------------------------------------------------
# commands

def cmd_gen(args, out):
    try:
        n = _triple(args.n, "--n", int)
        hw = _triple(args.halfwidth, "--halfwidth", float)
        grid = Grid.centered(n, hw)
        comps = tuple(int(c) for c in _floats(args.components, "--components")) if args.components else None
        if comps is None:
            comps = tuple(range(8)) if args.kind == "random_smooth" else (0,)
        spec = signals.SignalSpec(args.kind, args.sigma, comps, args.seed, args.beta, args.probe)
    except ValueError as exc:
        raise CliError(EXIT_PARAMS, str(exc)) from None
    f = signals.generate(spec, grid)
    _write(args.output, f)
    _echo(out, output=args.output, kind=spec.kind, sigma=float(spec.sigma), components=spec.components,
          grid_n=grid.n, grid_dx=grid.dx, bytes=oos1.HEADER_SIZE + f.comp.nbytes)
    return EXIT_OK


def _run_transform(args, out, inverse):
    f = _read(args.input)
    P = _params(args)
    opts = _options(args)
    t0 = time.perf_counter()
    fwd, back = (tr.oolct3d_inverse, tr.oolct3d) if inverse else (tr.oolct3d, tr.oolct3d_inverse)
    try:
        F = fwd(f, P, opts)
    except ValueError as exc:
        raise CliError(EXIT_PARAMS, str(exc)) from None
    elapsed = time.perf_counter() - t0
    _write(args.output, F)
    # reconstruct the input from the output to report the round trip
    restored = back(F, P, tr.TransformOptions(opts.phase_convention, opts.path, f.grid))
    e_in, e_out = tr.energy(f), tr.energy(F)
    _echo(out, output=args.output, operation="inverse" if inverse else "forward", path=opts.path,
          convention=opts.phase_convention, backend=kernels.backend(),
          grid_n=F.grid.n, input_dx=f.grid.dx, output_dx=F.grid.dx,
          energy_in=e_in, energy_out=e_out,
          energy_ratio=(e_out / e_in) if e_in else float("nan"),
          claimed_energy_constant=tr.claimed_energy_constant(P),
          roundtrip_rel_err=relative_error(restored, f), seconds=round(elapsed, 3))
    return EXIT_OK


def cmd_transform(args, out):
    return _run_transform(args, out, inverse=False)


def cmd_invert(args, out):
    return _run_transform(args, out, inverse=True)


def _reports(f, P, opts, args):
    checks = ["energy", "pitt", "log", "hy", "local"] if args.check == "all" else [args.check]
    # validate every requested parameter before doing any work
    try:
        if "pitt" in checks:
            ineq.pitt_constant(args.alpha)
        if "local" in checks:
            ineq.local_constant(args.alpha)
            if not args.mask_ball_r > 0:
                raise ValueError(f"--mask-ball-r must be positive, got {args.mask_ball_r}")
        if "hy" in checks:
            ineq.hy_constants(P, args.p)
    except ValueError as exc:
        raise CliError(EXIT_CHECK, str(exc)) from None
    if not np.any(f.comp):
        raise CliError(EXIT_CHECK, "inequality checks need a nonzero signal")
    reports = []
    for name in checks:
        if name == "energy":
            reports.append(ineq.energy_check(f, P, opts))
        elif name == "pitt":
            reports.append(ineq.pitt_check(f, P, args.alpha, opts))
        elif name == "log":
            reports.append(ineq.log_check(f, P, opts))
        elif name == "hy":
            reports.append(ineq.hy_check(f, P, args.p, opts))
        else:
            E = ball_mask(tr.output_grid(f.grid, P), args.mask_ball_r)
            if E.count == 0:
                raise CliError(EXIT_CHECK, f"ball of radius {args.mask_ball_r} contains no frequency voxel")
            reports.append(ineq.local_check(f, P, args.alpha, E, opts))
    return reports


def report_rows(reports, grid):
    rows = []
    for r in reports:
        rows.append([
            r.name, _fmt(r.alpha), _fmt(r.p), _fmt(r.q), _fmt(r.E_measure), r.convention,
            _fmt(r.lhs), _fmt(r.rhs), _fmt(r.constant), _fmt(r.slack), _fmt(r.holds),
            "x".join(str(v) for v in grid.n), "x".join(repr(v) for v in grid.halfwidth),
            _fmt(r.params.A1.b), _fmt(r.params.A2.b), _fmt(r.params.A3.b),
        ])
    return rows


def cmd_verify(args, out):
    f = _read(args.input)
    P = _params(args)
    opts = _options(args)
    reports = _reports(f, P, opts, args)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    writer.writerows(report_rows(reports, f.grid))
    text = buf.getvalue()
    if args.csv:
        try:
            with open(args.csv, "w", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            raise CliError(EXIT_FILE, f"cannot write {args.csv}: {exc.strerror or exc}") from None
        _echo(out, csv=args.csv, rows=len(reports))
    else:
        out.write(text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# selftest

def _check_table():
    worst = 0.0
    for a in range(8):
        for b in range(8):
            ea, eb = np.eye(8)[a], np.eye(8)[b]
            worst = max(worst, float(np.abs(algebra.mul(ea, eb) - algebra.cayley_dickson_mul(ea, eb)).max()))
    return worst == 0.0, f"max deviation from Cayley-Dickson {worst:g}"


def _check_pairs(rng):
    worst = 0.0
    for _ in range(200):
        a, b = algebra.Quaternion.random(rng), algebra.Quaternion.random(rng)
        for lhs, rhs in algebra.pair_identities(a, b):
            worst = max(worst, (lhs - rhs).norm() / max(1.0, rhs.norm()))
    return worst <= 1e-12, f"max residual {worst:.3g}"


def _check_parity(grid):
    worst = 0.0
    for seed in range(3):
        f = signals.random_smooth(grid, seed=seed)
        total = weighted_sq_norm(f)
        splits = [parity8(f).values(), even_odd_axis3(f), local_pair_split(f)]
        for parts in splits:
            worst = max(worst, abs(sum(weighted_sq_norm(p) for p in parts) - total) / total)
    return worst <= 1e-12, f"max relative energy defect {worst:.3g}"


def _generic_params():
    return tr.OLCTParamsTriple.build((1, 1, 1, 2, 0.5, -0.3), (0, -1, 1, 0.5, 0.2, 0.1),
                                     (2, 1, 1, 1, -0.4, 0.3))


def _check_paths(grid):
    f = signals.random_smooth(grid, seed=7)
    worst = 0.0
    for P in (tr.OLCTParamsTriple.fourier(), _generic_params()):
        ref = tr.oolct3d(f, P, tr.TransformOptions(path="direct"))
        for path in ("fft", "closed_form"):
            worst = max(worst, relative_error(tr.oolct3d(f, P, tr.TransformOptions(path=path)), ref))
    return worst <= 1e-8, f"max relative path disagreement {worst:.3g}"


def _check_roundtrip(grid):
    f = signals.random_smooth(grid, seed=11)
    P = _generic_params()
    err = relative_error(tr.oolct3d_inverse(tr.oolct3d(f, P), P), f)
    return err <= 1e-10, f"relative L2 error {err:.3g}"


def run_selftest(out, inject_fault=None):
    rng = np.random.default_rng(2024)
    grid = Grid.centered((16, 16, 16), 6.0)
    groups = [
        ("table", _check_table),
        ("pairs", lambda: _check_pairs(rng)),
        ("parity", lambda: _check_parity(grid)),
        ("paths", lambda: _check_paths(grid)),
        ("roundtrip", lambda: _check_roundtrip(grid)),
    ]
    failed = []
    t0 = time.perf_counter()
    for name, fn in groups:
        if inject_fault == name and name == "table":
            with algebra.corrupted_table():
                ok, detail = fn()
        else:
            ok, detail = fn()
        print(f"{name}: {'PASS' if ok else 'FAIL'} ({detail})", file=out)
        if not ok:
            failed.append(name)
    elapsed = time.perf_counter() - t0
    status = "PASS" if not failed else "FAIL " + ",".join(failed)
    print(f"selftest: {status} in {elapsed:.2f}s (backend {kernels.backend()})", file=out)
    return EXIT_OK if not failed else EXIT_SELFTEST


def cmd_selftest(args, out):
    return run_selftest(out, args.inject_fault)


# ---------------------------------------------------------------------------
# parser

def _add_params(p):
    for k in (1, 2, 3):
        p.add_argument(f"--A{k}", default=FOURIER, metavar="a,b,c,d,tau,eta",
                       help=f"axis-{k} parameters (default Fourier-like {FOURIER}); "
                            f"use --A{k}=-1,... for a leading minus sign")
    p.add_argument("--path", choices=tr.PATHS, default="direct")
    p.add_argument("--convention", choices=tr.CONVENTIONS, default=tr.UNITARY)


def build_parser():
    parser = argparse.ArgumentParser(prog="octolct", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write a test signal to an OOS1 file")
    g.add_argument("-o", "--output", required=True)
    g.add_argument("--kind", choices=signals.KINDS, default="gaussian")
    g.add_argument("--sigma", type=float, default=1.0)
    g.add_argument("--components", default=None, help="comma-separated component indices 0..7")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--beta", type=float, default=0.5, help="chirp rate for chirped_gaussian")
    g.add_argument("--probe", choices=sorted(signals.PROBES), default="x1",
                   help="monomial for parity_probe")
    g.add_argument("--n", default="32", help="samples per axis (one value or n1,n2,n3; even)")
    g.add_argument("--halfwidth", default="8.0", help="domain half-width (one value or three)")
    g.set_defaults(func=cmd_gen)

    for name, func, helptext in (("transform", cmd_transform, "forward O-OLCT of an OOS1 file"),
                                 ("invert", cmd_invert, "inverse O-OLCT of an OOS1 file")):
        t = sub.add_parser(name, help=helptext)
        t.add_argument("input")
        t.add_argument("output")
        _add_params(t)
        t.set_defaults(func=func)

    v = sub.add_parser("verify", help="evaluate uncertainty inequalities, emit CSV")
    v.add_argument("input")
    _add_params(v)
    v.add_argument("--check", choices=("pitt", "log", "hy", "local", "energy", "all"), default="all")
    v.add_argument("--alpha", type=float, default=0.5, help="exponent for pitt and local")
    v.add_argument("--p", type=float, default=1.5, help="Hausdorff-Young exponent")
    v.add_argument("--mask-ball-r", type=float, default=1.0, help="radius of the frequency ball E")
    v.add_argument("--csv", default=None, help="output path (default stdout)")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("selftest", help="run the embedded invariant suite")
    s.add_argument("--inject-fault", choices=("table",), default=None,
                   help="corrupt a component on purpose to check that the suite notices")
    s.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
