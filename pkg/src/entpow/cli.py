"""Command-line front end.

Subcommands: ``compute`` (EP/EPD of one gate or matrix file), ``sweep``
(parameter sweep of a gate family to CSV/JSON), ``scan-kak`` (canonical-cube
landscape scan), and ``verify`` (cross-validation suite).  Every output file
embeds a manifest of the resolved run; the data content is a pure function
of that manifest, so re-running it reproduces the file bit-for-bit.  Wall
time goes to stderr only, for exactly that reason.

Exit codes: 0 success, 1 validation failure, 2 verification failure.
"""

from __future__ import annotations

import argparse
import hashlib
import io
import json
import math
import sys
import time
from dataclasses import dataclass, field

import numpy as np

from . import __version__, engine, gates, montecarlo, verify
from .linalg import load_matrix

__all__ = ["main", "entry", "RunManifest"]

_GATE_PARAM_FLAGS = ("theta", "phi", "alpha", "beta", "delta", "b1", "b2", "b3", "d")

_SWEEP_PARAMS: dict[str, tuple[str, ...]] = {
    "cp": ("theta",),
    "cu": ("theta", "alpha", "beta"),
    "swap_alpha": ("alpha",),
    "iswap": ("theta", "phi"),
    "kak": ("b1", "b2", "b3"),
}


def _fmt(x) -> str:
    """All CLI numerics carry 12 significant digits."""
    return format(float(x), ".12g")


@dataclass
class RunManifest:
    """Echo of a resolved run; hashing covers everything except wall time."""

    command: list[str]
    seed: int | None
    samples: int | None
    version: str
    params: dict
    wall_time_s: float | None = field(default=None, compare=False)

    def payload(self) -> dict:
        return {
            "command": self.command,
            "seed": self.seed,
            "samples": self.samples,
            "version": self.version,
            "params": self.params,
        }

    def to_json(self) -> str:
        return json.dumps(self.payload(), sort_keys=True, separators=(",", ":"))

    def sha256(self) -> str:
        return hashlib.sha256(self.to_json().encode()).hexdigest()


def _emit_table(
    columns: list[str],
    rows: list[list],
    manifest: RunManifest,
    out: str | None,
    fmt: str,
) -> None:
    if fmt == "csv":
        buf = io.StringIO()
        buf.write(f"# entpow-manifest sha256={manifest.sha256()} {manifest.to_json()}\r\n")
        buf.write(",".join(columns) + "\r\n")
        for row in rows:
            buf.write(",".join(_fmt(v) if isinstance(v, (int, float, np.floating)) else str(v)
                               for v in row) + "\r\n")
        text = buf.getvalue()
    elif fmt == "json":
        doc = {
            "manifest": manifest.payload(),
            "manifest_sha256": manifest.sha256(),
            "columns": columns,
            "rows": [
                [float(v) if isinstance(v, (int, float, np.floating)) else v for v in row]
                for row in rows
            ],
        }
        text = json.dumps(doc, indent=1) + "\n"
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _collect_gate_params(args) -> dict:
    return {
        name: getattr(args, name)
        for name in _GATE_PARAM_FLAGS
        if getattr(args, name, None) is not None
    }


def _resolve_operator(args) -> tuple[str, np.ndarray, int, int, gates.GateSpec | None]:
    if args.file and args.gate:
        raise ValueError("give either a catalog gate or --file, not both")
    if args.file:
        u, (d1, d2) = load_matrix(args.file)
        return f"file:{args.file}", u, d1, d2, None
    if not args.gate:
        raise ValueError("nothing to compute: give a catalog gate name or --file PATH")
    params = _collect_gate_params(args)
    if "d" in params:
        params["d"] = int(params["d"])
    spec = gates.gate(args.gate, **params)
    u = gates.build(spec)
    return args.gate, u, spec.dims[0], spec.dims[1], spec


def cmd_compute(args) -> int:
    label, u, d1, d2, spec = _resolve_operator(args)
    requested = args.method
    results: dict[str, engine.EpEpdResult] = {}
    notes: list[str] = []

    want = {"closed", "dense", "cycle", "mc"} if requested == "all" else {requested}
    if "closed" in want:
        if spec is not None:
            results["closed-form"] = gates.closed_form_ep_epd(spec)
        elif requested == "closed":
            raise ValueError("closed form needs a catalog gate, not a matrix file")
    if "dense" in want:
        if d1 * d2 <= engine.DENSE_FOUR_COPY_LIMIT:
            results["exact-dense"] = engine.ep_epd(u, d1, d2, method="dense")
        elif requested == "dense":
            raise ValueError(
                f"dense 4-copy path needs d1*d2 <= {engine.DENSE_FOUR_COPY_LIMIT}; "
                "use --method cycle"
            )
        else:
            notes.append("dense 4-copy path skipped (d1*d2 too large)")
    if "cycle" in want:
        if d1 * d2 <= engine.CYCLE_PATH_LIMIT:
            results["exact-cycle"] = engine.ep_epd(u, d1, d2, method="cycle")
        elif requested == "cycle":
            raise ValueError(f"cycle path needs d1*d2 <= {engine.CYCLE_PATH_LIMIT}")
        else:
            notes.append("cycle path skipped (d1*d2 too large)")
    mc_est = None
    if "mc" in want:
        cfg = montecarlo.SamplerConfig(seed=args.seed, samples=args.samples, dims=(d1, d2))
        mc_est = montecarlo.estimate_ep_epd(u, cfg)
        results["monte-carlo"] = mc_est.as_result()
    if not results:
        raise ValueError("no applicable method")

    sharp = {k: v for k, v in results.items() if k != "monte-carlo"}
    cross_ep = cross_epd = None
    if len(sharp) > 1:
        eps = [r.ep for r in sharp.values()]
        epds = [r.epd for r in sharp.values()]
        cross_ep = max(eps) - min(eps)
        cross_epd = max(epds) - min(epds)

    manifest = RunManifest(
        command=["compute", label],
        seed=args.seed if mc_est else None,
        samples=args.samples if mc_est else None,
        version=__version__,
        params={"dims": [d1, d2], **({} if spec is None else spec.params)},
    )

    if args.format == "json":
        doc = {
            "manifest": manifest.payload(),
            "manifest_sha256": manifest.sha256(),
            "gate": label,
            "dims": [d1, d2],
            "results": {
                name: {"ep": r.ep, "epd": r.epd, "stderr": r.stderr}
                for name, r in results.items()
            },
            "cross_method": {"ep": cross_ep, "epd": cross_epd},
            "notes": notes,
        }
        text = json.dumps(doc, indent=1) + "\n"
    else:
        lines = [f"gate: {label}  dims: {d1}x{d2}"]
        lines.append(f"{'method':13s} {'ep':>18s} {'epd':>18s} {'eta':>18s} {'stderr':>12s}")
        for name, r in results.items():
            eta = _fmt(r.epd / r.ep) if r.ep > 1e-12 else "-"
            lines.append(
                f"{name:13s} {_fmt(r.ep):>18s} {_fmt(r.epd):>18s} {eta:>18s} {_fmt(r.stderr):>12s}"
            )
        if cross_ep is not None:
            lines.append(
                f"cross-method deltas (exact/closed): ep {_fmt(cross_ep)}, epd {_fmt(cross_epd)}"
            )
        if mc_est is not None and sharp:
            ref = next(iter(sharp.values()))
            pull_ep = abs(mc_est.mean - ref.ep) / mc_est.se_mean
            pull_epd = abs(mc_est.std - ref.epd) / mc_est.se_std
            lines.append(
                f"monte-carlo pulls vs {next(iter(sharp))}: "
                f"ep {_fmt(pull_ep)} se, epd {_fmt(pull_epd)} se"
            )
        lines.extend(f"note: {n}" for n in notes)
        text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_sweep(args) -> int:
    family = args.family
    if family not in _SWEEP_PARAMS:
        raise ValueError(
            f"family {family!r} has no 1-2 parameter closed form to sweep; "
            f"choose from {sorted(_SWEEP_PARAMS)}"
        )
    param = args.param or _SWEEP_PARAMS[family][0]
    if param not in _SWEEP_PARAMS[family]:
        raise ValueError(f"{family}: sweep parameter must be one of {_SWEEP_PARAMS[family]}")
    if args.steps < 2:
        raise ValueError("need at least 2 steps")
    fixed = _collect_gate_params(args)
    fixed.pop(param, None)
    grid = np.linspace(args.start, args.stop, args.steps)
    rows = []
    for value in grid:
        spec = gates.gate(family, **{param: float(value)}, **fixed)
        closed = gates.closed_form_ep_epd(spec)
        u = gates.build(spec)
        d1, d2 = spec.dims
        exact = engine.ep_epd(u, d1, d2, method="auto")
        rows.append([float(value), closed.ep, closed.epd, exact.ep, exact.epd])
    manifest = RunManifest(
        command=["sweep", family],
        seed=None,
        samples=None,
        version=__version__,
        params={"param": param, "start": args.start, "stop": args.stop,
                "steps": args.steps, "fixed": fixed},
    )
    _emit_table([param, "ep_closed", "epd_closed", "ep_engine", "epd_engine"],
                rows, manifest, args.out, args.format)
    return 0


def cmd_scan_kak(args) -> int:
    if args.resolution < 2:
        raise ValueError("resolution must be >= 2")
    scan = gates.kak_scan(args.resolution)
    ep, epd = scan["ep"], scan["epd"]
    ep_bound = 2.0 / 9.0
    epd_bound = 1.0 / (3.0 * math.sqrt(5.0))
    if float(ep.max()) > ep_bound + 1e-9 or float(epd.max()) > epd_bound + 1e-9:
        sys.stderr.write(
            f"scan-kak: landscape bound exceeded (max ep {_fmt(ep.max())}, "
            f"max epd {_fmt(epd.max())})\n"
        )
        return 2
    max_ep_mask = ep >= ep.max() - 1e-9
    max_epd_mask = epd >= epd.max() - 1e-9
    rows = [
        [scan["b1"][i], scan["b2"][i], scan["b3"][i], ep[i], epd[i],
         int(max_ep_mask[i]), int(max_epd_mask[i])]
        for i in range(ep.size)
    ]
    manifest = RunManifest(
        command=["scan-kak"],
        seed=None,
        samples=None,
        version=__version__,
        params={"resolution": args.resolution},
    )
    _emit_table(["b1", "b2", "b3", "ep", "epd", "is_max_ep", "is_max_epd"],
                rows, manifest, args.out, args.format)
    return 0


def cmd_verify(args) -> int:
    t0 = time.perf_counter()
    lines, timings = verify.run(args.level, seed=args.seed)
    elapsed = time.perf_counter() - t0
    header = f"{'criterion':14s} {'check':42s} {'expected':>16s} {'computed':>16s} {'delta':>10s} {'tol':>8s} {'status':>7s}"
    print(header)
    print("-" * len(header))
    failures = 0
    for line in lines:
        status = "ok" if line.passed else "FAIL"
        failures += 0 if line.passed else 1
        print(
            f"{line.criterion:14s} {line.name:42s} {_fmt(line.expected):>16s} "
            f"{_fmt(line.computed):>16s} {line.delta:>10.2e} {line.tol:>8.0e} {status:>7s}"
        )
    print("-" * len(header))
    for crit, dt in timings.items():
        print(f"{crit:14s} {dt:6.2f}s")
    verdict = "PASS" if failures == 0 else f"FAIL ({failures} checks)"
    print(f"verify {args.level}: {verdict} in {elapsed:.1f}s")
    return 0 if failures == 0 else 2


class _Parser(argparse.ArgumentParser):
    """Argument errors are validation failures: exit 1, not argparse's 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def _build_parser() -> _Parser:
    parser = _Parser(prog="entpow", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--version", action="version", version=f"entpow {__version__}")
    sub = parser.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    def add_common(p, methods=False, table=True):
        p.add_argument("--seed", type=int, default=verify.DEFAULT_SEED,
                       help="seed for Monte Carlo / randomized checks")
        p.add_argument("--samples", type=int, default=100_000,
                       help="Monte Carlo sample count")
        if methods:
            p.add_argument("--method", choices=["closed", "dense", "cycle", "mc", "all"],
                           default="all", help="which evaluation route(s) to run")
        p.add_argument("--out", default=None, help="output file (default stdout)")
        if table:
            p.add_argument("--format", choices=["csv", "json"], default="csv",
                           help="tabular output format")

    pc = sub.add_parser("compute", help="EP/EPD of one catalog gate or matrix file")
    pc.add_argument("gate", nargs="?", default=None,
                    help=f"catalog gate family: {', '.join(sorted(gates.FAMILIES))}")
    pc.add_argument("--file", default=None, help="matrix file (JSON with dims/re/im)")
    for name in _GATE_PARAM_FLAGS:
        pc.add_argument(f"--{name}", type=float, default=None,
                        help=f"gate parameter {name}")
    add_common(pc, methods=True, table=False)
    pc.add_argument("--format", choices=["text", "json"], default="text",
                    help="report format")
    pc.set_defaults(func=cmd_compute)

    ps = sub.add_parser("sweep", help="sweep one family parameter, closed form vs engine")
    ps.add_argument("family", help=f"one of {sorted(_SWEEP_PARAMS)}")
    ps.add_argument("--param", default=None, help="parameter to sweep (family default)")
    ps.add_argument("--start", type=float, required=True)
    ps.add_argument("--stop", type=float, required=True)
    ps.add_argument("--steps", type=int, required=True)
    for name in _GATE_PARAM_FLAGS:
        ps.add_argument(f"--{name}", type=float, default=None,
                        help=f"fixed value for parameter {name}")
    add_common(ps)
    ps.set_defaults(func=cmd_sweep)

    pk = sub.add_parser("scan-kak", help="scan the canonical parameter cube [0, pi/4]^3")
    pk.add_argument("--resolution", type=int, default=21, help="grid points per axis")
    add_common(pk)
    pk.set_defaults(func=cmd_scan_kak)

    pv = sub.add_parser("verify", help="run the cross-validation suite")
    pv.add_argument("level", nargs="?", choices=["quick", "full"], default="quick")
    add_common(pv)
    pv.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    t0 = time.perf_counter()
    try:
        rc = args.func(args)
    except (ValueError, OSError, ZeroDivisionError) as exc:
        sys.stderr.write(f"entpow {args.cmd}: error: {exc}\n")
        return 1
    sys.stderr.write(f"entpow {args.cmd}: completed in {time.perf_counter() - t0:.2f}s\n")
    return rc


def entry() -> None:
    sys.exit(main())
