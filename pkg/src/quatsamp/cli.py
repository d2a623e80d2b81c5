"""``quatsamp`` command line: run, verify, synth.

Exit codes: 0 success, 1 configuration error, 2 failed check.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .checks import report_json, verify
from .harness import ConfigError, load_config, run, write_outputs
from .qft import QuatGrid2D, synthesize_grid
from .spectra import KINDS, gen_spectrum

EXIT_OK, EXIT_CONFIG, EXIT_CHECK = 0, 1, 2


def _cmd_run(args) -> int:
    try:
        cfg = load_config(args.config)
    except ConfigError as err:
        print(f"config error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    result = run(cfg)
    out = write_outputs(cfg, result)
    for r in result.rows:
        print(f"N={r['N']:<4d} rel_l2={r['rel_l2']:.3e} rel_linf={r['rel_linf']:.3e}")
    failed = [name for name, ok in result.checks.items() if not ok]
    for name in failed:
        print(f"check failed: {name}", file=sys.stderr)
    print(f"outputs written to {out}")
    return EXIT_CHECK if failed else EXIT_OK


def _cmd_verify(args) -> int:
    report = verify()
    for c in report["checks"]:
        status = "PASS" if c["passed"] else "FAIL"
        kind = "gating" if c["gating"] else "info"
        print(f"{status} [{kind}] {c['name']}: residual={c['residual']:.3e} tol={c['tolerance']:.0e}")
    s = report["summary"]
    print(f"{s['gating_total'] - s['gating_failed']}/{s['gating_total']} gating checks passed")
    if args.json:
        Path(args.json).write_text(report_json(report))
    return EXIT_OK if s["passed"] else EXIT_CHECK


def _cmd_synth(args) -> int:
    if args.kind not in KINDS:
        print(f"config error: --kind must be one of {list(KINDS)}", file=sys.stderr)
        return EXIT_CONFIG
    if not args.sigma > 0 or args.grid < 1 or args.seed < 0:
        print("config error: need --sigma > 0, --grid >= 1 and --seed >= 0", file=sys.stderr)
        return EXIT_CONFIG
    F = gen_spectrum(args.kind, args.seed, args.sigma)
    step = args.spacing if args.spacing else math.pi / args.sigma
    origin = -0.5 * (args.grid - 1) * step
    x = origin + step * np.arange(args.grid)
    grid = QuatGrid2D(synthesize_grid(F, x, x), (step, step), (origin, origin))
    grid.save(args.out)
    print(f"wrote {args.grid}x{args.grid} grid to {args.out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="quatsamp", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"quatsamp {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="run a configured reconstruction experiment")
    r.add_argument("--config", required=True, help="JSON config file")
    r.set_defaults(func=_cmd_run)

    v = sub.add_parser("verify", help="run the verification suite")
    v.add_argument("--json", help="write the machine-readable report here")
    v.set_defaults(func=_cmd_verify)

    s = sub.add_parser("synth", help="sample a seeded test signal to a QG2D file")
    s.add_argument("--kind", required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--sigma", type=float, default=math.pi)
    s.add_argument("--grid", type=int, default=64)
    s.add_argument("--spacing", type=float, default=None,
                   help="sample spacing (default pi/sigma)")
    s.add_argument("--out", required=True)
    s.set_defaults(func=_cmd_synth)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
