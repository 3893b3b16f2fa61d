"""Command-line interface.

Subcommands: sample, wce, energy, expected, scan, strength, prop7. Every
output is a pure function of the flags and the master seed. Exit codes:
0 success, 1 usage error, 2 numerical failure.

An optional config file (--config PATH, flat key=value lines mirroring the
long flag names) supplies defaults; explicit flags override it.
"""

import argparse
import json
import sys

from . import __version__
from .closedforms import (
    expected_energy_elliptic,
    expected_energy_spherical,
    expected_log_energy_elliptic,
    expected_wce2_harmonic_quadrature,
    expected_wce2_spherical,
    proposition7_lhs,
    proposition7_limit,
)
from .energy import log_energy, riesz_energy
from .harness import (
    fit_strength,
    make_sampler,
    read_scan_csv,
    resolve_threads,
    run_scan,
    write_scan_csv,
)
from .sphere import load_configuration, save_configuration
from .specfun import polyspace_dim
from .wce import SobolevOrder, wce_squared


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _parse_int_list(text):
    try:
        return [int(v) for v in text.split(",") if v]
    except ValueError as exc:
        raise UsageError(f"bad integer list {text!r}") from exc


def _parse_float_list(text):
    try:
        return [float(v) for v in text.split(",") if v]
    except ValueError as exc:
        raise UsageError(f"bad float list {text!r}") from exc


def _parse_s_grid(text):
    """Either a comma list '1.5,2.5' or an inclusive range 'a:b:step'."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise UsageError(f"range grid must be start:stop:step, got {text!r}")
        try:
            start, stop, step = (float(p) for p in parts)
        except ValueError as exc:
            raise UsageError(f"bad range grid {text!r}") from exc
        if step <= 0:
            raise UsageError("grid step must be positive")
        grid = []
        v = start
        while v <= stop + 1e-9:
            grid.append(round(v, 12))
            v += step
        return grid
    return _parse_float_list(text)


def _load_config(path):
    pairs = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise UsageError(f"config line without '=': {line!r}")
            key, value = line.split("=", 1)
            pairs[key.strip()] = value.strip()
    return pairs


def _merge_negative_values(argv):
    """Join '--flag -0.5,...' into '--flag=-0.5,...' so argparse does not
    mistake negative numbers for option names."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else None
        if (
            tok.startswith("--") and "=" not in tok and nxt is not None
            and nxt.startswith("-") and len(nxt) > 1
            and any(ch.isdigit() for ch in nxt[1:3])
        ):
            out.append(f"{tok}={nxt}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def _inject_config(argv):
    """Turn config-file pairs into flags placed before the user's flags."""
    if "--config" not in argv:
        return argv
    idx = argv.index("--config")
    if idx + 1 >= len(argv):
        raise UsageError("--config needs a path")
    path = argv[idx + 1]
    rest = argv[:idx] + argv[idx + 2:]
    if not rest:
        raise UsageError("--config requires a subcommand")
    pairs = _load_config(path)
    injected = []
    for key, value in pairs.items():
        flag = "--" + key.replace("_", "-")
        if value.lower() in ("true", "false"):
            if value.lower() == "true":
                injected.append(flag)
        else:
            injected.extend([flag, value])
    return [rest[0]] + injected + rest[1:]


def _build_parser():
    parser = _Parser(prog="sphereqmc", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="draw one configuration and write it as CSV")
    p.add_argument("--ensemble", required=True,
                   choices=["uniform", "jittered", "harmonic", "spherical", "elliptic"])
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--n", type=int, help="point count (non-harmonic ensembles)")
    p.add_argument("--L", type=int, help="degree (harmonic ensemble)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)

    p = sub.add_parser("wce", help="worst-case error of a stored configuration")
    p.add_argument("--points", required=True)
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--d", type=int, help="sphere dimension (default: from the file)")

    p = sub.add_parser("energy", help="Riesz or logarithmic energy of a configuration")
    p.add_argument("--points", required=True)
    p.add_argument("--s", type=float, default=0.0, help="Riesz exponent; 0 = logarithmic")

    p = sub.add_parser("expected", help="closed-form expected values")
    p.add_argument("--ensemble", required=True, choices=["spherical", "elliptic", "harmonic"])
    p.add_argument("--quantity", choices=["wce2", "energy"], default="wce2")
    p.add_argument("--n", type=int)
    p.add_argument("--L", type=int)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--s", type=float)

    p = sub.add_parser("scan", help="Monte Carlo scan of mean wce^2 over N and s")
    p.add_argument("--ensemble", required=True,
                   choices=["uniform", "jittered", "harmonic", "spherical", "elliptic"])
    p.add_argument("--n", help="comma list of point counts (or degrees for harmonic)")
    p.add_argument("--L", help="comma list of degrees (harmonic alias for --n)")
    p.add_argument("--s", required=True, help="comma list or start:stop:step grid")
    p.add_argument("--reps", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--threads", type=int)
    p.add_argument("--out", required=True)

    p = sub.add_parser("strength", help="per-s slopes and strength from a scan CSV")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--tol", type=float, default=0.15)
    p.add_argument("--json", dest="json_out", help="also write the fit as JSON")

    p = sub.add_parser("prop7", help="Jacobi-integral limit versus its Bessel form")
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--a", required=True, help="comma list of exponents in (-1, d)")
    p.add_argument("--L", type=int, default=200)

    return parser


def _cmd_sample(args):
    if args.ensemble == "harmonic":
        if args.L is None:
            raise UsageError("harmonic sampling needs --L")
        size = args.L
    else:
        if args.n is None:
            raise UsageError(f"{args.ensemble} sampling needs --n")
        size = args.n
    sampler = make_sampler(args.ensemble, args.d, size)
    cfg = sampler(args.seed)
    save_configuration(cfg, args.out)
    n = polyspace_dim(args.d, size) if args.ensemble == "harmonic" else size
    print(f"wrote {n} points to {args.out}")
    return 0


def _cmd_wce(args):
    cfg = load_configuration(args.points)
    if args.d is not None and args.d != cfg.d:
        raise UsageError(f"--d {args.d} disagrees with the file (d = {cfg.d})")
    so = SobolevOrder(d=cfg.d, s=args.s)
    w2 = wce_squared(cfg, so)
    print(json.dumps({
        "wce2": w2, "wce": w2 ** 0.5, "s": args.s, "N": cfg.n_points,
    }))
    return 0


def _cmd_energy(args):
    cfg = load_configuration(args.points)
    value = log_energy(cfg) if args.s == 0.0 else riesz_energy(cfg, args.s)
    print(json.dumps({"energy": value, "s": args.s, "N": cfg.n_points}))
    return 0


def _cmd_expected(args):
    if args.ensemble == "spherical":
        if args.n is None or (args.quantity == "wce2" and args.s is None):
            raise UsageError("spherical expectations need --n (and --s for wce2)")
        ev = (expected_wce2_spherical(args.n, args.s) if args.quantity == "wce2"
              else expected_energy_spherical(args.n, args.s))
    elif args.ensemble == "elliptic":
        if args.quantity != "energy":
            raise UsageError("only expected energies are available for elliptic zeros")
        if args.n is None or args.s is None:
            raise UsageError("elliptic expectations need --n and --s")
        ev = (expected_log_energy_elliptic(args.n) if args.s == 0.0
              else expected_energy_elliptic(args.n, args.s))
    else:
        if args.quantity != "wce2":
            raise UsageError("only the expected wce2 is available for the harmonic ensemble")
        if args.L is None or args.s is None:
            raise UsageError("harmonic expectations need --L and --s")
        ev = expected_wce2_harmonic_quadrature(args.d, args.L, args.s)
    out = {
        "ensemble": args.ensemble, "quantity": args.quantity,
        "value": ev.value, "kind": ev.kind, "error_term": ev.error_term,
    }
    if args.n is not None:
        out["N"] = args.n
    if args.L is not None:
        out["L"] = args.L
    if args.s is not None:
        out["s"] = args.s
    print(json.dumps(out))
    return 0


def _cmd_scan(args):
    sizes_text = args.n if args.n is not None else args.L
    if sizes_text is None:
        raise UsageError("scan needs --n (or --L for harmonic)")
    sizes = _parse_int_list(sizes_text)
    s_grid = _parse_s_grid(args.s)
    result = run_scan(
        args.ensemble, sizes, s_grid, args.reps, args.seed,
        d=args.d, threads=resolve_threads(args.threads),
    )
    write_scan_csv(result, args.out)
    meta = dict(result.metadata)
    meta.update({"sizes": sizes, "s_grid": s_grid, "reps": args.reps})
    with open(args.out + ".meta.json", "w") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(f"wrote {len(result.rows)} rows to {args.out}")
    return 0


def _cmd_strength(args):
    result = read_scan_csv(args.infile)
    fit = fit_strength(result, args.d, tol=args.tol)
    print(f"# strength report (rule: |slope + 2s/d| <= {fit.tol}; "
          "slope-flattening estimator, not a theorem)")
    print("s,slope,stderr,target,within_tol")
    for f in fit.slopes:
        ok = abs(f.slope - f.target) <= fit.tol
        print(f"{f.s:g},{f.slope:.6f},{f.stderr:.6f},{f.target:g},{int(ok)}")
    print(f"# estimated strength s* = {fit.s_star if fit.s_star is not None else 'none'}")
    if args.json_out:
        payload = {
            "tol": fit.tol,
            "s_star": fit.s_star,
            "slopes": [
                {"s": f.s, "slope": f.slope, "stderr": f.stderr, "target": f.target}
                for f in fit.slopes
            ],
        }
        with open(args.json_out, "w") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return 0


def _cmd_prop7(args):
    a_values = _parse_float_list(args.a)
    print("a,lhs,limit,rel_diff")
    for a in a_values:
        lhs = proposition7_lhs(args.d, a, args.L)
        rhs = proposition7_limit(args.d, a)
        print(f"{a:g},{lhs:.12g},{rhs:.12g},{abs(lhs - rhs) / abs(rhs):.3e}")
    return 0


_COMMANDS = {
    "sample": _cmd_sample,
    "wce": _cmd_wce,
    "energy": _cmd_energy,
    "expected": _cmd_expected,
    "scan": _cmd_scan,
    "strength": _cmd_strength,
    "prop7": _cmd_prop7,
}


def cli_main(argv):
    """Entry point used by the console script; returns the exit code."""
    try:
        argv = _merge_negative_values(_inject_config(list(argv)))
        args = _build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    try:
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, ArithmeticError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(cli_main(sys.argv[1:]))


if __name__ == "__main__":
    main()
