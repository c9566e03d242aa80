"""Configuration-driven command-line front end.

Commands
    transform          compute a phase-space field for configured signals
    quantize           build the operator for a symbol and apply it
    verify             run named identity suites with PASS/FAIL lines
    demo-interference  heatmaps of a two-Gaussian field for several
                       smoothing parameters (illustrative only)

Exit codes: 0 ok, 1 verification failure, 2 config error, 3 numerical
error.  Heavy imports happen after argument parsing so --threads can cap
the BLAS/FFT pools before numpy loads.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_CONFIG = 2
EXIT_NUMERIC = 3


def _load_config(path):
    from .errors import ConfigError
    if path is None:
        raise ConfigError("missing --config PATH")
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from None


def _grid_from_config(cfg):
    from .errors import ConfigError
    from .signals import Grid
    g = cfg.get("grid", {})
    try:
        dim = int(g.get("dim", 1))
        n = int(g.get("n", 256 if dim == 1 else 64))
        length = float(g.get("len", 16.0 if dim == 1 else 12.0))
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad grid config: {exc}") from None
    return Grid(dim, n, length)


def _signals_from_config(cfg, dim):
    from . import signals
    from .errors import ConfigError
    raw = cfg.get("signals")
    if not raw or not isinstance(raw, list):
        raise ConfigError("config needs a non-empty 'signals' list")
    if len(raw) > 2:
        raise ConfigError("at most two signals (auto-distribution when one)")
    sigs = [signals.from_config(s, dim) for s in raw]
    if len(sigs) == 1:
        sigs = [sigs[0], sigs[0]]
    return sigs


def _symbol_from_config(cfg, grid):
    import numpy as np

    from . import arrayio, quantize
    from .errors import ConfigError
    raw = cfg.get("symbol")
    if raw is None:
        raise ConfigError("config needs a 'symbol' entry")
    if "file" in raw:
        values = arrayio.read_bin(raw["file"])
        return quantize.symbol_from_samples(values, grid)
    kind = raw.get("kind")
    lam = float(raw.get("lambda", 1.0))

    def gpart(p):
        return np.exp(-np.pi * np.sum(p * p, axis=-1) / lam) + 0j

    if kind == "gaussian":
        return quantize.symbol_from_parts(gpart, gpart, 0.0, grid)
    if kind == "chirped-gaussian":
        rate = float(raw.get("rate", 0.5))
        return quantize.symbol_from_parts(gpart, gpart, rate, grid)
    if kind == "constant":
        def one(p):
            return np.ones(p.shape[:-1], dtype=complex)
        return quantize.symbol_from_parts(one, one, 0.0, grid)
    raise ConfigError(f"unknown symbol kind {raw.get('kind')!r}")


def _output_target(cfg, args):
    out = cfg.get("output", {}) if isinstance(cfg, dict) else {}
    path = args.out or out.get("path")
    fmt = args.format or out.get("format", "csv")
    if fmt not in ("csv", "bin", "pgm"):
        from .errors import ConfigError
        raise ConfigError(f"unknown output format {fmt!r}")
    return path, fmt


def _write_field(field, path, fmt):
    from . import arrayio
    from .errors import ConfigError
    if path is None:
        raise ConfigError("missing output path (--out or output.path)")
    if fmt == "bin":
        arrayio.write_bin(path, field.values)
    elif fmt == "pgm":
        vals = field.values
        if vals.ndim != 2:
            raise ConfigError("pgm output needs a d=1 field")
        arrayio.write_pgm(path, vals)
    else:
        arrayio.write_csv_field(path, field.values, field.xgrid.mesh(),
                                field.wgrid.mesh())


def cmd_transform(args) -> int:
    from . import blockmat
    from .mwd import mwd
    cfg = _load_config(args.config)
    grid = _grid_from_config(cfg)
    A = blockmat.from_config(cfg.get("matrix", {"preset": "wigner"}), grid.dim)
    f, g = _signals_from_config(cfg, grid.dim)
    path, fmt = _output_target(cfg, args)
    field = mwd(A, f, g, grid)
    _write_field(field, path, fmt)
    return EXIT_OK


def cmd_quantize(args) -> int:
    import numpy as np

    from . import arrayio, blockmat
    from .quantize import apply, kernel_from_symbol
    from .signals import sample
    cfg = _load_config(args.config)
    grid = _grid_from_config(cfg)
    A = blockmat.from_config(cfg.get("matrix", {"preset": "wigner"}), grid.dim)
    f, _ = _signals_from_config(cfg, grid.dim)
    sigma = _symbol_from_config(cfg, grid)
    op = kernel_from_symbol(sigma, A)
    if args.check_adjoint:
        dev = float(np.max(np.abs(op.values - op.values.conj().T)))
        print(f"max |K - K^H| = {dev:.6e}")
    out = apply(op, f)
    fin = sample(f, grid)
    denom = float(np.sqrt(np.sum(np.abs(fin) ** 2)))
    if denom > 0:
        rel = float(np.sqrt(np.sum(np.abs(out.samples - fin) ** 2))) / denom
        print(f"relative L2 change vs input: {rel:.6e}")
    path, fmt = _output_target(cfg, args)
    if path is not None:
        if fmt == "bin":
            arrayio.write_bin(path, out.samples)
        else:
            arrayio.write_csv_signal(path, grid.axis() if grid.dim == 1
                                     else grid.mesh().reshape(-1, grid.dim)[:, 0],
                                     out.samples)
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import SUITES, run_suite
    name = args.suite
    if name != "all" and name not in SUITES:
        print(f"error: unknown suite {name!r} (choose from "
              f"{', '.join(SUITES + ('all',))})", file=sys.stderr)
        return EXIT_CONFIG
    det_break = 1.01 if args.debug_break_det else 1.0
    results = run_suite(name, seed=args.seed, scale=args.scale,
                        det_break=det_break)
    failed = 0
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status}  {r.name:48s} max_err={r.err:.3e}  tol={r.tol:.1e}")
        failed += 0 if r.passed else 1
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return EXIT_OK if failed == 0 else EXIT_VERIFY_FAIL


def cmd_demo_interference(args) -> int:
    import numpy as np

    from . import arrayio
    from .blockmat import preset
    from .mwd import marginals, mwd
    from .signals import Grid, gaussian, lincomb, norm_l2, tf_shift
    cfg = _load_config(args.config) if args.config else {}
    grid = _grid_from_config(cfg)
    if grid.dim != 1:
        from .errors import ConfigError
        raise ConfigError("interference demo is one-dimensional")
    sep = float(cfg.get("separation", 2.0))
    f = lincomb([1.0, 1.0],
                [tf_shift(gaussian(1.0), [-sep], [-1.0]),
                 tf_shift(gaussian(1.0), [sep], [1.0])])
    prefix = args.out or cfg.get("output", {}).get("path", "interference")
    energy_ref = norm_l2(f, grid) ** 2
    for mu in (0.0, 0.3, 0.6):
        field = mwd(preset("cohen", 1, M=mu), f, grid=grid)
        path = f"{prefix}_mu{mu:g}.pgm"
        arrayio.write_pgm(path, field.values)
        energy = float(np.sum(marginals(field)["time"]).real * grid.step)
        print(f"wrote {path}; total energy {energy:.9f} "
              f"(signal norm^2 {energy_ref:.9f})")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="mwdkit",
        description="Matrix-parametrized time-frequency fields, Cohen-class "
                    "smoothing and phase-space operators.")
    p.add_argument("--threads", type=int, default=0,
                   help="cap BLAS/FFT threads (0 = library default)")
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("transform", help="compute a phase-space field")
    t.add_argument("--config", required=True)
    t.add_argument("--out")
    t.add_argument("--format", choices=("csv", "bin", "pgm"))
    t.set_defaults(func=cmd_transform)

    q = sub.add_parser("quantize", help="apply the operator of a symbol")
    q.add_argument("--config", required=True)
    q.add_argument("--out")
    q.add_argument("--format", choices=("csv", "bin"))
    q.add_argument("--check-adjoint", action="store_true",
                   help="print max |K - K^H| for the built kernel")
    q.set_defaults(func=cmd_quantize)

    v = sub.add_parser("verify", help="run identity verification suites")
    v.add_argument("suite", nargs="?", default="all")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--scale", choices=("fast", "full"), default="fast")
    v.add_argument("--debug-break-det", action="store_true",
                   help=argparse.SUPPRESS)
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("demo-interference",
                       help="heatmaps of a two-component field")
    d.add_argument("--config")
    d.add_argument("--out")
    d.set_defaults(func=cmd_demo_interference)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.threads and args.threads > 0:
        for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS",
                    "MKL_NUM_THREADS"):
            os.environ[var] = str(args.threads)
    from .errors import ConfigError, MwdError
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except MwdError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
