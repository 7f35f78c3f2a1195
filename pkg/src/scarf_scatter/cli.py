"""Command-line front end: ``scarf-scatter <command> ...``.

Exit codes: 0 success, 1 usage, 2 bad input, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import io
import json
import math
import os
import sys
import tempfile

import numpy as np

from . import __version__
from .analytic_scattering import amplitudes, energy_scan
from .errors import InputError, ScarfError
from .invariance_suite import default_grid, run_report, safe_grid
from .numeric_oracle import DEFAULT_BOX, DEFAULT_SLABS, SampledPotential, sample_scarf, solve
from .scarf_model import ScarfParameters, from_parametrization, parse_real
from .spectral_analysis import bound_states, enumerate_spectrum, find_spectral_singularities

SCHEMA_LINE = "# scarf-scatter v1 schema"
SCHEMA = "scarf-scatter v1"
CSV_HEADER = "E,T_fwd,T_rev,R_left_fwd,R_right_fwd,R_left_rev,R_right_rev,singular_flag"

SQRT2, SQRT5 = math.sqrt(2.0), math.sqrt(5.0)
FIGURE1 = {
    "a": (SQRT2, SQRT5),
    "b": (-SQRT2, -SQRT5),
    "c": (-SQRT2, SQRT5),
    "d": (SQRT2, -SQRT2),
}
FIGURE1_PEAKS = {
    "a": "T_fwd (dark) peaks at E = 2, 5; T_rev (faint) none",
    "b": "T_rev (faint) peaks at E = 2, 5; T_fwd (dark) none",
    "c": "T_rev (faint) peak at E = 2; T_fwd (dark) peak at E = 5",
    "d": "T_fwd = T_rev, single shared peak at E = 2",
}
FIGURE1_RANGE = (0.25, 7.0, 1000)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_params(sp: argparse.ArgumentParser) -> None:
    g = sp.add_argument_group("potential (either m/n/alpha/beta, A/B components, or --params)")
    g.add_argument("--m", type=int)
    g.add_argument("--n", type=int)
    g.add_argument("--alpha", help="real value; sqrt:X and -sqrt:X accepted")
    g.add_argument("--beta", help="real value; sqrt:X and -sqrt:X accepted")
    g.add_argument("--A-re", dest="A_re")
    g.add_argument("--A-im", dest="A_im")
    g.add_argument("--B-re", dest="B_re")
    g.add_argument("--B-im", dest="B_im")
    g.add_argument("--params", metavar="JSON", help="parameter file with the fixed JSON keys")


def _params(args) -> ScarfParameters:
    para = [args.m, args.n, args.alpha, args.beta]
    direct = [args.A_re, args.A_im, args.B_re, args.B_im]
    groups = sum([any(v is not None for v in para), any(v is not None for v in direct), args.params is not None])
    if groups != 1:
        raise UsageError("give exactly one of: --m/--n/--alpha/--beta, --A-re/--A-im/--B-re/--B-im, --params")
    if args.params is not None:
        try:
            with open(args.params) as fh:
                data = json.load(fh)
        except (OSError, ValueError) as exc:
            raise InputError(f"cannot read parameter file: {exc}") from None
        return ScarfParameters.from_json(data)
    if any(v is not None for v in para):
        if any(v is None for v in para):
            raise UsageError("--m, --n, --alpha and --beta must all be given")
        return from_parametrization(args.m, args.n, parse_real(args.alpha), parse_real(args.beta))
    vals = [0.0 if v is None else parse_real(v) for v in direct]
    return ScarfParameters.direct(complex(vals[0], vals[1]), complex(vals[2], vals[3]))


def _fmt(x: float) -> str:
    return repr(float(x))


def scan_csv(p: ScarfParameters, energies) -> str:
    buf = io.StringIO()
    buf.write(SCHEMA_LINE + "\n" + CSV_HEADER + "\n")
    for o in energy_scan(p, energies):
        row = [o.E, o.T_fwd, o.T_rev, o.R_left_fwd, o.R_right_fwd, o.R_left_rev, o.R_right_rev]
        buf.write(",".join(_fmt(v) for v in row) + f",{int(o.singular)}\n")
    return buf.getvalue()


def scan_energies(e_min: float, e_max: float, steps: int, spacing: str = "linear") -> np.ndarray:
    if not (0 < e_min < e_max):
        raise InputError("need 0 < emin < emax")
    if steps < 2:
        raise InputError("steps must be at least 2")
    if e_min < 1e-16:
        raise InputError("emin below k_min^2")
    if spacing == "log":
        return np.geomspace(e_min, e_max, steps)
    return np.linspace(e_min, e_max, steps)


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(out))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".scarf-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, out)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def cmd_scan(args) -> int:
    p = _params(args)
    energies = scan_energies(args.emin, args.emax, args.steps, args.spacing)
    _emit(scan_csv(p, energies), args.out)
    return 0


def cmd_figure1(args) -> int:
    alpha, beta = FIGURE1[args.case]
    p = from_parametrization(0, 0, alpha, beta)
    e_min, e_max, steps = FIGURE1_RANGE
    print(f"figure 1({args.case}): alpha={alpha:.8f} beta={beta:.8f} m=n=0; expected: {FIGURE1_PEAKS[args.case]}", file=sys.stderr)
    _emit(scan_csv(p, scan_energies(e_min, e_max, steps)), args.out)
    return 0


def cmd_ss(args) -> int:
    if args.m is None or args.n is None or args.alpha is None or args.beta is None:
        raise UsageError("ss needs --m, --n, --alpha, --beta")
    alpha, beta = parse_real(args.alpha), parse_real(args.beta)
    records = find_spectral_singularities(args.m, args.n, alpha, beta)
    payload = {
        "schema": SCHEMA,
        "parameters": from_parametrization(args.m, args.n, alpha, beta).to_json(),
        "spectral_singularities": [r.to_json() for r in records],
    }
    _emit(_json(payload), args.out)
    return 0


def cmd_bound_states(args) -> int:
    if args.beta is not None:
        # mixed case: alpha = i gamma, real beta
        if args.delta is not None:
            raise UsageError("give either --delta or --beta, not both")
        spectrum = enumerate_spectrum(args.m, args.n, 1j * args.gamma, parse_real(args.beta))
        payload = {"schema": SCHEMA, **spectrum.to_json()}
    else:
        if args.delta is None:
            raise UsageError("bound-states needs --delta (or --beta for the mixed case)")
        records = bound_states(args.m, args.n, args.gamma, args.delta)
        payload = {"schema": SCHEMA, "bound_states": [r.to_json() for r in records]}
    _emit(_json(payload), args.out)
    return 0


def _k_grid(args) -> list[float]:
    return default_grid(args.points, args.kmin, args.kmax)


def cmd_invariance(args) -> int:
    if args.csv is not None:
        source = SampledPotential.from_csv(args.csv)
        grid = _k_grid(args)
    else:
        source = _params(args)
        grid = safe_grid(source, _k_grid(args))
    report = run_report(source, grid)
    _emit(report.table() + "\n" if args.table else report.dumps() + "\n", args.out)
    return 0


def cmd_oracle_check(args) -> int:
    if args.case is not None:
        if any(v is not None for v in (args.m, args.n, args.alpha, args.beta, args.A_re, args.A_im, args.B_re, args.B_im, args.params)):
            raise UsageError("--case excludes other parameter flags")
        p = from_parametrization(0, 0, *FIGURE1[args.case])
    else:
        p = _params(args)
    ks = args.k if args.k else list(np.linspace(0.3, 3.0, 10))
    v = sample_scarf(p, -args.box, args.box, args.slabs)
    rows, worst = [], 0.0
    for k in ks:
        a = amplitudes(p, k)
        o = solve(v, k)
        dev = {
            "t": abs(a.t - o.t_left) / abs(a.t),
            "r_left": abs(a.r_left - o.r_left) / abs(a.r_left) if a.r_left else abs(o.r_left),
            "r_right": abs(a.r_right - o.r_right) / abs(a.r_right) if a.r_right else abs(o.r_right),
        }
        worst = max(worst, *dev.values())
        rows.append({"k": float(k), **dev})
    payload = {
        "schema": SCHEMA,
        "parameters": p.to_json(),
        "slab_count": args.slabs,
        "box": [-args.box, args.box],
        "max_relative_deviation": worst,
        "threshold": args.threshold,
        "pass": worst <= args.threshold,
        "points": rows,
    }
    _emit(_json(payload), args.out)
    return 0 if worst <= args.threshold else 3


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="scarf-scatter", description="Scattering from the complex Scarf II potential.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("scan", help="T and R in both channels over an energy grid (CSV)")
    _add_params(sp)
    sp.add_argument("--emin", type=float, required=True)
    sp.add_argument("--emax", type=float, required=True)
    sp.add_argument("--steps", type=int, required=True)
    sp.add_argument("--spacing", choices=("linear", "log"), default="linear")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_scan)

    sp = sub.add_parser("figure1", help="scan data for one panel of the four-panel transmitivity figure")
    sp.add_argument("case", choices=sorted(FIGURE1))
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_figure1)

    sp = sub.add_parser("ss", help="spectral singularities for real alpha, beta (JSON)")
    sp.add_argument("--m", type=int)
    sp.add_argument("--n", type=int)
    sp.add_argument("--alpha")
    sp.add_argument("--beta")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_ss)

    sp = sub.add_parser("bound-states", help="bound-state branches for alpha = i gamma, beta = i delta (JSON)")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--gamma", type=float, required=True)
    sp.add_argument("--delta", type=float)
    sp.add_argument("--beta", help="real beta instead of delta: mixed bound state / singularity case")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_bound_states)

    sp = sub.add_parser("invariance", help="(in)variance report over a k-grid (JSON or --table)")
    _add_params(sp)
    sp.add_argument("--csv", help="sampled potential with columns x_mid,V_re,V_im")
    sp.add_argument("--kmin", type=float, default=0.2)
    sp.add_argument("--kmax", type=float, default=3.0)
    sp.add_argument("--points", type=int, default=50)
    sp.add_argument("--table", action="store_true")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_invariance)

    sp = sub.add_parser("oracle-check", help="closed form vs transfer-matrix solver (JSON)")
    _add_params(sp)
    sp.add_argument("--case", choices=sorted(FIGURE1))
    sp.add_argument("--k", type=float, action="append")
    sp.add_argument("--slabs", type=int, default=DEFAULT_SLABS)
    sp.add_argument("--box", type=float, default=DEFAULT_BOX[1], help="half-width of the box")
    sp.add_argument("--threshold", type=float, default=5e-3)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_oracle_check)
    return parser


def _glue_negative_roots(argv: list[str]) -> list[str]:
    """Turn ``--beta -sqrt:2`` into ``--beta=-sqrt:2``; argparse reads the bare form as a flag."""
    out = []
    for tok in argv:
        if out and tok.startswith("-sqrt:") and out[-1].startswith("--") and "=" not in out[-1]:
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = parser.parse_args(_glue_negative_roots(argv))
        if args.command == "invariance" and args.csv is not None:
            if any(getattr(args, f) is not None for f in ("m", "n", "alpha", "beta", "A_re", "A_im", "B_re", "B_im", "params")):
                raise UsageError("--csv excludes parameter flags")
        return args.func(args)
    except UsageError as exc:
        print(f"scarf-scatter: usage error: {exc}", file=sys.stderr)
        return 1
    except ScarfError as exc:
        print(f"scarf-scatter: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except BrokenPipeError:
        # downstream closed early (e.g. piped into head)
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return 0


if __name__ == "__main__":
    sys.exit(main())
