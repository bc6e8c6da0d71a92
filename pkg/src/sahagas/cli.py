"""Command-line front end.

Commands: ``state``, ``inflection``, ``hugoniot`` and ``isentrope``. Output
is CSV (default) or JSON on standard output, diagnostics on standard error.

Exit codes: 0 success, 2 domain error, 3 numerical failure, 64 usage error.
Gas presets are looked up in the directory named by ``SAHAGAS_PRESET_DIR``
(files ``<name>.json`` with keys ``a2``, ``kappa``, ``Ti``) before the
built-in ones.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from . import htl
from .characteristics import inflection_f, is_gn_sufficient, trace_inflection_locus
from .hugoniot import (
    TracingError,
    count_G_sign_changes,
    entropy_jump,
    kinetic_roots,
    reference_state,
    solve_shock_state,
    trace_thermo_locus,
)
from .numerics import BracketError, ConvergenceError, logit
from .rarefaction import sample_isentrope
from .thermo import (
    HYDROGEN,
    DomainError,
    GasModel,
    entropy_alphaT,
    state_from_alphaT,
    state_from_pT,
    state_from_rhoT,
)

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_NUMERICAL = 3
EXIT_USAGE = 64

PRESET_ENV = "SAHAGAS_PRESET_DIR"
BUILTIN_PRESETS = {"hydrogen": HYDROGEN}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit with status 2
        raise UsageError(message)


@dataclass(frozen=True)
class RunConfig:
    gas: GasModel
    model: str
    output: str


def _load_json_gas(path: Path) -> dict[str, float]:
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read gas config {str(path)!r}: {exc}") from exc
    if not isinstance(data, dict):
        raise UsageError(f"gas config {str(path)!r} must be a JSON object")
    unknown = set(data) - {"a2", "kappa", "Ti"}
    if unknown:
        raise UsageError(f"unknown gas config keys: {sorted(unknown)}")
    return {k: float(v) for k, v in data.items()}


def resolve_gas(name: str, config: str | None = None, a2: float | None = None,
                kappa: float | None = None, Ti: float | None = None) -> GasModel:
    """Preset, then config file, then explicit flags; later sources override earlier ones."""
    values: dict[str, float] | None = None
    preset_dir = os.environ.get(PRESET_ENV)
    if preset_dir:
        candidate = Path(preset_dir) / f"{name}.json"
        if candidate.is_file():
            values = _load_json_gas(candidate)
    if values is None:
        if name not in BUILTIN_PRESETS:
            raise UsageError(f"unknown gas preset {name!r}")
        base = BUILTIN_PRESETS[name]
        values = {"a2": base.a2, "kappa": base.kappa, "Ti": base.Ti}
    if config is not None:
        values.update(_load_json_gas(Path(config)))
    for key, val in (("a2", a2), ("kappa", kappa), ("Ti", Ti)):
        if val is not None:
            values[key] = val
    missing = {"a2", "kappa", "Ti"} - set(values)
    if missing:
        raise UsageError(f"gas constants missing: {sorted(missing)}")
    return GasModel(**values)


def fmt(x: Any) -> str:
    """Format a value for output; floats use 17 significant digits."""
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".17g")
    return str(x)


def _json_value(x: Any) -> Any:
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if math.isfinite(x) else fmt(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    return x


def write_table(out, columns: Sequence[str], rows: Sequence[Sequence[Any]]) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([fmt(x) for x in r])


def _records(columns: Sequence[str], rows) -> list[dict[str, Any]]:
    return [{c: _json_value(x) for c, x in zip(columns, r)} for r in rows]


def _emit(cfg: RunConfig, out, tables: list[tuple[str, Sequence[str], list]],
          meta: dict[str, Any] | None = None) -> None:
    if cfg.output == "json":
        doc: dict[str, Any] = {}
        if meta:
            doc["meta"] = {k: _json_value(v) for k, v in meta.items()}
        for name, cols, rows in tables:
            doc[name] = _records(cols, rows)
        out.write(json.dumps(doc, indent=1) + "\n")
        return
    for i, (_, cols, rows) in enumerate(tables):
        if i:
            out.write("\n")
        write_table(out, cols, rows)


# -- commands --------------------------------------------------------------

STATE_COLUMNS = ["alpha", "log_alpha", "T", "p", "rho", "v", "e", "H", "eta", "lam",
                 "gn_certified", "f"]
HTL_STATE_COLUMNS = ["alpha", "T", "p", "rho", "v", "e", "eta_htl", "pseudo_entropy", "lam"]


def cmd_state(cfg: RunConfig, args, out, err=None) -> int:
    given = [k for k in ("p", "rho", "alpha") if getattr(args, k) is not None]
    if args.T is None or len(given) != 1:
        raise UsageError("state needs --T and exactly one of --p, --rho, --alpha")
    key = given[0]
    val = getattr(args, key)
    g = cfg.gas
    if cfg.model == "htl":
        if key == "p":
            s = htl.htl_state_from_pT(g, val, args.T)
        elif key == "alpha":
            s = htl.htl_state_from_alphaT(g, val, args.T)
        else:
            raise UsageError("the HTL model accepts --p or --alpha")
        row = [s.alpha, s.T, s.p, s.rho, s.v, s.e, s.eta_htl, s.pseudo_entropy, s.lam]
        _emit(cfg, out, [("state", HTL_STATE_COLUMNS, [row])])
        return EXIT_OK
    if key == "p":
        s = state_from_pT(g, val, args.T)
    elif key == "rho":
        s = state_from_rhoT(g, val, args.T)
    else:
        s = state_from_alphaT(g, val, args.T)
    f = inflection_f(g, s.alpha, s.T) if s.alpha > 0 else None
    gn = is_gn_sufficient(g, s.alpha, s.T)
    row = [s.alpha, s.log_alpha, s.T, s.p, s.rho, s.v, s.e, s.H, s.eta, s.lam, gn, f]
    _emit(cfg, out, [("state", STATE_COLUMNS, [row])])
    return EXIT_OK


INFLECTION_COLUMNS = ["T", "alpha_left", "alpha_right", "f_residual"]


def cmd_inflection(cfg: RunConfig, args, out, err=None) -> int:
    if cfg.model != "exact":
        raise UsageError("the HTL model has no inflection locus")
    if not (0 < args.tmin < args.tmax):
        raise DomainError("need 0 < tmin < tmax")
    temps = np.geomspace(args.tmin, args.tmax, args.samples)
    left, right = trace_inflection_locus(cfg.gas, (args.tmin, args.tmax), n=args.samples)
    rows = []
    for T in temps:
        T = float(T)
        al = left.alpha[left.T == T]
        ar = right.alpha[right.T == T]
        res = list(left.residual[left.T == T]) + list(right.residual[right.T == T])
        rows.append([T, al[0] if al.size else None, ar[0] if ar.size else None,
                     max(abs(r) for r in res) if res else None])
    _emit(cfg, out, [("inflection", INFLECTION_COLUMNS, rows)])
    return EXIT_OK


HUGONIOT_COLUMNS = ["alpha", "T", "p", "v", "F_residual"]
INTERSECTION_COLUMNS = ["kind", "alpha", "T", "u", "p", "m", "s", "dS"]


def _exact_hugoniot(cfg: RunConfig, args, out) -> int:
    g = cfg.gas
    if args.p0 is not None:
        if args.alpha0 is not None:
            raise UsageError("give --alpha0 or --p0, not both")
        s0 = state_from_pT(g, args.p0, args.T0)
        ref = reference_state(g, None, args.T0, args.u0, log_alpha0=s0.log_alpha)
    else:
        ref = reference_state(g, args.alpha0, args.T0, args.u0)
    lo = ref.s0 - args.span_down
    hi = max(args.s_max, ref.s0 + 1.0)
    curve = trace_thermo_locus(g, ref, logit_range=(lo, hi), n=args.samples)
    rows = [[a, T, p, v, r] for a, T, p, v, r in
            zip(curve.alpha, curve.T, curve.p, curve.v, curve.residual)]
    tables = [("locus", HUGONIOT_COLUMNS, rows)]
    meta = {"alpha0": ref.alpha0, "T0": ref.T0, "p0": ref.p0, "u0": ref.u0}
    if args.u is not None:
        if args.u == ref.u0:
            tables.append(("intersection", INTERSECTION_COLUMNS,
                           [["contact", ref.alpha0, ref.T0, ref.u0, ref.p0, 0.0, ref.u0, 0.0]]))
        else:
            sol = solve_shock_state(g, ref, args.u)
            dS, _, _ = entropy_jump(g, sol)
            f = sol.front
            tables.append(("intersection", INTERSECTION_COLUMNS,
                           [["shock", f.alpha, f.T, sol.u, f.p, sol.m, sol.s, dS]]))
            meta["G_sign_changes"] = count_G_sign_changes(g, curve, args.u)
    _emit(cfg, out, tables, meta)
    return EXIT_OK


def _htl_hugoniot(cfg: RunConfig, args, out) -> int:
    g = cfg.gas
    if args.alpha0 is None:
        raise UsageError("the HTL hugoniot needs --alpha0")
    ref = htl.htl_reference(g, args.alpha0, args.T0, args.u0)
    tmin = args.tmin if args.tmin is not None else 1e-3 * args.T0
    tmax = args.tmax if args.tmax is not None else 1e3 * args.T0
    curve = htl.htl_trace_thermo_locus(g, ref, (tmin, tmax), n=args.samples)
    rows = [[a, T, p, v, r] for a, T, p, v, r in
            zip(curve.alpha, curve.T, curve.p, curve.v, curve.residual)]
    tables = [("locus", HUGONIOT_COLUMNS, rows)]
    if args.u is not None:
        sh = htl.htl_shock_state(g, ref, args.u)
        kind = "contact" if sh.m == 0.0 else "shock"
        tables.append(("intersection", ["kind", "alpha", "T", "u", "p", "m"],
                       [[kind, sh.alpha, sh.T, sh.u, sh.p, sh.m]]))
    _emit(cfg, out, tables, {"alpha0": ref.alpha0, "T0": ref.T0, "p0": ref.p0})
    return EXIT_OK


def cmd_hugoniot(cfg: RunConfig, args, out, err=None) -> int:
    if args.T0 is None or (args.alpha0 is None and args.p0 is None):
        raise UsageError("hugoniot needs --T0 and one of --alpha0, --p0")
    if cfg.model == "htl":
        return _htl_hugoniot(cfg, args, out)
    return _exact_hugoniot(cfg, args, out)


ISENTROPE_COLUMNS = ["alpha", "T", "p", "u_plus", "u_minus", "eta_drift"]


def cmd_isentrope(cfg: RunConfig, args, out, err=None) -> int:
    g = cfg.gas
    anchor = None
    if cfg.model == "htl":
        if args.alpha0 is None or args.T0 is None:
            raise UsageError("the HTL isentrope needs --alpha0 and --T0")
        ref = htl.htl_reference(g, args.alpha0, args.T0, args.u0)
        tmin = args.tmin if args.tmin is not None else 1e-2 * args.T0
        tmax = args.tmax if args.tmax is not None else 1e2 * args.T0
        k = g.a * math.sqrt(15.0 * (1.0 + ref.alpha0))
        rows = []
        for T in np.geomspace(tmin, tmax, args.samples):
            du = k * (math.sqrt(T) - math.sqrt(ref.T0))
            rows.append([ref.alpha0, T, htl.htl_pressure(g, ref.alpha0, T),
                         ref.u0 - du, ref.u0 + du, 0.0])
        _emit(cfg, out, [("isentrope", ISENTROPE_COLUMNS, rows)],
              {"eta0": htl.htl_entropy(ref.alpha0)})
        return EXIT_OK
    if args.eta0 is not None:
        if args.alpha0 is not None or args.T0 is not None:
            raise UsageError("give --eta0 or --alpha0/--T0, not both")
        eta0 = args.eta0
    else:
        if args.alpha0 is None or args.T0 is None:
            raise UsageError("isentrope needs --eta0 or both --alpha0 and --T0")
        eta0 = entropy_alphaT(g, args.alpha0, args.T0)
        anchor = args.alpha0
    iso = sample_isentrope(g, eta0, n=args.samples, alpha_min=args.alpha_min, gap=args.gap,
                           anchor_alpha=anchor, u0=args.u0)
    rows = [list(r) for r in zip(iso.alpha, iso.T, iso.p, iso.u_plus, iso.u_minus,
                                 iso.eta_drift)]
    _emit(cfg, out, [("isentrope", ISENTROPE_COLUMNS, rows)],
          {"eta0": eta0, "alpha_inf": iso.alpha_inf})
    if cfg.output == "csv":
        print(f"alpha_inf={fmt(iso.alpha_inf)} eta0={fmt(eta0)}", file=err or sys.stderr)
    return EXIT_OK


# -- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--gas", default="hydrogen", help="gas preset name")
    common.add_argument("--config", help="JSON file with a2, kappa, Ti")
    common.add_argument("--a2", type=float, help="R/m in J/(kg K)")
    common.add_argument("--kappa", type=float, help="Saha constant")
    common.add_argument("--Ti", type=float, help="ionization temperature in K")
    common.add_argument("--model", choices=["exact", "htl"], default="exact")
    common.add_argument("--format", dest="output", choices=["csv", "json"], default="csv")

    p = _Parser(prog="sahagas", description="Saha-gas thermodynamics and wave curves.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("state", parents=[common], help="single thermodynamic state")
    s.add_argument("--T", type=float)
    s.add_argument("--p", type=float)
    s.add_argument("--rho", type=float)
    s.add_argument("--alpha", type=float)

    s = sub.add_parser("inflection", parents=[common], help="inflection locus samples")
    s.add_argument("--tmin", type=float, default=10.0)
    s.add_argument("--tmax", type=float, default=2800.0)
    s.add_argument("--samples", type=int, default=50)

    s = sub.add_parser("hugoniot", parents=[common], help="Hugoniot locus and shock state")
    s.add_argument("--alpha0", type=float)
    s.add_argument("--p0", type=float)
    s.add_argument("--T0", type=float)
    s.add_argument("--u0", type=float, default=0.0)
    s.add_argument("--u", type=float)
    s.add_argument("--samples", type=int, default=200)
    s.add_argument("--span-down", type=float, default=20.0,
                   help="logit units traced below the reference")
    s.add_argument("--s-max", type=float, default=14.0,
                   help="largest logit(alpha) traced")
    s.add_argument("--tmin", type=float, help="HTL model: smallest temperature")
    s.add_argument("--tmax", type=float, help="HTL model: largest temperature")

    s = sub.add_parser("isentrope", parents=[common], help="acoustic integral curve")
    s.add_argument("--eta0", type=float)
    s.add_argument("--alpha0", type=float)
    s.add_argument("--T0", type=float)
    s.add_argument("--u0", type=float, default=0.0)
    s.add_argument("--samples", type=int, default=200)
    s.add_argument("--alpha-min", type=float, default=1e-12)
    s.add_argument("--gap", type=float, default=1e-6,
                   help="stop at alpha_inf * (1 - gap)")
    s.add_argument("--tmin", type=float, help="HTL model: smallest temperature")
    s.add_argument("--tmax", type=float, help="HTL model: largest temperature")
    return p


COMMANDS = {"state": cmd_state, "inflection": cmd_inflection,
            "hugoniot": cmd_hugoniot, "isentrope": cmd_isentrope}


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise UsageError("a command is required: " + ", ".join(COMMANDS))
        gas = resolve_gas(args.gas, args.config, args.a2, args.kappa, args.Ti)
        cfg = RunConfig(gas, args.model, args.output)
        buf = io.StringIO()
        code = COMMANDS[args.command](cfg, args, buf, err)
        out.write(buf.getvalue())
        return code
    except UsageError as exc:
        print(f"usage error: {exc}", file=err)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"domain error: {exc}", file=err)
        return EXIT_DOMAIN
    except (TracingError, ConvergenceError, BracketError, RuntimeError) as exc:
        print(f"numerical failure: {exc}", file=err)
        return EXIT_NUMERICAL
    except ValueError as exc:
        print(f"domain error: {exc}", file=err)
        return EXIT_DOMAIN


def main_entry() -> None:
    sys.exit(main())
