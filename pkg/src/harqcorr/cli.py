"""Command-line front end: single queries, parameter sweeps, weight tables and designs.

Configuration comes from a YAML or JSON file (``--config``) with keys

    K, rho, delta, sigma2, powers | power_db | gamma + theta, rate_bits,
    truncation_N, mc_samples, seed, methods, workers, jobs, escalate, sweep

and any command-line flag overrides the file.  ``sweep`` is a mapping with
``variable`` (one of P_T_dB, rho, R, K) and either ``values`` or
``start``/``stop``/``step``.

Exit codes: 0 success, 1 selftest failure, 2 usage or configuration error,
3 numerical failure, 4 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields, replace
from typing import List, Optional, Sequence

import numpy as np
import yaml

from . import __version__
from .channel import ChannelSpec, PowerProfile, db_to_linear, linear_to_db
from .design import DesignTarget, allocate_equal_powers, max_rate, required_power_product
from .exceptions import DomainError, HarqError
from .negmult import build_table
from .outage import METHODS, OutageQuery, evaluate, outage_exact, outage_mc_escalating

EXIT_OK, EXIT_SELFTEST, EXIT_USAGE, EXIT_NUMERICAL, EXIT_IO = 0, 1, 2, 3, 4
SWEEP_VARIABLES = ("P_T_dB", "rho", "R", "K")
FLOAT_FORMAT = "%.12g"


class ConfigError(ValueError):
    """Invalid or inconsistent configuration; the message names the offending key."""


# -- configuration -------------------------------------------------------------

@dataclass(frozen=True)
class Settings:
    K: int = 4
    rho: float = 0.0
    delta: float = 1.0
    sigma2: object = 1.0
    powers: Optional[tuple] = None
    power_db: Optional[float] = 10.0
    gamma: Optional[float] = None
    theta: Optional[tuple] = None
    rate_bits: float = 2.0
    truncation_N: int = 3
    mc_samples: int = 10**6
    seed: int = 0
    methods: tuple = ("exact", "asymptotic")
    workers: int = 1
    jobs: int = 1
    escalate: bool = False


@dataclass(frozen=True)
class SweepConfig:
    base: Settings
    variable: Optional[str] = None
    values: tuple = ()
    timing: bool = False

    def __post_init__(self):
        if self.variable is None:
            return
        if self.variable not in SWEEP_VARIABLES:
            raise ConfigError(f"sweep.variable must be one of {SWEEP_VARIABLES}, got {self.variable!r}")
        if not self.values:
            raise ConfigError("sweep.values is empty; give at least one value")
        b = self.base
        if self.variable == "P_T_dB" and b.powers is not None:
            raise ConfigError("sweeping P_T_dB conflicts with an explicit 'powers' list; drop 'powers'")
        if self.variable == "P_T_dB" and b.gamma is not None:
            raise ConfigError("sweeping P_T_dB sets gamma; drop the fixed 'gamma' key")
        if self.variable == "K" and (
            b.powers is not None or b.theta is not None or not np.isscalar(b.sigma2)
        ):
            raise ConfigError("sweeping K needs scalar sigma2 and a scalar power (power_db), not per-round lists")

    @property
    def points(self) -> tuple:
        return self.values if self.variable else (None,)


_INT_KEYS = {"K", "truncation_N", "mc_samples", "seed", "workers", "jobs"}
_FLOAT_KEYS = {"rho", "delta", "power_db", "gamma", "rate_bits"}


def _coerce(key, value):
    try:
        if key in _INT_KEYS:
            f = float(value)
            if f != int(f):
                raise ValueError
            return int(f)
        if key in _FLOAT_KEYS:
            return None if value is None else float(value)
        if key in ("powers", "theta"):
            return None if value is None else tuple(float(v) for v in _as_list(value))
        if key == "sigma2":
            vals = [float(v) for v in _as_list(value)]
            return vals[0] if len(vals) == 1 else tuple(vals)
        if key == "methods":
            return tuple(str(m).strip() for m in _as_list(value))
        if key == "escalate":
            return bool(value)
    except (TypeError, ValueError):
        raise ConfigError(f"'{key}' has an invalid value {value!r}") from None
    raise ConfigError(f"unknown configuration key {key!r}")


def _as_list(value):
    if isinstance(value, str):
        return [v for v in value.replace(",", " ").split() if v]
    if isinstance(value, (list, tuple)):
        return list(value)
    return [value]


def _sweep_values(spec) -> tuple:
    if "values" in spec:
        return tuple(_as_list(spec["values"]))
    try:
        start, stop, step = float(spec["start"]), float(spec["stop"]), float(spec["step"])
    except KeyError as exc:
        raise ConfigError(f"sweep needs 'values' or start/stop/step (missing {exc.args[0]!r})") from None
    if step <= 0 or stop < start:
        raise ConfigError("sweep needs step > 0 and stop >= start")
    n = int(math.floor((stop - start) / step + 1e-9)) + 1
    return tuple(round(start + i * step, 12) for i in range(n))


def validate(s: Settings) -> Settings:
    """Check ranges; messages say which key to fix."""
    if s.K < 1:
        raise ConfigError(f"K must be >= 1, got {s.K}")
    if not abs(s.rho) < 1:
        raise ConfigError(f"rho must satisfy |rho| < 1, got {s.rho}")
    if s.delta < 0:
        raise ConfigError(f"delta must be >= 0, got {s.delta}")
    sig = (s.sigma2,) if np.isscalar(s.sigma2) else s.sigma2
    if any(not v > 0 for v in sig):
        raise ConfigError(f"sigma2 entries must be > 0, got {s.sigma2}")
    if not np.isscalar(s.sigma2) and len(s.sigma2) != s.K:
        raise ConfigError(f"sigma2 has {len(s.sigma2)} entries but K={s.K}")
    if s.powers is not None:
        if len(s.powers) != s.K:
            raise ConfigError(f"powers has {len(s.powers)} entries but K={s.K}")
        if any(not p > 0 for p in s.powers):
            raise ConfigError(f"powers must all be > 0 (linear scale), got {s.powers}")
    if s.gamma is not None and s.theta is None and s.powers is None:
        raise ConfigError("'gamma' needs a matching 'theta' list")
    if s.theta is not None:
        if len(s.theta) != s.K:
            raise ConfigError(f"theta has {len(s.theta)} entries but K={s.K}")
        if any(not t > 0 for t in s.theta):
            raise ConfigError(f"theta entries must be > 0, got {s.theta}")
    if s.gamma is not None and not s.gamma > 0:
        raise ConfigError(f"gamma must be > 0, got {s.gamma}")
    if s.powers is None and s.gamma is None and s.power_db is None:
        raise ConfigError("no transmit power given; set power_db, powers, or gamma + theta")
    if not s.rate_bits > 0:
        raise ConfigError(f"rate_bits must be > 0, got {s.rate_bits}")
    if s.truncation_N < 0:
        raise ConfigError(f"truncation_N must be >= 0, got {s.truncation_N}")
    if s.mc_samples < 1 or s.workers < 1 or s.jobs < 1:
        raise ConfigError("mc_samples, workers and jobs must be >= 1")
    bad = [m for m in s.methods if m not in METHODS]
    if bad or not s.methods:
        raise ConfigError(f"methods must be a nonempty subset of {METHODS}, got {list(s.methods)}")
    return s


def load_config_file(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise OSError(f"cannot read config {path}: {exc.strerror}") from exc
    try:
        data = json.loads(text) if path.endswith(".json") else yaml.safe_load(text)
    except (json.JSONDecodeError, yaml.YAMLError) as exc:
        raise ConfigError(f"cannot parse config {path}: {exc}") from None
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigError(f"config {path} must hold a key-value mapping at top level")
    return data


def build_config(raw: dict, overrides: dict, timing: bool = False) -> SweepConfig:
    """Merge file values with flag overrides into a validated SweepConfig."""
    merged = {**raw, **{k: v for k, v in overrides.items() if v is not None}}
    sweep = merged.pop("sweep", None)
    known = {f.name for f in fields(Settings)}
    kw = {}
    for key, value in merged.items():
        if key not in known:
            raise ConfigError(f"unknown configuration key {key!r}; known keys: {sorted(known | {'sweep'})}")
        kw[key] = _coerce(key, value)
    # explicit powers or gamma take precedence over the default power_db
    if ("powers" in kw or "gamma" in kw) and "power_db" not in kw:
        kw["power_db"] = None
    base = validate(Settings(**kw))
    if not sweep:
        return SweepConfig(base, timing=timing)
    if not isinstance(sweep, dict) or "variable" not in sweep:
        raise ConfigError("sweep must be a mapping with a 'variable' key")
    variable = sweep["variable"]
    raw_values = _sweep_values(sweep)
    try:
        cast = int if variable == "K" else float
        values = tuple(cast(v) for v in raw_values)
    except (TypeError, ValueError):
        raise ConfigError(f"sweep.values must be numbers, got {list(raw_values)}") from None
    return SweepConfig(base, variable=variable, values=values, timing=timing)


# -- sweeps --------------------------------------------------------------------

def _at_point(base: Settings, variable: Optional[str], value) -> Settings:
    if variable is None:
        return base
    if variable == "P_T_dB":
        if base.theta is not None:
            return replace(base, gamma=float(db_to_linear(value)), power_db=None)
        return replace(base, power_db=float(value))
    if variable == "rho":
        return replace(base, rho=float(value))
    if variable == "R":
        return replace(base, rate_bits=float(value))
    return replace(base, K=int(value))


def channel_of(s: Settings) -> ChannelSpec:
    if np.isscalar(s.sigma2):
        return ChannelSpec.uniform(s.K, s.rho, s.delta, s.sigma2)
    return ChannelSpec(s.rho, s.delta, s.sigma2)


def power_of(s: Settings) -> PowerProfile:
    if s.powers is not None:
        return PowerProfile(s.powers)
    if s.theta is not None:
        gamma = s.gamma if s.gamma is not None else float(db_to_linear(s.power_db))
        return PowerProfile.split(gamma, s.theta)
    return PowerProfile.from_db(s.K, s.power_db)


def query_of(s: Settings, method: str) -> OutageQuery:
    return OutageQuery(
        channel_of(s), power_of(s), s.rate_bits, method=method, truncation=s.truncation_N,
        samples=s.mc_samples, seed=s.seed, workers=s.workers,
    )


def _fixed_columns(s: Settings, variable: Optional[str]) -> dict:
    cols = {
        "K": s.K,
        "rho": s.rho,
        "delta": s.delta,
        "sigma2": s.sigma2,
        "P_T_dB": None if s.power_db is None else s.power_db,
        "powers": power_of(s).powers,
        "R": s.rate_bits,
        "N": s.truncation_N,
        "mc_samples": s.mc_samples,
        "seed": s.seed,
    }
    if s.power_db is None:
        del cols["P_T_dB"]
    cols.pop(variable, None)
    return cols


def _evaluate_point(cfg: SweepConfig, value) -> dict:
    s = _at_point(cfg.base, cfg.variable, value)
    row = {} if cfg.variable is None else {cfg.variable: value}
    row.update(_fixed_columns(s, cfg.variable))
    failures = []
    for m in s.methods:
        t0 = time.perf_counter()
        try:
            q = query_of(s, m)
            res = outage_mc_escalating(q) if (m == "mc" and s.escalate) else evaluate(q)
            row[f"p_{m}"], row[f"err_{m}"] = res.p, res.error
        except (HarqError, ValueError, ArithmeticError, MemoryError) as exc:
            # recorded, not raised: one bad point must not sink the sweep
            row[f"p_{m}"], row[f"err_{m}"] = None, None
            failures.append(f"{m}: {type(exc).__name__}: {exc}")
        if cfg.timing:
            row[f"time_{m}"] = time.perf_counter() - t0
    row["status"] = "; ".join(failures) if failures else "ok"
    return row


def run_sweep(cfg: SweepConfig) -> List[dict]:
    """One row per sweep point, in sweep order, with a (p, err) pair per method.

    Every point reuses ``seed`` (common random numbers), so a single-point
    sweep reproduces a direct evaluator call exactly.
    """
    points = cfg.points
    if cfg.base.jobs == 1 or len(points) == 1:
        return [_evaluate_point(cfg, v) for v in points]
    with ThreadPoolExecutor(max_workers=cfg.base.jobs) as pool:
        # map yields in submission order whatever the completion order
        return list(pool.map(lambda v: _evaluate_point(cfg, v), points))


# -- output --------------------------------------------------------------------

def _fmt_number(v):
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v)).lower()
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return FLOAT_FORMAT % float(v)


def _csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, str):
        return v
    if isinstance(v, (tuple, list, np.ndarray)):
        return ";".join(_fmt_number(x) for x in v)
    return _fmt_number(v)


def _json_value(v):
    if v is None or isinstance(v, (str, bool)):
        return v
    if isinstance(v, (tuple, list, np.ndarray)):
        return [_json_value(x) for x in v]
    if isinstance(v, (int, np.integer)):
        return int(v)
    f = float(v)
    return float(FLOAT_FORMAT % f) if math.isfinite(f) else None


def header_of(rows: Sequence[dict], columns: Optional[Sequence[str]] = None) -> list:
    if columns is not None:
        return list(columns)
    header = []
    for r in rows:
        header.extend(k for k in r if k not in header)
    return header


def render(rows: Sequence[dict], fmt: str = "csv", columns: Optional[Sequence[str]] = None) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        header = header_of(rows, columns)
        writer.writerow(header)
        for r in rows:
            writer.writerow([_csv_cell(r.get(k)) for k in header])
        return buf.getvalue()
    if fmt == "json":
        return json.dumps([{k: _json_value(v) for k, v in r.items()} for r in rows], indent=1) + "\n"
    raise ValueError(f"unknown format {fmt!r}; use csv or json")


def emit(rows: Sequence[dict], fmt: str = "csv", path: Optional[str] = None,
         columns: Optional[Sequence[str]] = None) -> None:
    """Write rows as CSV (header always present) or a JSON array; ``path`` None or '-' means stdout."""
    text = render(rows, fmt, columns)
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror}") from exc


def weight_rows(spec: ChannelSpec, N: int) -> tuple:
    """Rows (l_1..l_K, W_l, cumulative mass) of the truncated weight table, and the header."""
    table = build_table(spec, N)
    header = [f"l_{k + 1}" for k in range(spec.K)] + ["W_l", "cumulative_mass"]
    rows = []
    for l, w, c in zip(table.indices, table.weights, np.cumsum(table.weights)):
        rows.append(dict(zip(header, (*l, float(w), float(c)))))
    return rows, header


# -- selftest ------------------------------------------------------------------

def selftest(verbose: bool = True) -> bool:
    """Quick oracle cross-checks; True when all pass."""
    from .product_dist import ProductDistSpec, cdf_product_fft, cdf_product_mellin
    from .outage import mc_hits, outage_asymptotic
    from .negmult import nm_params
    from .special_fn import g_k, tricomi_psi

    def k1_anchor():
        s = ChannelSpec.uniform(1, 0.6)
        q = OutageQuery(s, PowerProfile.from_db(1, 10.0), 2.0, deficit_tol=1e-13)
        return abs(outage_exact(q).p - (1 - math.exp(-0.3))) < 1e-9

    def psi_power():
        return abs(tricomi_psi(1.5, 2.5, 0.7) - 0.7**-1.5) < 1e-10

    def gk_zero():
        return all(g_k(K, 1.0) == 0.0 for K in range(1, 7))

    def weights_hand():
        w0, w = nm_params(ChannelSpec(0.5, 1.0, (1.0, 1.0)))
        return abs(w0 - 5 / 7) < 1e-14 and np.allclose(w, [5 / 21, 1 / 21], rtol=1e-13)

    def fft_vs_mellin():
        spec = ProductDistSpec((1, 2), (3.0, 5.0))
        return abs(cdf_product_fft(spec, 4.0) - cdf_product_mellin(spec, 4.0)) < 1e-7

    def asymptotic_round_trip():
        t = DesignTarget(1e-6, ChannelSpec.uniform(2, 0.5), rate=2.0)
        p = allocate_equal_powers(required_power_product(t), 2)
        return abs(outage_asymptotic(OutageQuery(t.channel, p, 2.0)).p - 1e-6) < 1e-17

    def mc_workers():
        s = ChannelSpec.uniform(2, 0.5)
        p = PowerProfile.from_db(2, 5.0)
        return len({mc_hits(s, p, 2.0, 200_000, 3, w) for w in (1, 4)}) == 1

    checks = [
        ("K=1 closed form", k1_anchor),
        ("Psi(a, a+1; z) = z^-a", psi_power),
        ("G_K(1) = 0", gk_zero),
        ("hand-computed weights", weights_hand),
        ("FFT vs Mellin CDF", fft_vs_mellin),
        ("asymptotic design round trip", asymptotic_round_trip),
        ("MC worker invariance", mc_workers),
    ]
    ok = True
    for name, fn in checks:
        try:
            passed = bool(fn())
        except Exception as exc:  # a crash is a failed check, not a crashed selftest
            passed = False
            name = f"{name} ({type(exc).__name__}: {exc})"
        ok &= passed
        if verbose:
            print(f"{'PASS' if passed else 'FAIL'}  {name}")
    return ok


# -- argument parsing ----------------------------------------------------------

def _add_model_flags(p: argparse.ArgumentParser):
    p.add_argument("--config", help="YAML or JSON configuration file")
    p.add_argument("--K", type=int)
    p.add_argument("--rho", type=float)
    p.add_argument("--delta", type=float)
    p.add_argument("--sigma2", help="scalar or comma-separated per-round variances")
    p.add_argument("--powers", help="comma-separated linear per-round powers")
    p.add_argument("--power-db", dest="power_db", type=float, help="equal per-round power P_T in dB")
    p.add_argument("--gamma", type=float, help="power scale in the split P_k = gamma * theta_k")
    p.add_argument("--theta", help="comma-separated power weights for the split form")
    p.add_argument("--rate", dest="rate_bits", type=float, help="rate R in bits per channel use")


def _add_eval_flags(p: argparse.ArgumentParser):
    p.add_argument("--N", dest="truncation_N", type=int, help="truncation order of the weight series")
    p.add_argument("--samples", dest="mc_samples", type=int, help="Monte Carlo sample count")
    p.add_argument("--seed", type=int)
    p.add_argument("--methods", help="comma-separated subset of exact,mc,asymptotic")
    p.add_argument("--workers", type=int, help="threads per Monte Carlo run")
    p.add_argument("--jobs", type=int, help="sweep points evaluated in parallel")
    p.add_argument("--escalate", action="store_true", default=None,
                   help="double MC samples until the CI half-width is under 10%% of the estimate")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", "-o", help="output file (default stdout)")
    p.add_argument("--timing", action="store_true", help="add wall-time columns (breaks byte-identical reruns)")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="harq-outage", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("outage", help="evaluate one configuration")
    _add_model_flags(p)
    _add_eval_flags(p)

    p = sub.add_parser("sweep", help="evaluate over a list of values of one parameter")
    _add_model_flags(p)
    _add_eval_flags(p)
    p.add_argument("--var", choices=SWEEP_VARIABLES, help="sweep variable")
    p.add_argument("--values", help="comma-separated sweep values")
    p.add_argument("--range", nargs=3, type=float, metavar=("START", "STOP", "STEP"))

    p = sub.add_parser("weights", help="dump the truncated weight table as CSV")
    _add_model_flags(p)
    p.add_argument("--N", dest="truncation_N", type=int)
    p.add_argument("--output", "-o")

    p = sub.add_parser("optimize", help="asymptotic power or rate design")
    osub = p.add_subparsers(dest="target", required=True)
    for name, help_ in (("power", "minimum equal powers for a target outage at fixed rate"),
                        ("rate", "maximum rate meeting a target outage at fixed powers")):
        q = osub.add_parser(name, help=help_)
        _add_model_flags(q)
        q.add_argument("--epsilon", type=float, required=True, help="target outage probability")
        q.add_argument("--verify", action="store_true", help="also report the exact outage of the design")
        q.add_argument("--N", dest="truncation_N", type=int)
        q.add_argument("--method", choices=("newton", "bisect"), default="newton")
        q.add_argument("--format", choices=("csv", "json"), default="csv")
        q.add_argument("--output", "-o")

    sub.add_parser("selftest", help="run the built-in oracle cross-checks")
    return parser


_OVERRIDE_KEYS = [f.name for f in fields(Settings)]


def _config_from_args(args) -> SweepConfig:
    raw = load_config_file(args.config) if getattr(args, "config", None) else {}
    overrides = {k: getattr(args, k, None) for k in _OVERRIDE_KEYS}
    if getattr(args, "command", None) != "sweep":
        raw.pop("sweep", None)
    elif args.var or args.values or args.range:
        sweep = {"variable": args.var or (raw.get("sweep") or {}).get("variable")}
        if args.values:
            sweep["values"] = args.values
        elif args.range:
            sweep.update(zip(("start", "stop", "step"), args.range))
        else:
            sweep.update({k: v for k, v in (raw.get("sweep") or {}).items() if k != "variable"})
        raw["sweep"] = sweep
    if getattr(args, "command", None) == "sweep" and not raw.get("sweep"):
        raise ConfigError("sweep needs a variable and values (--var and --values, or a 'sweep' config key)")
    return build_config(raw, overrides, timing=getattr(args, "timing", False))


def _cmd_outage_or_sweep(args) -> int:
    cfg = _config_from_args(args)
    rows = run_sweep(cfg)
    emit(rows, args.format, args.output)
    return EXIT_NUMERICAL if any(r["status"] != "ok" for r in rows) and len(rows) == 1 else EXIT_OK


def _cmd_weights(args) -> int:
    s = _config_from_args(args).base
    rows, header = weight_rows(channel_of(s), s.truncation_N)
    emit(rows, "csv", args.output, columns=header)
    return EXIT_OK


def _cmd_optimize(args) -> int:
    s = _config_from_args(args).base
    spec = channel_of(s)
    if args.target == "power":
        target = DesignTarget(args.epsilon, spec, rate=s.rate_bits)
        p_prod = required_power_product(target)
        power = allocate_equal_powers(p_prod, s.K)
        row = {"K": s.K, "rho": s.rho, "R": s.rate_bits, "epsilon": args.epsilon,
               "power_product": p_prod, "P_k": power.powers[0],
               "P_k_dB": float(linear_to_db(power.powers[0]))}
        rate = s.rate_bits
    else:
        power = power_of(s)
        rate = max_rate(power, spec, args.epsilon, method=args.method)
        row = {"K": s.K, "rho": s.rho, "powers": power.powers, "epsilon": args.epsilon, "R_max": rate}
    if args.verify:
        res = outage_exact(OutageQuery(spec, power, rate, truncation=s.truncation_N))
        row["p_exact"], row["err_exact"] = res.p, res.error
    emit([row], args.format, args.output)
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.command == "selftest":
            return EXIT_OK if selftest() else EXIT_SELFTEST
        if args.command in ("outage", "sweep"):
            return _cmd_outage_or_sweep(args)
        if args.command == "weights":
            return _cmd_weights(args)
        return _cmd_optimize(args)
    except (ConfigError, DomainError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (HarqError, ArithmeticError, MemoryError) as exc:
        print(f"numerical error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
