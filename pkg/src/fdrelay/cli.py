"""Command-line front end.

Computes outage probability rows over a scenario (preset or JSON file),
optionally swept over one parameter, by the analytic engines, the Monte
Carlo simulator, or the high-SNR floor, and emits CSV or JSON.

Output is deterministic byte-for-byte for fixed flags and seed: rows are
sorted, floats carry 17 significant digits, and the runtime_ms column is
emitted as 0 (wall-clock timings go to stderr, where nondeterminism
belongs).  Exit codes: 0 success, 2 configuration error, 3 numeric
non-convergence in at least one row (rows are still emitted).
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
import time

from .errors import DomainError, ScenarioError
from .fading import AlphaMuParams
from .mcsim import simulate_outage
from .outage import outage_af, outage_df, outage_high_snr
from .presets import PRESET_NAMES, preset_config
from .relaysys import SystemConfig

SWEEP_PARAMETERS = ("target_rate", "source_power", "alpha", "mu", "eh_time_fraction")

_FADING_KEYS = {"alpha", "mu", "r_hat"}
_CONFIG_KEYS = {
    "source_power", "hop1_distance", "hop2_distance",
    "hop1_pathloss", "hop2_pathloss",
    "hop1_fading", "hop2_fading", "lbi_fading",
    "noise_antenna_var", "noise_conversion_var", "noise_dest_var",
    "eh_efficiency", "eh_time_fraction", "target_rate", "block_time",
}
_OPTIONAL_CONFIG_KEYS = {"eh_time_fraction", "block_time"}


@dataclasses.dataclass(frozen=True)
class Sweep:
    parameter: str
    start: float
    stop: float
    step: float

    def values(self):
        if self.parameter not in SWEEP_PARAMETERS:
            raise ScenarioError(f"unknown sweep parameter {self.parameter!r}")
        if self.step <= 0.0 or self.stop < self.start:
            raise ScenarioError("sweep requires step > 0 and stop >= start")
        out = []
        v = self.start
        # endpoints inclusive within half a step
        while v <= self.stop + 0.5 * self.step:
            out.append(min(v, self.stop))
            v += self.step
        if not out:
            raise ScenarioError("empty sweep range")
        return out


@dataclasses.dataclass(frozen=True)
class Scenario:
    id: str
    config: SystemConfig
    sweep: Sweep | None = None


@dataclasses.dataclass(frozen=True)
class ResultRow:
    scenario_id: str
    sweep_value: float
    mode: str
    method: str
    outage: float
    err: float
    n_samples: int
    seed: int
    runtime_ms: int


CSV_HEADER = "scenario_id,sweep_value,mode,method,outage,err,n_samples,seed,runtime_ms"


def _fading_from_dict(d, where):
    if not isinstance(d, dict):
        raise ScenarioError(f"{where} must be an object with alpha/mu/r_hat")
    unknown = set(d) - _FADING_KEYS
    if unknown:
        raise ScenarioError(f"{where}: unknown keys {sorted(unknown)}")
    missing = _FADING_KEYS - set(d)
    if missing:
        raise ScenarioError(f"{where}: missing keys {sorted(missing)}")
    try:
        return AlphaMuParams(alpha=float(d["alpha"]), mu=float(d["mu"]),
                             r_hat=float(d["r_hat"]))
    except DomainError as exc:
        raise ScenarioError(f"{where}: {exc}") from None


def config_from_dict(d) -> SystemConfig:
    """Strict-schema SystemConfig: unknown keys rejected, invariants enforced."""
    if not isinstance(d, dict):
        raise ScenarioError("config must be a JSON object")
    unknown = set(d) - _CONFIG_KEYS
    if unknown:
        raise ScenarioError(f"config: unknown keys {sorted(unknown)}")
    missing = _CONFIG_KEYS - _OPTIONAL_CONFIG_KEYS - set(d)
    if missing:
        raise ScenarioError(f"config: missing keys {sorted(missing)}")
    if "eh_time_fraction" not in d:
        print("warning: eh_time_fraction missing, defaulting to 0.5", file=sys.stderr)
    kwargs = {}
    for key in _CONFIG_KEYS:
        if key in ("hop1_fading", "hop2_fading", "lbi_fading"):
            kwargs[key] = _fading_from_dict(d[key], key)
        elif key in d:
            kwargs[key] = float(d[key])
    kwargs.setdefault("eh_time_fraction", 0.5)
    kwargs.setdefault("block_time", 1.0)
    try:
        return SystemConfig(**kwargs)
    except DomainError as exc:
        raise ScenarioError(str(exc)) from None


def load_scenario(path: str) -> Scenario:
    """Load and validate a scenario file: {id, config, optional sweep}."""
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ScenarioError(f"cannot read scenario file: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from None
    if not isinstance(raw, dict):
        raise ScenarioError(f"{path}: top level must be an object")
    unknown = set(raw) - {"id", "config", "sweep"}
    if unknown:
        raise ScenarioError(f"{path}: unknown keys {sorted(unknown)}")
    if "id" not in raw or "config" not in raw:
        raise ScenarioError(f"{path}: 'id' and 'config' are required")
    sweep = None
    if raw.get("sweep") is not None:
        s = raw["sweep"]
        unknown = set(s) - {"parameter", "start", "stop", "step"}
        if unknown:
            raise ScenarioError(f"{path}: sweep has unknown keys {sorted(unknown)}")
        try:
            sweep = Sweep(parameter=str(s["parameter"]), start=float(s["start"]),
                          stop=float(s["stop"]), step=float(s["step"]))
        except KeyError as exc:
            raise ScenarioError(f"{path}: sweep is missing {exc}") from None
        sweep.values()  # validate the range eagerly
    return Scenario(id=str(raw["id"]), config=config_from_dict(raw["config"]),
                    sweep=sweep)


def apply_sweep_value(cfg: SystemConfig, parameter: str, value: float) -> SystemConfig:
    """One grid point: replace the swept parameter, everything else unchanged."""
    if parameter == "target_rate":
        return dataclasses.replace(cfg, target_rate=value)
    if parameter == "source_power":
        return dataclasses.replace(cfg, source_power=value)
    if parameter == "eh_time_fraction":
        return dataclasses.replace(cfg, eh_time_fraction=value)
    if parameter == "alpha":
        return dataclasses.replace(
            cfg,
            hop1_fading=dataclasses.replace(cfg.hop1_fading, alpha=value),
            hop2_fading=dataclasses.replace(cfg.hop2_fading, alpha=value),
            lbi_fading=dataclasses.replace(cfg.lbi_fading, alpha=value))
    if parameter == "mu":
        return dataclasses.replace(
            cfg,
            hop1_fading=dataclasses.replace(cfg.hop1_fading, mu=value),
            hop2_fading=dataclasses.replace(cfg.hop2_fading, mu=value),
            lbi_fading=dataclasses.replace(cfg.lbi_fading, mu=value))
    raise ScenarioError(f"unknown sweep parameter {parameter!r}")


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def emit(rows, fmt: str, path: str | None) -> None:
    """Write rows as CSV (fixed header, 17 significant digits) or JSON."""
    if not rows:
        raise ScenarioError("no rows to emit")
    if fmt == "csv":
        lines = [CSV_HEADER]
        for r in rows:
            lines.append(",".join([
                r.scenario_id, _fmt(r.sweep_value), r.mode, r.method,
                _fmt(r.outage), _fmt(r.err), str(r.n_samples), str(r.seed),
                str(r.runtime_ms)]))
        text = "\n".join(lines) + "\n"
    elif fmt == "json":
        text = json.dumps([dataclasses.asdict(r) for r in rows], indent=2) + "\n"
    else:
        raise ScenarioError(f"unknown format {fmt!r}")
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def rows_from_csv(text: str):
    """Parse emitted CSV back into ResultRow objects (round-trip helper)."""
    lines = [ln for ln in text.splitlines() if ln]
    if not lines or lines[0] != CSV_HEADER:
        raise ScenarioError("unexpected CSV header")
    out = []
    for ln in lines[1:]:
        f = ln.split(",")
        out.append(ResultRow(
            scenario_id=f[0], sweep_value=float(f[1]), mode=f[2], method=f[3],
            outage=float(f[4]), err=float(f[5]), n_samples=int(f[6]),
            seed=int(f[7]), runtime_ms=int(f[8])))
    return out


def rows_from_json(text: str):
    return [ResultRow(**obj) for obj in json.loads(text)]


def _parse_sweep_flag(raw: str, parameter: str) -> Sweep:
    parts = raw.split(":")
    if len(parts) != 3:
        raise ScenarioError(f"sweep must be start:stop:step, got {raw!r}")
    try:
        a, b, s = (float(p) for p in parts)
    except ValueError:
        raise ScenarioError(f"sweep values must be numeric, got {raw!r}") from None
    return Sweep(parameter=parameter, start=a, stop=b, step=s)


def compute_rows(scenario: Scenario, modes, methods, samples: int, seed: int):
    """Evaluate every (sweep value, mode, method) cell, sorted deterministically."""
    sweep = scenario.sweep
    if sweep is None:
        grid = [(scenario.config.target_rate, scenario.config)]
    else:
        grid = [(v, apply_sweep_value(scenario.config, sweep.parameter, v))
                for v in sweep.values()]
    rows = []
    any_bad = False
    for value, cfg in grid:
        for mode in modes:
            for method in methods:
                t0 = time.perf_counter()
                if method == "analytic":
                    res = outage_df(cfg) if mode == "df" else outage_af(cfg)
                    outage, err, n_s = res.value, res.numeric_error, 0
                    any_bad = any_bad or not res.converged
                elif method == "high_snr":
                    res = outage_high_snr(cfg)
                    outage, err, n_s = res.value, res.numeric_error, 0
                elif method == "mc":
                    est = simulate_outage(cfg, mode, samples, seed)
                    outage, err, n_s = est.p_hat, est.stderr, est.n_samples
                else:
                    raise ScenarioError(f"unknown method {method!r}")
                dt_ms = (time.perf_counter() - t0) * 1e3
                print(f"timing: {scenario.id} {value:g} {mode} {method}: {dt_ms:.1f} ms",
                      file=sys.stderr)
                rows.append(ResultRow(
                    scenario_id=scenario.id, sweep_value=value, mode=mode,
                    method=method, outage=outage, err=err, n_samples=n_s,
                    seed=seed, runtime_ms=0))
    rows.sort(key=lambda r: (r.scenario_id, r.sweep_value, r.mode, r.method))
    return rows, any_bad


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="fdrelay",
        description="Outage probability of an energy-harvesting full-duplex "
                    "relay link over generalized fading.")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--config", help="scenario JSON file")
    src.add_argument("--preset", choices=PRESET_NAMES, help="built-in scenario")
    p.add_argument("--mode", choices=("df", "af", "both"), default="both")
    p.add_argument("--method", choices=("analytic", "mc", "high-snr", "both"),
                   default="both", help="'both' = analytic + mc")
    p.add_argument("--rate-sweep", metavar="a:b:s", help="sweep target rate")
    p.add_argument("--power-sweep", metavar="a:b:s", help="sweep source power")
    p.add_argument("--alpha-sweep", metavar="a:b:s", help="sweep alpha on all branches")
    p.add_argument("--mu", type=float, help="override mu on all branches (presets)")
    p.add_argument("--eta", type=float, help="override the harvesting time fraction")
    p.add_argument("--power", type=float,
                   help="override the source power without sweeping it")
    p.add_argument("--rate", type=float,
                   help="override the target rate without sweeping it")
    p.add_argument("--lbi-r-hat", type=float, dest="lbi_r_hat",
                   help="override the residual loop-back envelope scale (presets)")
    p.add_argument("--samples", type=int, default=1_000_000, help="Monte Carlo draws")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", help="output path (default stdout)")
    return p


def _build_scenario(args) -> Scenario:
    if args.config:
        scenario = load_scenario(args.config)
        cfg = scenario.config
        if args.eta is not None:
            cfg = dataclasses.replace(cfg, eh_time_fraction=args.eta)
        if args.mu is not None:
            cfg = apply_sweep_value(cfg, "mu", args.mu)
        if args.power is not None:
            cfg = dataclasses.replace(cfg, source_power=args.power)
        if args.rate is not None:
            cfg = dataclasses.replace(cfg, target_rate=args.rate)
        if args.lbi_r_hat is not None:
            cfg = dataclasses.replace(
                cfg, lbi_fading=dataclasses.replace(cfg.lbi_fading, r_hat=args.lbi_r_hat))
        scenario = dataclasses.replace(scenario, config=cfg)
    else:
        kwargs = {}
        if args.eta is not None:
            kwargs["eta"] = args.eta
        if args.mu is not None:
            kwargs["mu"] = args.mu
        if args.power is not None:
            kwargs["source_power"] = args.power
        if args.rate is not None:
            kwargs["target_rate"] = args.rate
        if args.lbi_r_hat is not None:
            kwargs["lbi_r_hat"] = args.lbi_r_hat
        scenario = Scenario(id=args.preset, config=preset_config(args.preset, **kwargs))

    sweeps = [(flag, param) for flag, param in (
        (args.rate_sweep, "target_rate"),
        (args.power_sweep, "source_power"),
        (args.alpha_sweep, "alpha")) if flag]
    if len(sweeps) > 1:
        raise ScenarioError("at most one sweep flag may be given")
    if sweeps:
        raw, param = sweeps[0]
        sweep = _parse_sweep_flag(raw, param)
        for v in sweep.values():
            apply_sweep_value(scenario.config, param, v)  # domain check
        scenario = dataclasses.replace(scenario, sweep=sweep)
    return scenario


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        scenario = _build_scenario(args)
        if args.samples < 10_000 and args.method in ("mc", "both"):
            raise ScenarioError("--samples must be at least 10000")
        modes = ("df", "af") if args.mode == "both" else (args.mode,)
        if args.method == "both":
            methods = ("analytic", "mc")
        elif args.method == "high-snr":
            methods = ("high_snr",)
        else:
            methods = (args.method,)
        t0 = time.perf_counter()
        rows, any_bad = compute_rows(scenario, modes, methods, args.samples, args.seed)
        emit(rows, args.format, args.out)
        print(f"total: {len(rows)} rows in {time.perf_counter() - t0:.2f} s",
              file=sys.stderr)
    except (ScenarioError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if any_bad:
        print("error: at least one row did not converge", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
