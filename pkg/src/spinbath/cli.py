"""Command-line front end: config parsing, sweeps, CSV time series.

Config files are line-oriented ``key = value`` pairs with ``#`` comments.
The seven physical parameters and the initial amplitudes are required and
never defaulted; the time grid, truncation tolerance, observable list and
oracle check have documented defaults.  A sweep over one model parameter
is declared as ``sweep = d_z: 0, 1, 2, 3``.

Output is one CSV row per (sweep value, time point) with a fixed column
schema; floats carry 17 significant digits so the CSV round-trips losslessly
and two runs of the same config are byte-identical.

Exit codes: 0 success, 1 config error, 2 numerical invariant violation,
3 oracle mismatch.
"""

from __future__ import annotations

import argparse
import dataclasses
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .assembly import density_series
from .correlations import (concurrence_wootters, mutual_information,
                           quantum_discord)
from .model import (InitialState, InvariantViolation, ModelParams,
                    PropagationError, choose_truncation, tail_weight)
from .oracle import bosonic_series

CSV_HEADER = ("sweep_param,sweep_value,t,concurrence,discord,mutual_info,"
              "classical_corr,trace_defect,min_eigenvalue,n_max,tail_weight,"
              "oracle_dev")

ORACLE_TOLERANCE = 1e-8

_MODEL_KEYS = ("epsilon", "j_coupling", "j_z", "d_z", "g_bath",
               "g_sys_bath", "temperature")
_SWEEPABLE = ("d_z", "j_z", "j_coupling", "temperature", "g_sys_bath", "g_bath")
_OBSERVABLES = ("concurrence", "discord", "mutual_info", "classical")

_DEFAULT_T_START = 0.0
_DEFAULT_T_END = 10.0
_DEFAULT_N_POINTS = 201
_DEFAULT_TOL = 1e-12


class ConfigError(ValueError):
    """Malformed or physically invalid run configuration."""


class OracleMismatch(RuntimeError):
    """Assembled dynamics disagreed with direct evolution beyond tolerance."""


@dataclass(frozen=True)
class RunConfig:
    model: ModelParams
    initial: InitialState
    time_grid: tuple  # (t_start, t_end, n_points)
    sweep: tuple | None  # (parameter name, tuple of values)
    observables: tuple
    tol: float
    oracle_check: bool


def _parse_scalar(kind, raw: str, key: str, line_no: int):
    try:
        return kind(raw.strip())
    except ValueError as exc:
        raise ConfigError(f"line {line_no}: invalid value for '{key}': {raw!r}") from exc


def parse_config(text: str) -> RunConfig:
    """Parse and fully validate a config file; unknown keys are errors."""
    entries = {}
    for line_no, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {line_no}: expected 'key = value', got {raw_line!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key in entries:
            raise ConfigError(
                f"line {line_no}: duplicate key '{key}' (first set on line "
                f"{entries[key][0]})")
        entries[key] = (line_no, value)

    known = set(_MODEL_KEYS) | {"alpha", "beta", "t_start", "t_end", "n_points",
                                "tol", "observables", "oracle_check", "sweep"}
    for key, (line_no, _) in entries.items():
        if key not in known:
            raise ConfigError(f"line {line_no}: unknown key '{key}'")

    required = list(_MODEL_KEYS) + ["alpha", "beta"]
    missing = [k for k in required if k not in entries]
    if missing:
        raise ConfigError(f"missing required keys: {', '.join(missing)}")

    model_values = {k: _parse_scalar(float, entries[k][1], k, entries[k][0])
                    for k in _MODEL_KEYS}
    alpha = _parse_scalar(complex, entries["alpha"][1], "alpha", entries["alpha"][0])
    beta = _parse_scalar(complex, entries["beta"][1], "beta", entries["beta"][0])

    def optional(key, kind, default):
        if key not in entries:
            return default
        return _parse_scalar(kind, entries[key][1], key, entries[key][0])

    t_start = optional("t_start", float, _DEFAULT_T_START)
    t_end = optional("t_end", float, _DEFAULT_T_END)
    n_points = optional("n_points", int, _DEFAULT_N_POINTS)
    tol = optional("tol", float, _DEFAULT_TOL)

    observables = _OBSERVABLES
    if "observables" in entries:
        line_no, raw = entries["observables"]
        names = tuple(name.strip() for name in raw.split(","))
        bad = [name for name in names if name not in _OBSERVABLES]
        if bad or not names:
            raise ConfigError(
                f"line {line_no}: unknown observable(s) {bad}; "
                f"choose from {', '.join(_OBSERVABLES)}")
        observables = names

    oracle_check = False
    if "oracle_check" in entries:
        line_no, raw = entries["oracle_check"]
        lowered = raw.lower()
        if lowered not in ("true", "false"):
            raise ConfigError(f"line {line_no}: oracle_check must be true or false")
        oracle_check = lowered == "true"

    sweep = None
    if "sweep" in entries:
        line_no, raw = entries["sweep"]
        name, sep, values_text = raw.partition(":")
        name = name.strip()
        if not sep or name not in _SWEEPABLE:
            raise ConfigError(
                f"line {line_no}: sweep must look like 'sweep = d_z: 0, 1, 2'; "
                f"sweepable parameters: {', '.join(_SWEEPABLE)}")
        values = tuple(_parse_scalar(float, v, "sweep value", line_no)
                       for v in values_text.split(","))
        if not values:
            raise ConfigError(f"line {line_no}: sweep needs at least one value")
        sweep = (name, values)

    try:
        model = ModelParams(**model_values)
        initial = InitialState(alpha, beta)
        if sweep is not None:
            for value in sweep[1]:
                dataclasses.replace(model, **{sweep[0]: value})
    except InvariantViolation as exc:
        raise ConfigError(str(exc)) from exc

    if not (t_end > t_start >= 0.0):
        raise ConfigError(f"need t_end > t_start >= 0, got [{t_start}, {t_end}]")
    if n_points < 2:
        raise ConfigError(f"n_points must be >= 2, got {n_points}")
    if not 0.0 < tol < 1.0:
        raise ConfigError(f"tol must lie in (0, 1), got {tol}")

    return RunConfig(model=model, initial=initial,
                     time_grid=(t_start, t_end, n_points), sweep=sweep,
                     observables=observables, tol=tol, oracle_check=oracle_check)


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _worker_count(n_tasks: int) -> int:
    raw = os.environ.get("SPINBATH_THREADS", "0")
    try:
        requested = int(raw)
        if requested < 0:
            raise ValueError
    except ValueError:
        raise ConfigError(f"SPINBATH_THREADS must be a nonnegative integer, got {raw!r}")
    if requested == 0:
        requested = os.cpu_count() or 1
    return max(1, min(requested, n_tasks))


def _sweep_block(config: RunConfig, sweep_name: str, sweep_value) -> tuple:
    """All CSV rows for one sweep point; returns (rows, worst oracle dev)."""
    if sweep_value is None:
        params = config.model
        value_field = ""
    else:
        params = dataclasses.replace(config.model, **{sweep_name: sweep_value})
        value_field = _fmt(sweep_value)
    trunc = choose_truncation(params, config.tol)
    t_start, t_end, n_points = config.time_grid
    times = np.linspace(t_start, t_end, n_points)
    rhos = density_series(params, config.initial, times, trunc)

    devs = None
    if config.oracle_check:
        reference = bosonic_series(params, config.initial, times,
                                   n_cut=trunc.n_max + 2, n_max=trunc.n_max)
        devs = np.max(np.abs(rhos - reference), axis=(1, 2))

    want = set(config.observables)
    need_discord = bool(want & {"discord", "classical"})
    tail = tail_weight(params, trunc.n_max)

    rows = []
    for i, t in enumerate(times):
        rho = rhos[i]
        conc = _fmt(concurrence_wootters(rho)) if "concurrence" in want else ""
        disc = mi = cls = ""
        if need_discord:
            d = quantum_discord(rho)
            if "discord" in want:
                disc = _fmt(d.discord)
            if "mutual_info" in want:
                mi = _fmt(d.mutual_info)
            if "classical" in want:
                cls = _fmt(d.classical_corr)
        elif "mutual_info" in want:
            mi = _fmt(mutual_information(rho))
        trace_defect = abs(float(np.trace(rho).real) - 1.0)
        min_eig = float(np.linalg.eigvalsh(rho).min())
        dev_field = _fmt(float(devs[i])) if devs is not None else ""
        rows.append(",".join([
            sweep_name, value_field, _fmt(float(t)),
            conc, disc, mi, cls,
            _fmt(trace_defect), _fmt(min_eig),
            str(trunc.n_max), _fmt(tail), dev_field,
        ]))
    worst = float(np.max(devs)) if devs is not None else 0.0
    return rows, worst


def run(config: RunConfig, out=None, quiet: bool = False) -> None:
    """Execute a run config, writing CSV to out (default stdout).

    Sweep points are evaluated concurrently (capped by SPINBATH_THREADS)
    and emitted in declaration order, so output is deterministic.
    Raises OracleMismatch after writing all rows if any per-time deviation
    from direct evolution exceeds 1e-8.
    """
    if out is None:
        out = sys.stdout
    if config.sweep is None:
        tasks = [("none", None)]
    else:
        name, values = config.sweep
        tasks = [(name, value) for value in values]

    workers = _worker_count(len(tasks))
    if workers == 1:
        blocks = [_sweep_block(config, name, value) for name, value in tasks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            blocks = list(pool.map(
                lambda task: _sweep_block(config, task[0], task[1]), tasks))

    out.write(CSV_HEADER + "\n")
    worst_dev = 0.0
    n_rows = 0
    for rows, dev in blocks:
        for row in rows:
            out.write(row + "\n")
        n_rows += len(rows)
        worst_dev = max(worst_dev, dev)
    out.flush()

    if not quiet:
        message = f"spinbath: wrote {n_rows} rows over {len(tasks)} sweep point(s)"
        if config.oracle_check:
            message += f", worst oracle deviation {worst_dev:.3e}"
        print(message, file=sys.stderr)
    if config.oracle_check and worst_dev > ORACLE_TOLERANCE:
        raise OracleMismatch(
            f"max deviation from direct evolution {worst_dev:.3e} exceeds "
            f"{ORACLE_TOLERANCE:.0e}")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="spinbath",
        description="Non-Markovian two-qubit dynamics in a collective spin "
                    "bath: concurrence and discord time series as CSV.")
    parser.add_argument("--config", required=True, help="path to a key=value config file")
    parser.add_argument("--output", default="-",
                        help="output CSV path (default: stdout)")
    parser.add_argument("--oracle-check", action="store_true",
                        help="also run direct joint evolution and report deviations")
    parser.add_argument("--quiet", action="store_true",
                        help="suppress the summary line on stderr")
    args = parser.parse_args(argv)

    try:
        with open(args.config, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"spinbath: cannot read config: {exc}", file=sys.stderr)
        return 1

    try:
        config = parse_config(text)
        if args.oracle_check and not config.oracle_check:
            config = dataclasses.replace(config, oracle_check=True)
        if args.output == "-":
            run(config, sys.stdout, quiet=args.quiet)
        else:
            with open(args.output, "w", encoding="utf-8", newline="") as fh:
                run(config, fh, quiet=args.quiet)
    except ConfigError as exc:
        print(f"spinbath: config error: {exc}", file=sys.stderr)
        return 1
    except (InvariantViolation, PropagationError) as exc:
        print(f"spinbath: numerical invariant violated: {exc}", file=sys.stderr)
        return 2
    except OracleMismatch as exc:
        print(f"spinbath: oracle mismatch: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
