"""Command-line experiment runner.

Every run is described by an ``ExperimentConfig`` (from flags or a JSON file) and
produces a ``RunReport``. The ``results`` payload depends only on the config and the
seed, so reruns are byte-identical; wall time lives outside the payload.

Exit codes: 0 success, 1 invalid input, 2 quadrature tolerance not met.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import __version__
from .errors import ConfigError, ToleranceError
from .inequalities import LABEL, RatioKind, SearchStrategy, estimate_constant
from .quadrature import QuadratureSpec
from .schrodinger import (
    InitialData,
    SensorPath,
    exceptional_velocity_counterexample,
    grid_sample,
    integer_velocity_counterexample,
    observability_battery,
    observability_functional,
    path_residual,
)
from .spectra import Convention, DispersionSpectrum, FrequencySequence, gap_threshold_index, min_gap, reorder
from .trigpoly import TrigPoly, l1_norm, l2_norm_sq

__all__ = ["ExperimentConfig", "RunReport", "run", "sweep", "main", "parse_poly", "COMMANDS"]

SCHEMA_VERSION = "1.0"
COMMANDS = ("spectrum", "reorder", "norm", "constant", "sweep", "observe", "counterexample")
CERTIFY_TOL = 1e-10


# --------------------------------------------------------------------------
# Parameter parsing


def _exact(x):
    """int, Fraction or float from a JSON value or a command-line string."""
    if isinstance(x, bool):
        raise ValueError("expected a number")
    if isinstance(x, (int, float, Fraction)):
        return x
    f = Fraction(str(x).strip())
    return int(f) if f.denominator == 1 else f


def _real(x) -> float:
    return float(_exact(x))


def _int(x) -> int:
    v = _exact(x)
    if v != int(v):
        raise ValueError(f"{x!r} is not an integer")
    return int(v)


def _complex(x) -> complex:
    if isinstance(x, (list, tuple)):
        return complex(float(x[0]), float(x[1]) if len(x) > 1 else 0.0)
    if isinstance(x, str):
        return complex(x.replace(" ", "").replace("i", "j"))
    return complex(x)


def parse_poly(text) -> tuple:
    """``"X^n"`` (also ``"X**n"``, ``"X"``) or a coefficient list ``"a0,a1,...,an"``."""
    if isinstance(text, (list, tuple)):
        coeffs = [_exact(c) for c in text]
    else:
        s = str(text).replace(" ", "").replace("**", "^")
        if s.upper().startswith("X"):
            n = 1 if s.upper() == "X" else int(s[2:]) if s[1:2] == "^" else None
            if n is None or n < 1:
                raise ValueError(f"cannot parse monomial {text!r}")
            coeffs = [0] * n + [1]
        else:
            coeffs = [_exact(c) for c in s.split(",") if c]
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs or not coeffs[-1] > 0:
        raise ValueError("leading coefficient must be positive")
    return tuple(coeffs)


def _list(parse):
    def inner(x):
        if isinstance(x, str):
            x = [p for p in x.split(",") if p.strip()]
        return [parse(v) for v in x]

    return inner


def _modes(x):
    """``[[k, re, im], ...]`` or ``"k:c,k:c"`` with complex ``c``."""
    if isinstance(x, str):
        out = []
        for item in x.split(","):
            k, c = item.split(":")
            out.append((int(k), _complex(c)))
        return out
    return [(int(m[0]), _complex(m[1:])) for m in x]


def _terms(x):
    """``[[freq, re, im], ...]`` or ``"f:c,f:c"``."""
    if isinstance(x, str):
        return [(float(f), _complex(c)) for f, c in (item.split(":") for item in x.split(","))]
    return [(float(t[0]), _complex(t[1:])) for t in x]


def _choice(options):
    def inner(x):
        if x not in options:
            raise ValueError(f"expected one of {sorted(options)}, got {x!r}")
        return x

    return inner


_POLY = ("P", parse_poly, False, (0, 0, 1))
_CONV = ("convention", _choice({"quadratic", "general"}), False, "quadratic")
_TOL = ("tol", _real, False, None)

# name -> (parser, required, default)
_PARAMS = {
    "spectrum": [_POLY, ("a", _exact, False, 0), ("N", _int, True, None), _CONV,
                 ("gap_threshold", _real, False, None)],
    "reorder": [_POLY, ("a", _exact, False, 0), ("N", _int, True, None), _CONV],
    "norm": [("terms", _terms, True, None), ("T", _real, True, None), _TOL],
    "constant": [("kind", _choice({k.value for k in RatioKind}), False, "nazarov"), _POLY,
                 ("T", _real, True, None), ("N", _int, True, None), ("budget", _int, False, 10_000), _TOL],
    "observe": [_POLY, ("a", _exact, True, None), ("T", _real, True, None), _CONV,
                ("modes", _modes, False, None), ("battery", _int, False, None),
                ("battery_modes", _list(_int), False, None), ("t0", _real, False, 0.0),
                ("x0", _real, False, 0.0), ("grid", _list(_real), False, None), _TOL],
    "counterexample": [("a", _exact, True, None), ("k", _int, True, None), ("m", _int, False, None),
                       ("P", parse_poly, False, None), _CONV, ("t0", _real, False, 0.0),
                       ("x0", _real, False, 0.0), ("c", _complex, False, 1.0),
                       ("samples", _int, False, 1000)],
}
_RANDOM = {"constant", "observe"}
_CONFIG_KEYS = {"command", "parameters", "seed", "output_path", "output_format"}


@dataclass
class ExperimentConfig:
    command: str
    parameters: dict = field(default_factory=dict)
    seed: int | None = None
    output_path: str | None = None
    output_format: str = "json"

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        unknown = set(d) - _CONFIG_KEYS
        if unknown:
            raise ConfigError(f"unknown key(s) {sorted(unknown)}", field=sorted(unknown)[0])
        if "command" not in d:
            raise ConfigError("missing", field="command")
        cfg = cls(d["command"], dict(d.get("parameters") or {}), d.get("seed"),
                  d.get("output_path"), d.get("output_format", "json"))
        cfg.validate()
        return cfg

    def validate(self):
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}", field="command")
        if self.output_format not in ("json", "csv"):
            raise ConfigError("must be 'json' or 'csv'", field="output_format")
        if self.seed is not None and (isinstance(self.seed, bool) or not isinstance(self.seed, int) or self.seed < 0):
            raise ConfigError("must be a non-negative integer", field="seed")
        if self.command == "sweep":
            _sweep_cells(self)
        else:
            _resolve(self.command, self.parameters)
        if self.seed is None and self._uses_randomness():
            self.seed = 0

    def _uses_randomness(self) -> bool:
        cmd = self.parameters.get("command", "constant") if self.command == "sweep" else self.command
        return cmd in _RANDOM

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "parameters": _jsonable(self.parameters),
            "seed": self.seed,
            "output_path": self.output_path,
            "output_format": self.output_format,
        }


def _resolve(command: str, params: dict, prefix: str = "parameters") -> dict:
    """Parsed parameters with defaults; raises ``ConfigError`` naming the field."""
    table = _PARAMS[command]
    names = {t[0] for t in table}
    unknown = set(params) - names
    if unknown:
        key = sorted(unknown)[0]
        raise ConfigError(f"unknown parameter for {command!r}", field=f"{prefix}.{key}")
    out = {}
    for name, parse, required, default in table:
        if params.get(name) is None:
            if required:
                raise ConfigError(f"required by {command!r}", field=f"{prefix}.{name}")
            out[name] = default
            continue
        try:
            out[name] = parse(params[name])
        except (ValueError, TypeError, ZeroDivisionError, IndexError) as exc:
            raise ConfigError(str(exc), field=f"{prefix}.{name}") from None
    return out


def _sweep_cells(cfg: ExperimentConfig):
    """``(command, grid keys, list of cell parameter dicts)``; list values span the grid."""
    params = dict(cfg.parameters)
    command = params.pop("command", "constant")
    if command not in COMMANDS or command == "sweep":
        raise ConfigError(f"cannot sweep {command!r}", field="parameters.command")
    # structured values that are lists by nature are not grid axes
    intrinsic = {"terms", "modes", "battery_modes", "grid"}
    grid = [k for k, v in params.items() if isinstance(v, list) and k not in intrinsic]
    cells = []
    for values in itertools.product(*(params[k] for k in grid)):
        cell = dict(params)
        cell.update(zip(grid, values))
        _resolve(command, cell)
        cells.append(cell)
    return command, grid, cells


# --------------------------------------------------------------------------
# Commands


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, Fraction):
        return float(x)
    if isinstance(x, complex):
        return [x.real, x.imag]
    if isinstance(x, np.generic):
        return x.item()
    return x


def _qspec(tol):
    return QuadratureSpec() if tol is None else QuadratureSpec(abs_tol=tol, rel_tol=tol)


def _spec(p):
    return DispersionSpectrum(p["P"], p["a"], Convention(p["convention"]))


def _cmd_spectrum(p, seed, warnings):
    spec = _spec(p)
    raw = spec.raw(-p["N"], p["N"])
    seq, src = raw.sorted()
    out = {
        "indices": raw.indices.tolist(),
        "lambda": raw.values.tolist(),
        "sorted": {"mu": seq.values.tolist(), "source": src.tolist()},
        "min_gap": min_gap(seq),
    }
    if p["gap_threshold"] is not None:
        out["gap_threshold_index"] = gap_threshold_index(seq, p["gap_threshold"]).threshold_index
    return out


def _cmd_reorder(p, seed, warnings):
    r = reorder(_spec(p), p["N"])
    return {
        "case": r.case, "q0": r.q0, "head_size": r.head_size,
        "index_lo": r.index_lo, "index_hi": r.index_hi,
        "mu_index_lo": r.mu.index_lo, "mu": r.mu.values.tolist(), "source": r.source.tolist(),
        "displacement_bound": r.displacement_bound, "index_displacement": r.index_displacement,
    }


def _cmd_norm(p, seed, warnings):
    poly = TrigPoly.from_terms(p["terms"])
    res = l1_norm(poly, p["T"], _qspec(p["tol"]), strict=True)
    return {"l1": res.value, "l1_error": res.error, "l2_sq": l2_norm_sq(poly, p["T"])}


def _family(p, kind):
    coeffs = [float(c) for c in p["P"]]
    N = p["N"]
    k = np.arange(0 if kind is RatioKind.NAZAROV_L1 else -N, N + 1)
    return FrequencySequence(np.polynomial.polynomial.polyval(k.astype(float), coeffs), int(k[0]))


def _cmd_constant(p, seed, warnings):
    kind = RatioKind(p["kind"])
    est = estimate_constant(kind, _family(p, kind), p["T"], budget=p["budget"], seed=seed, q=_qspec(p["tol"]))
    out = est.to_dict()
    out["N"] = p["N"]
    warnings.append(f"min_ratio is an {LABEL} on the constant, not a certified value")
    return out


def _cmd_observe(p, seed, warnings):
    spec = _spec(p)
    path = SensorPath(p["t0"], p["x0"], p["a"])
    q = _qspec(p["tol"])
    out = {}
    if p["modes"] is not None:
        u0 = InitialData(tuple(p["modes"]))
        rep = observability_functional(spec, u0, path, p["T"], q)
        if p["tol"] is not None and not rep.converged:
            raise ToleranceError(f"functional not within tolerance (error {rep.error!r})")
        out["report"] = rep.to_dict()
        warnings.append(rep.caveat)
        if p["grid"] is not None:
            t_min, t_max, n_t, n_x = p["grid"]
            out["grid"] = {
                "t": np.linspace(t_min, t_max, int(n_t)).tolist(),
                "x": (np.arange(int(n_x)) / int(n_x)).tolist(),
                "values": grid_sample(spec, u0, (t_min, t_max, int(n_t)), int(n_x)).tolist(),
            }
    if p["battery"] is not None:
        modes = p["battery_modes"] or (list(range(-8, 9)) if p["modes"] is None else [k for k, _ in p["modes"]])
        b = observability_battery(spec, path, p["T"], modes, p["battery"], seed, q)
        out["battery"] = {"n_data": p["battery"], "modes": list(modes), "min_ratio": b.min_ratio,
                          "all_positive": bool((b.ratios > 0).all()), "converged": bool(b.converged.all())}
    if not out:
        raise ConfigError("give modes or battery", field="parameters.modes")
    return out


def _cmd_counterexample(p, seed, warnings):
    path = SensorPath(p["t0"], p["x0"], p["a"])
    if p["P"] is None:
        spec = DispersionSpectrum((0, 0, 1), p["a"], Convention.QUADRATIC)
        u0 = integer_velocity_counterexample(p["a"], p["k"], p["t0"], p["x0"], p["c"])
    else:
        if p["m"] is None:
            raise ConfigError("required with P", field="parameters.m")
        spec = _spec(p)
        u0 = exceptional_velocity_counterexample(spec, (p["k"], p["m"]), p["t0"], p["x0"], p["c"])
    res = path_residual(spec, u0, path, 1.0, p["samples"])
    return {
        "modes": [[k, c.real, c.imag] for k, c in u0.modes],
        "wiener_norm": u0.wiener_norm,
        "residual": res,
        "certified": res <= CERTIFY_TOL * u0.wiener_norm,
    }


_DISPATCH = {
    "spectrum": _cmd_spectrum,
    "reorder": _cmd_reorder,
    "norm": _cmd_norm,
    "constant": _cmd_constant,
    "observe": _cmd_observe,
    "counterexample": _cmd_counterexample,
}


def _summary(command, res) -> dict:
    """Scalar columns of a sweep row."""
    if command == "constant":
        return {"min_ratio": res["min_ratio"], "evaluations": res["evaluations"], "seed": res["seed"]}
    if command == "norm":
        return dict(res)
    if command == "spectrum":
        return {"min_gap": res["min_gap"]}
    if command == "reorder":
        return {"case": res["case"], "displacement_bound": res["displacement_bound"]}
    if command == "counterexample":
        return {"residual": res["residual"], "wiener_norm": res["wiener_norm"]}
    out = {}
    if "report" in res:
        out["ratio"] = res["report"]["ratio"]
    if "battery" in res:
        out["battery_min_ratio"] = res["battery"]["min_ratio"]
    return out


# --------------------------------------------------------------------------
# Runner


@dataclass
class RunReport:
    config: dict
    results: dict
    warnings: list
    wall_time: float
    artifact_version: str = __version__
    schema_version: str = SCHEMA_VERSION

    def to_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "artifact_version": self.artifact_version,
            "config": self.config,
            "wall_time": self.wall_time,
            "warnings": list(self.warnings),
            "results": self.results,
        }

    def payload_bytes(self) -> bytes:
        return json.dumps(self.results, sort_keys=True).encode()

    def table(self) -> tuple[list, list]:
        """``(header, rows)`` for CSV output."""
        cmd = self.config["command"]
        r = self.results
        if cmd == "sweep":
            return r["columns"], [[row.get(c) for c in r["columns"]] for row in r["rows"]]
        if cmd == "spectrum":
            return ["k", "lambda"], [list(x) for x in zip(r["indices"], r["lambda"])]
        if cmd == "reorder":
            pos = range(r["mu_index_lo"], r["mu_index_lo"] + len(r["mu"]))
            return ["position", "source", "mu"], [list(x) for x in zip(pos, r["source"], r["mu"])]
        if cmd == "counterexample":
            return ["k", "re", "im"], r["modes"]
        if cmd == "observe" and "grid" in r:
            g = r["grid"]
            return ["t"] + [f"x={x:.17g}" for x in g["x"]], [[t] + row for t, row in zip(g["t"], g["values"])]
        s = _summary(cmd, r)
        if cmd == "constant":
            s = {"T": r["T"], "N": r["N"], **s}
        return list(s), [list(s.values())]


def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, float):
        return "%.17g" % v
    return str(v)


def to_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _wrap(command, exc):
    """Re-raise ``exc`` with the command name prepended, keeping its type."""
    msg = f"{command}: {exc}"
    try:
        new = type(exc)(msg)
    except TypeError:
        return exc
    for attr in ("pair", "field"):
        if hasattr(exc, attr):
            setattr(new, attr, getattr(exc, attr))
    return new


def sweep(config: ExperimentConfig) -> dict:
    """Run every grid cell in declared order; a failing cell becomes an error row."""
    command, grid, cells = _sweep_cells(config)
    lead = list(grid)
    if command == "constant":
        lead = ["T", "N"] + [g for g in grid if g not in ("T", "N")]
    rows, columns = [], list(lead)
    for cell in cells:
        parsed = _resolve(command, cell)
        # numbers as parsed (a flag gives "0.1"), anything structured as written
        row = {k: _jsonable(parsed[k] if isinstance(parsed.get(k), (int, float, Fraction)) else cell.get(k))
               for k in lead}
        try:
            res = _DISPATCH[command](parsed, config.seed, [])
            summ = _summary(command, res)
            row.update(summ)
            columns += [c for c in summ if c not in columns]
            row["error"] = None
        except (ValueError, ArithmeticError) as exc:
            row["error"] = f"{type(exc).__name__}: {exc}"
        rows.append(row)
    columns.append("error")
    return {"command": command, "grid": grid, "columns": columns, "rows": rows}


def run(config: ExperimentConfig, echo=None) -> RunReport:
    """Validate, dispatch, write ``config.output_path`` and echo a summary to ``echo``."""
    config.validate()
    t0 = time.perf_counter()
    warnings: list = []
    try:
        if config.command == "sweep":
            results = sweep(config)
            if config._uses_randomness():
                warnings.append(f"min_ratio values are {LABEL}s on the constant, not certified values")
        else:
            results = _DISPATCH[config.command](_resolve(config.command, config.parameters), config.seed, warnings)
    except ConfigError:
        raise
    except (ValueError, ArithmeticError) as exc:
        raise _wrap(config.command, exc) from exc
    report = RunReport(config.to_dict(), _jsonable(results), warnings, time.perf_counter() - t0)
    if config.output_path:
        if config.output_format == "csv":
            text = to_csv(*report.table())
        else:
            text = json.dumps(report.to_dict(), indent=2) + "\n"
        with open(config.output_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    if echo is not None:
        _echo(report, echo)
    return report


def _echo(report: RunReport, stream):
    cmd = report.config["command"]
    header, rows = report.table()
    print(f"{cmd} ({report.wall_time:.2f} s)", file=stream)
    for row in rows[:20]:
        print("  " + ", ".join(f"{h}={_fmt(v)}" for h, v in zip(header, row)), file=stream)
    if len(rows) > 20:
        print(f"  ... {len(rows) - 20} more rows", file=stream)
    if cmd != "sweep" and cmd != "constant":
        summ = _summary(cmd, report.results)
        extra = {k: v for k, v in summ.items() if k not in header}
        if extra:
            print("  " + ", ".join(f"{k}={_fmt(v)}" for k, v in extra.items()), file=stream)
    for w in report.warnings:
        print(f"warning: {w}", file=stream)
    if report.config.get("output_path"):
        print(f"wrote {report.config['output_path']}", file=stream)


# --------------------------------------------------------------------------
# Command line

_FLAGS = {
    "T": dict(help="window length (a comma list sweeps it)"),
    "N": dict(help="window half-width / last index"),
    "a": dict(help="sensor velocity; decimals are read exactly (0.5 -> 1/2)"),
    "poly": dict(dest="P", help='dispersion polynomial, "X^n" or "a0,a1,...,an"'),
    "kind": dict(choices=[k.value for k in RatioKind]),
    "budget": dict(help="ratio evaluations"),
    "convention": dict(choices=["quadratic", "general"], help="lambda_k = P(k) + a k (quadratic) or P(k) - a k"),
    "tol": dict(help="quadrature tolerance; failure exits with status 2"),
    "k": dict(help="mode index"),
    "m": dict(help="second mode index of an exceptional witness"),
    "t0": dict(), "x0": dict(), "c": dict(help="complex amplitude, e.g. 1+2j"),
    "samples": dict(), "terms": dict(help='"freq:coeff,..." e.g. "0:1,1:1"'),
    "modes": dict(help='"k:coeff,..."'), "battery": dict(help="number of random initial data"),
    "battery-modes": dict(dest="battery_modes"), "grid": dict(help="t_min,t_max,n_t,n_x"),
    "gap-threshold": dict(dest="gap_threshold"),
    "sweep-command": dict(dest="command", help="command run in each sweep cell (default constant)"),
}
_SUBFLAGS = {
    "spectrum": ["poly", "a", "N", "convention", "gap-threshold"],
    "reorder": ["poly", "a", "N", "convention"],
    "norm": ["terms", "T", "tol"],
    "constant": ["kind", "poly", "T", "N", "budget", "tol"],
    "observe": ["poly", "a", "T", "convention", "modes", "battery", "battery-modes", "t0", "x0", "grid", "tol"],
    "counterexample": ["a", "k", "m", "poly", "convention", "t0", "x0", "c", "samples"],
    "sweep": ["sweep-command", "kind", "poly", "a", "T", "N", "budget", "convention", "tol", "modes", "battery"],
}
# sweep flags whose comma lists become grid axes
_AXES = {"T", "N", "a", "budget"}


class _Parser(argparse.ArgumentParser):
    # usage errors are validation errors (status 1); status 2 is reserved for tolerance failures
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="nonharmonic", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="cmd", required=True)
    for cmd in COMMANDS:
        sp = sub.add_parser(cmd)
        for flag in _SUBFLAGS[cmd]:
            sp.add_argument(f"--{flag}", **_FLAGS[flag])
        sp.add_argument("--seed", type=int)
        sp.add_argument("--out", help="output file")
        sp.add_argument("--format", choices=["json", "csv"])
        sp.add_argument("--config", help="JSON config; flags given here override its parameters")
    return ap


def _config_from_args(ns) -> ExperimentConfig:
    base = {"command": ns.cmd, "parameters": {}}
    if ns.config:
        try:
            with open(ns.config, encoding="utf-8") as fh:
                base = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(str(exc), field="config") from None
        if not isinstance(base, dict):
            raise ConfigError("must hold a JSON object", field="config")
        if base.get("command", ns.cmd) != ns.cmd:
            raise ConfigError(f"config is for {base.get('command')!r}, not {ns.cmd!r}", field="command")
        base = {**base, "command": ns.cmd}
    params = dict(base.get("parameters") or {})
    skip = {"cmd", "seed", "out", "format", "config"}
    for key, val in vars(ns).items():
        if key in skip or val is None:
            continue
        if ns.cmd == "sweep" and key in _AXES and "," in val:
            val = val.split(",")
        params[key] = val
    base["parameters"] = params
    if ns.seed is not None:
        base["seed"] = ns.seed
    if ns.out is not None:
        base["output_path"] = ns.out
    if ns.format is not None:
        base["output_format"] = ns.format
    elif ns.out and ns.out.endswith(".csv") and "output_format" not in base:
        base["output_format"] = "csv"
    return ExperimentConfig.from_dict(base)


def main(argv=None) -> int:
    try:
        ns = build_parser().parse_args(argv)
    except SystemExit as exc:  # usage errors (status 1), --help and --version (status 0)
        return exc.code if isinstance(exc.code, int) else 1
    try:
        cfg = _config_from_args(ns)
        run(cfg, echo=sys.stdout)
    except ToleranceError as exc:
        print(f"tolerance failure: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
