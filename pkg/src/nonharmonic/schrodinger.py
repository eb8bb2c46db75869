"""Spectral solutions of the periodic (generalised) Schrodinger equation seen by a moving sensor.

With finitely many modes ``u0 = sum_k c_k e^{2 pi i k x}`` the solution is exact:

    u(t, x) = sum_k c_k exp(2 pi i (s P(k) t + k x)),   s = spec.time_sign

Along the path ``(t0 + t, x0 + a t)`` it becomes the trigonometric polynomial
``v(t) = sum_k d_k exp(2 pi i s lambda_k t)`` with ``d_k = c_k exp(2 pi i (s P(k) t0 + k x0))``
and ``lambda_k = P(k) + drift * k``; in particular ``|d_k| = |c_k|``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DegeneratePairError, FrequencyCollisionError, NotExceptionalError
from .quadrature import PanelIntegrator, QuadratureSpec
from .spectra import (
    EXCEPTIONAL_TOL,
    Convention,
    DispersionSpectrum,
    exceptional_set_member,
    is_integer_velocity,
    q_symmetric_poly,
)
from .trigpoly import TrigPoly, l1_norm

__all__ = [
    "InitialData",
    "SensorPath",
    "Regime",
    "ObservabilityReport",
    "BatteryResult",
    "solution_eval",
    "restrict_to_path",
    "observability_functional",
    "observability_battery",
    "classify_velocity",
    "integer_velocity_counterexample",
    "exceptional_velocity_counterexample",
    "path_residual",
    "grid_sample",
]

# default half-width of the box searched for exceptional-velocity witnesses
E_SEARCH_BOUND = 32


@dataclass(frozen=True)
class InitialData:
    """Finitely many Fourier modes ``(k, c_k)`` of ``u0``."""

    modes: tuple = ()

    def __post_init__(self):
        modes = tuple((int(k), complex(c)) for k, c in self.modes)
        ks = [k for k, _ in modes]
        if len(set(ks)) != len(ks):
            raise ValueError("mode indices must be distinct")
        object.__setattr__(self, "modes", modes)

    @classmethod
    def from_arrays(cls, indices, coeffs) -> "InitialData":
        return cls(tuple(zip(np.asarray(indices).tolist(), np.asarray(coeffs, dtype=complex).tolist())))

    @property
    def indices(self) -> np.ndarray:
        return np.array([k for k, _ in self.modes], dtype=np.int64)

    @property
    def coeffs(self) -> np.ndarray:
        return np.array([c for _, c in self.modes], dtype=complex)

    @property
    def wiener_norm(self) -> float:
        """``sum_k |c_k|``."""
        return math.fsum(abs(c) for _, c in self.modes)

    def __len__(self):
        return len(self.modes)


@dataclass(frozen=True)
class SensorPath:
    """Sensor at ``(t0 + t, x0 + a t)``; ``x0`` is reduced mod 1."""

    t0: float = 0.0
    x0: float = 0.0
    a: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "x0", self.x0 % 1)


class Regime(str, Enum):
    GENERIC = "Generic"
    INTEGER_VELOCITY = "IntegerVelocity"
    EXCEPTIONAL_VELOCITY = "ExceptionalVelocity"


@dataclass
class ObservabilityReport:
    path: SensorPath
    T: float
    functional_value: float
    weighted_coeff_norm: float
    sup_coeff_norm: float
    ratio: float | None
    regime: Regime
    witness: tuple | None = None
    error: float = 0.0
    converged: bool = True
    caveat: str = ""

    def to_dict(self) -> dict:
        return {
            "path": {"t0": float(self.path.t0), "x0": float(self.path.x0), "a": float(self.path.a)},
            "T": float(self.T),
            "functional_value": float(self.functional_value),
            "weighted_coeff_norm": float(self.weighted_coeff_norm),
            "sup_coeff_norm": float(self.sup_coeff_norm),
            "ratio": None if self.ratio is None else float(self.ratio),
            "regime": self.regime.value,
            "witness": None if self.witness is None else list(self.witness),
            "error": float(self.error),
            "converged": bool(self.converged),
            "caveat": self.caveat,
        }


def _phase_frac(x):
    # reduce before multiplying by 2 pi so that large P(k) t0 keeps its accuracy
    return np.asarray(x, dtype=float) % 1.0


def solution_eval(spec: DispersionSpectrum, u0: InitialData, t, x):
    """``u(t, x)`` by direct summation; ``t`` and ``x`` broadcast against each other."""
    t = np.asarray(t, dtype=float)
    x = np.asarray(x, dtype=float)
    shape = np.broadcast_shapes(t.shape, x.shape)
    out = np.zeros(shape, dtype=complex)
    s = spec.time_sign
    for k, c in u0.modes:
        pk = float(spec.poly_exact(k)) if spec.exact else float(spec.poly(k))
        out = out + c * np.exp(2j * np.pi * _phase_frac(s * pk * t + k * x))
    return complex(out) if out.ndim == 0 else out


def _path_spectrum(spec: DispersionSpectrum, path: SensorPath) -> DispersionSpectrum:
    # the path's velocity is authoritative
    return spec.with_velocity(path.a)


def _path_data(spec, u0, path):
    sp = _path_spectrum(spec, path)
    ks = u0.indices
    s = sp.time_sign
    P = sp.poly(ks) if len(ks) else np.zeros(0)
    d = u0.coeffs * np.exp(2j * np.pi * _phase_frac(s * P * path.t0 + ks * path.x0))
    lam = sp.lambdas(ks) if len(ks) else np.zeros(0)
    return sp, ks, d, s * lam


def _collisions(sp, ks, freqs):
    """First pair of mode indices sharing a path frequency, or ``None``."""
    if sp.exact:
        seen = {}
        for k in ks.tolist():
            v = sp.lambda_exact(k)
            if v in seen:
                return (seen[v], k)
            seen[v] = k
        return None
    order = np.argsort(freqs, kind="stable")
    f = freqs[order]
    close = np.abs(np.diff(f)) <= EXCEPTIONAL_TOL * (1.0 + np.abs(f[1:]))
    if close.any():
        i = int(np.flatnonzero(close)[0])
        return (int(ks[order[i]]), int(ks[order[i + 1]]))
    return None


def restrict_to_path(spec: DispersionSpectrum, u0: InitialData, path: SensorPath,
                     on_collision: str = "raise") -> TrigPoly:
    """``v(t) = u(t0 + t, x0 + a t)`` as a trigonometric polynomial in ``t``.

    ``path.a`` overrides ``spec.velocity``. Colliding frequencies raise
    ``FrequencyCollisionError`` carrying the index pair; ``on_collision="merge"``
    adds their coefficients instead.
    """
    if on_collision not in ("raise", "merge"):
        raise ValueError("on_collision must be 'raise' or 'merge'")
    sp, ks, d, freqs = _path_data(spec, u0, path)
    pair = _collisions(sp, ks, freqs)
    if pair is None:
        return TrigPoly(freqs, d)
    if on_collision == "raise":
        raise FrequencyCollisionError(
            f"modes {pair[0]} and {pair[1]} share a path frequency, so a = {path.a!r} lies in E",
            pair=pair,
        )
    groups: dict = {}
    for k, f, c in zip(ks.tolist(), freqs.tolist(), d.tolist()):
        key = sp.lambda_exact(k) if sp.exact else None
        if key is None:
            key = next((g for g in groups if abs(g - f) <= EXCEPTIONAL_TOL * (1.0 + abs(f))), f)
        groups.setdefault(key, [f, 0j])
        groups[key][1] += c
    return TrigPoly([g[0] for g in groups.values()], [g[1] for g in groups.values()])


def classify_velocity(spec: DispersionSpectrum, a, bound: int = E_SEARCH_BOUND):
    """``(regime, witness)`` for velocity ``a``.

    A velocity with a collision witness ``(k, m)``, ``|k|, |m| <= bound``, is
    ``IntegerVelocity`` when ``a`` is an integer and ``ExceptionalVelocity`` otherwise;
    without a witness it is ``Generic``.
    """
    witness = exceptional_set_member(spec.with_velocity(a), bound)
    if witness is None:
        return Regime.GENERIC, None
    if is_integer_velocity(a):
        return Regime.INTEGER_VELOCITY, witness
    return Regime.EXCEPTIONAL_VELOCITY, witness


def _caveat(bound):
    return (f"exceptional-set search limited to |k|, |m| <= {bound}; "
            "'Generic' means no collision was found there, not that a lies outside E")


def observability_functional(spec: DispersionSpectrum, u0: InitialData, path: SensorPath, T: float,
                             q: QuadratureSpec | None = None, *, e_bound: int | None = None,
                             on_collision: str = "merge") -> ObservabilityReport:
    """``(1/T) int_0^T |u(t0 + t, x0 + a t)| dt`` with the coefficient norms it is compared to.

    The window ``[0, T]`` is moved onto ``[-T/2, T/2]`` by the time shift ``T/2``.
    ``ratio`` is ``None`` when ``u0`` vanishes.
    """
    if not T > 0:
        raise ValueError("T must be positive")
    ks = u0.indices
    bound = e_bound or max(E_SEARCH_BOUND, int(np.abs(ks).max()) if len(ks) else 0)
    regime, witness = classify_velocity(spec, path.a, bound)
    v = restrict_to_path(spec, u0, path, on_collision=on_collision).shift_time(T / 2)
    res = l1_norm(v, T, q)
    a = np.abs(u0.coeffs)
    weighted = math.fsum((a / (1.0 + np.abs(ks))).tolist())
    sup = float(a.max()) if a.size else 0.0
    return ObservabilityReport(
        path=path, T=float(T), functional_value=res.value, weighted_coeff_norm=weighted,
        sup_coeff_norm=sup, ratio=res.value / weighted if weighted > 0 else None,
        regime=regime, witness=witness, error=res.error, converged=res.converged,
        caveat=_caveat(bound),
    )


@dataclass
class BatteryResult:
    ratios: np.ndarray
    converged: np.ndarray
    seed: int

    @property
    def min_ratio(self) -> float:
        return float(self.ratios.min())


def observability_battery(spec: DispersionSpectrum, path: SensorPath, T: float, modes, n_data: int,
                          seed: int = 0, q: QuadratureSpec | None = None) -> BatteryResult:
    """Ratios ``functional / sum |c_k| / (1 + |k|)`` for ``n_data`` random initial data on ``modes``.

    Magnitudes are unit-exponential and phases uniform, drawn from ``default_rng(seed)``.
    """
    ks = np.asarray(list(modes), dtype=np.int64)
    rng = np.random.default_rng(seed)
    C = rng.exponential(size=(n_data, ks.size)) * np.exp(2j * np.pi * rng.random((n_data, ks.size)))
    sp, _, rot, freqs = _path_data(spec, InitialData.from_arrays(ks, np.ones(ks.size)), path)
    pair = _collisions(sp, ks, freqs)
    if pair is not None:
        raise FrequencyCollisionError(f"modes {pair[0]} and {pair[1]} share a path frequency", pair=pair)
    D = C * (rot * np.exp(1j * np.pi * freqs * T))[None, :]  # path phases and the T/2 shift
    vals, _, conv = PanelIntegrator(freqs, T, q).integrate(D.T)
    weighted = np.abs(C) @ (1.0 / (1.0 + np.abs(ks)))
    return BatteryResult(vals / weighted, conv, int(seed))


def exceptional_velocity_counterexample(spec: DispersionSpectrum, witness, t0: float = 0.0,
                                        x0: float = 0.0, c_k: complex = 1.0) -> InitialData:
    """Two-mode datum on ``witness = (k, m)`` whose trace on the path vanishes identically.

    Requires ``lambda_k == lambda_m``, i.e. ``Q(k, m)`` equal to the collision target
    (``a`` in the general convention, ``-a`` in the quadratic one). ``c_m`` is chosen so
    that ``d_m = -d_k``.
    """
    k, m = (int(w) for w in witness)
    if k == m:
        raise DegeneratePairError(f"witness indices coincide: {k}")
    Q = q_symmetric_poly(spec, k, m)
    target = spec.collision_target
    if spec.exact:
        hit = Q == target
    else:
        hit = abs(float(Q) - float(target)) <= EXCEPTIONAL_TOL * (1.0 + abs(float(spec.velocity)))
    if not hit:
        raise NotExceptionalError(f"Q({k}, {m}) = {Q} differs from {target}; the frequencies do not collide")
    s = spec.time_sign
    theta = [s * float(spec.poly(j)) * t0 + j * x0 for j in (k, m)]
    c_m = -complex(c_k) * np.exp(2j * np.pi * _phase_frac(theta[0] - theta[1]))
    return InitialData(((k, c_k), (m, complex(c_m))))


def integer_velocity_counterexample(a: int, k: int, t0: float = 0.0, x0: float = 0.0,
                                    c_k: complex = 1.0) -> InitialData:
    """Free Schrodinger (``lambda_k = k^2 + a k``) at integer ``a``: modes ``k`` and ``-a-k``.

    ``lambda_k = lambda_{-a-k}``; the second coefficient is
    ``c_{-a-k} = -c_k exp(2 pi i [(k^2 t0 + k x0) - ((a+k)^2 t0 - (a+k) x0)])``.
    """
    if not is_integer_velocity(a):
        raise NotExceptionalError(f"a = {a!r} is not an integer")
    a = int(round(a))
    m = -a - k
    if m == k:
        raise DegeneratePairError(f"-a-k = {m} equals k; choose 2k != -a")
    spec = DispersionSpectrum((0, 0, 1), a, Convention.QUADRATIC)
    return exceptional_velocity_counterexample(spec, (k, m), t0, x0, c_k)


def path_residual(spec: DispersionSpectrum, u0: InitialData, path: SensorPath, T: float = 1.0,
                  samples: int = 1000) -> float:
    """``max |u(t0 + t, x0 + a t)|`` over ``samples`` equispaced ``t`` in ``[0, T]``.

    Evaluated directly from ``solution_eval``, independent of ``restrict_to_path``.
    """
    t = np.linspace(0.0, T, samples)
    sp = _path_spectrum(spec, path)
    vals = solution_eval(sp, u0, path.t0 + t, path.x0 + path.a * t)
    return float(np.max(np.abs(vals))) if len(u0) else 0.0


def grid_sample(spec: DispersionSpectrum, u0: InitialData, t_range=(0.0, 1.0, 64), x_resolution: int = 64):
    """``|u(t_i, x_j)|`` with ``t_i = linspace(*t_range)`` (rows) and ``x_j = j / x_resolution``."""
    t = np.linspace(*t_range)
    x = np.arange(x_resolution) / x_resolution
    if not len(u0):
        return np.zeros((t.size, x.size))
    return np.abs(solution_eval(spec, u0, t[:, None], x[None, :]))
