"""Ingham / Nazarov ratio functionals and empirical search for their best constants.

Three ratios are supported, each an interval norm over ``[-T/2, T/2]`` (with the
``1/T`` prefactor) divided by a coefficient norm:

* ``NAZAROV_L1``: ``L^1`` against ``sum_k |a_k| / (1 + k)`` on a window ``0..N``
* ``INGHAM_L1``: ``L^1`` against ``max_k |a_k|`` on a symmetric window ``-N..N``
* ``INGHAM_L2``: ``L^2`` squared against ``sum_k |a_k|^2``

``estimate_constant`` minimises a ratio over coefficient vectors. The minimum it
returns is an *empirical upper bound* on the true constant, never a certified value.
"""

from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Callable, Sequence

import numpy as np

from .errors import BudgetError, IndexMisalignmentError, SupportViolationError, ZeroVectorError
from .quadrature import PanelIntegrator, QuadratureSpec
from .spectra import FrequencySequence
from .trigpoly import TrigPoly, gram_matrix, interval_integral, l2_norm_sq

__all__ = [
    "RatioKind",
    "SearchStrategy",
    "ConstantEstimate",
    "SweepRow",
    "ratio",
    "batch_ratio",
    "coefficient_norm",
    "tail_window_ratio",
    "estimate_constant",
    "constant_sweep",
    "power_family",
    "linear_family",
    "LABEL",
]

LABEL = "empirical upper bound"

# tags that keep the auxiliary random streams apart from the per-restart streams
_PROBE_STREAM = 1 << 20
_TAIL_STREAM = (1 << 20) + 1


class RatioKind(str, Enum):
    NAZAROV_L1 = "nazarov"
    INGHAM_L1 = "ingham-l1"
    INGHAM_L2 = "ingham-l2"


def _check_alignment(kind: RatioKind, seq: FrequencySequence):
    if kind is RatioKind.NAZAROV_L1 and seq.index_lo != 0:
        raise IndexMisalignmentError(
            f"nazarov ratio needs a one-sided window starting at 0, got {seq.index_lo}..{seq.index_hi}"
        )
    if kind is RatioKind.INGHAM_L1 and seq.index_lo != -seq.index_hi:
        raise IndexMisalignmentError(
            f"ingham-l1 ratio needs a symmetric window -N..N, got {seq.index_lo}..{seq.index_hi}"
        )


def coefficient_norm(kind: RatioKind, indices, coeffs) -> np.ndarray:
    """Denominator of the ratio; ``coeffs`` has shape ``(n,)`` or ``(B, n)``.

    The Nazarov weight is ``1 / (1 + |k|)`` with ``k`` the true index.
    """
    kind = RatioKind(kind)
    A = np.abs(np.asarray(coeffs, dtype=complex))
    if kind is RatioKind.NAZAROV_L1:
        w = 1.0 / (1.0 + np.abs(np.asarray(indices, dtype=float)))
        return A @ w
    if kind is RatioKind.INGHAM_L1:
        return A.max(axis=-1) if A.shape[-1] else np.zeros(A.shape[:-1])
    return (A * A).sum(axis=-1)


def _as_coeffs(seq, coeffs):
    a = np.asarray(coeffs, dtype=complex).ravel()
    if a.size != len(seq):
        raise IndexMisalignmentError(f"{a.size} coefficients for a window of {len(seq)} indices")
    return a


def ratio(kind, seq: FrequencySequence, coeffs, T: float, q: QuadratureSpec | None = None) -> float:
    """Interval norm of ``sum a_k e^{2 pi i lambda_k t}`` over its coefficient norm.

    ``coeffs[i]`` belongs to index ``seq.index_lo + i``. For ``INGHAM_L2`` both norms
    are squared.
    """
    kind = RatioKind(kind)
    _check_alignment(kind, seq)
    a = _as_coeffs(seq, coeffs)
    den = float(coefficient_norm(kind, seq.indices, a))
    if den == 0.0:
        raise ZeroVectorError("coefficient vector is zero")
    p = TrigPoly(seq.values, a)
    if kind is RatioKind.INGHAM_L2:
        return l2_norm_sq(p, T) / den
    return interval_integral(p, T, q).value / den


def tail_window_ratio(kind, seq: FrequencySequence, coeffs, T: float, K: int,
                      q: QuadratureSpec | None = None) -> float:
    """Ratio for coefficients supported on ``|k| >= K``, weighted by the original indices.

    Unlike ``ratio`` no window alignment is required: the tail polynomial keeps its
    frequencies and the Nazarov weight of index ``k`` stays ``1 / (1 + |k|)``.
    """
    kind = RatioKind(kind)
    a = _as_coeffs(seq, coeffs)
    k = seq.indices
    inside = np.abs(k) < K
    if np.any(a[inside] != 0):
        bad = int(k[inside][np.flatnonzero(a[inside] != 0)[0]])
        raise SupportViolationError(f"coefficient at index {bad} lies inside |k| < {K}")
    den = float(coefficient_norm(kind, k, a))
    if den == 0.0:
        raise ZeroVectorError("coefficient vector is zero")
    p = TrigPoly(seq.values, a)
    if kind is RatioKind.INGHAM_L2:
        return l2_norm_sq(p, T) / den
    return interval_integral(p, T, q).value / den


class _Numerator:
    """Batched interval norm for a fixed frequency window."""

    def __init__(self, kind, seq, T, q):
        self.kind = kind
        if kind is RatioKind.INGHAM_L2:
            self.G = gram_matrix(seq.values, T)
        else:
            self.integrator = PanelIntegrator(seq.values, T, q, power=1)

    def __call__(self, A):  # A: (B, n)
        if self.kind is RatioKind.INGHAM_L2:
            return np.einsum("bi,ij,bj->b", A.conj(), self.G, A).real
        return self.integrator.integrate(A.T)[0]


def batch_ratio(kind, seq: FrequencySequence, coeffs, T: float, q: QuadratureSpec | None = None,
                *, aligned: bool = True) -> np.ndarray:
    """Ratios of every row of ``coeffs`` (shape ``(B, n)``); zero rows give ``inf``.

    ``aligned=False`` skips the window check, which evaluates e.g. the Nazarov
    weighting on a symmetric window.
    """
    kind = RatioKind(kind)
    if aligned:
        _check_alignment(kind, seq)
    A = np.atleast_2d(np.asarray(coeffs, dtype=complex))
    if A.shape[1] != len(seq):
        raise IndexMisalignmentError(f"{A.shape[1]} coefficients for a window of {len(seq)} indices")
    return _batch(kind, seq.indices, _Numerator(kind, seq, T, q), A)


def _batch(kind, indices, numer, A):
    den = coefficient_norm(kind, indices, A)
    out = np.full(A.shape[0], np.inf)
    ok = den > 0
    if ok.any():
        scale = np.sqrt(den[ok]) if kind is RatioKind.INGHAM_L2 else den[ok]
        An = A[ok] / scale[:, None]
        out[ok] = numer(An) / coefficient_norm(kind, indices, An)
    return out


# --------------------------------------------------------------------------
# Search


@dataclass(frozen=True)
class SearchStrategy:
    """Knobs of the two-phase extremal search.

    Attributes
    ----------
    restarts : int
        Local descents; the first ``structured_starts`` begin at the best structured
        witnesses, the rest at random points.
    levels : int
        Step levels ``0.5**level`` of the compass descent.
    sweeps_per_level : int
        Maximum accepted moves per level.
    random_probes : int
        Random vectors evaluated in the structured phase.
    """

    restarts: int = 16
    levels: int = 8
    sweeps_per_level: int = 12
    structured_starts: int = 4
    random_probes: int = 32
    tail_batch: int = 64

    def __post_init__(self):
        for name in ("restarts", "levels", "sweeps_per_level", "random_probes", "tail_batch"):
            if getattr(self, name) < (1 if name == "tail_batch" else 0):
                raise ValueError(f"{name} must be non-negative")


@dataclass
class ConstantEstimate:
    kind: RatioKind
    T: float
    window: tuple
    min_ratio: float
    witness: np.ndarray
    evaluations: int
    seed: int
    search_trace: list = field(default_factory=list)
    label: str = LABEL
    strategy: SearchStrategy = field(default_factory=SearchStrategy)
    wall_time: float = 0.0

    def to_dict(self) -> dict:
        return {
            "kind": RatioKind(self.kind).value,
            "T": float(self.T),
            "window": [int(self.window[0]), int(self.window[1])],
            "min_ratio": float(self.min_ratio),
            "label": self.label,
            "witness": [[float(z.real), float(z.imag)] for z in self.witness],
            "evaluations": int(self.evaluations),
            "seed": int(self.seed),
            "search_trace": [[int(i), float(r)] for i, r in self.search_trace],
            "strategy": asdict(self.strategy),
        }


class _Exhausted(Exception):
    pass


class _Evaluator:
    """Counts evaluations against the budget and tracks the incumbent.

    Every batch is computed in full and only its first ``remaining`` entries are
    used, so the run with a smaller budget is an exact prefix of a larger one.
    """

    def __init__(self, kind, indices, numer, budget):
        self.kind = kind
        self.indices = indices
        self.numer = numer
        self.remaining = budget
        self.count = 0
        self.best = math.inf
        self.witness = None
        self.trace = []

    def __call__(self, A):
        if self.remaining <= 0:
            raise _Exhausted
        vals = _batch(self.kind, self.indices, self.numer, A)
        use = min(len(vals), self.remaining)
        if use:
            i = int(np.argmin(vals[:use]))
            if vals[i] < self.best:
                self.best = float(vals[i])
                self.witness = A[i].copy()
                self.trace.append((self.count + i + 1, self.best))
        self.count += use
        self.remaining -= use
        if use < len(vals):
            raise _Exhausted
        return vals


def _structured(kind, seq, G, rng, probes):
    n = len(seq)
    rows = [np.eye(n, dtype=complex)]
    rows.append(np.ones((1, n), dtype=complex))
    rows.append(((-1.0) ** np.arange(n))[None, :].astype(complex))
    if n > 1:
        P = np.zeros((n - 1, n), dtype=complex)
        j = np.arange(n - 1)
        P[j, j], P[j, j + 1] = 1.0, -1.0
        rows.append(P)
    if seq.index_lo == -seq.index_hi and n > 1:
        N = seq.index_hi
        for sign in (-1.0, 1.0):
            M = np.zeros((N, n), dtype=complex)
            j = np.arange(N)
            M[j, N + 1 + j] = 1.0
            M[j, N - 1 - j] = sign
            rows.append(M)
    # smallest generalised eigenvectors of (Gram, weight^2): L^2 surrogates of the extremal
    w = 1.0 / (1.0 + np.abs(seq.indices)) if kind is RatioKind.NAZAROV_L1 else np.ones(n)
    _, V = np.linalg.eigh(G / np.outer(w, w))
    rows.append((V[:, : min(n, 4)] / w[:, None]).T.astype(complex))
    if probes:
        phase = np.exp(2j * np.pi * rng.random((probes, n)))
        mag = np.ones((probes, n))
        mag[1::2] = rng.exponential(size=(probes // 2, n))
        rows.append(mag * phase)
    return np.vstack(rows)


def _polar(A):
    return np.abs(A), np.angle(A)


def _descend(ev, r, phi, f, strat: SearchStrategy):
    n = r.size
    idx = np.arange(n)
    for level in range(strat.levels):
        s = 0.5**level
        for _ in range(strat.sweeps_per_level):
            step = s * r.max()
            R = np.repeat(r[None, :], 4 * n, axis=0)
            Ph = np.repeat(phi[None, :], 4 * n, axis=0)
            R[idx, idx] += step
            R[n + idx, idx] = np.maximum(r - step, 0.0)
            Ph[2 * n + idx, idx] += np.pi * s
            Ph[3 * n + idx, idx] -= np.pi * s
            vals = ev(R * np.exp(1j * Ph))
            # combined move: every improving coordinate at once
            v = vals.reshape(4, n)
            rc, pc = r.copy(), phi.copy()
            br = np.argmin(v[:2], axis=0)
            gain_r = v[br, idx] < f
            rc[gain_r] = R[br[gain_r] * n + idx[gain_r], idx[gain_r]]
            bp = np.argmin(v[2:], axis=0)
            gain_p = v[2 + bp, idx] < f
            pc[gain_p] = Ph[(2 + bp[gain_p]) * n + idx[gain_p], idx[gain_p]]
            comb = ev((rc * np.exp(1j * pc))[None, :])[0]
            i = int(np.argmin(vals))
            if comb < vals[i] and comb < f:
                r, phi, f = rc, pc, comb
            elif vals[i] < f:
                r, phi, f = R[i].copy(), Ph[i].copy(), vals[i]
            else:
                break
            r = r / r.max()
    return r, phi, f


def estimate_constant(kind, seq: FrequencySequence, T: float, window=None,
                      strategy: SearchStrategy | None = None, budget: int = 10_000, seed: int = 0,
                      q: QuadratureSpec | None = None) -> ConstantEstimate:
    """Smallest ratio found over coefficient vectors on ``window`` (default: all of ``seq``).

    Phase (a) evaluates structured witnesses: single spikes, all-ones, alternating
    signs, adjacent ``(1, -1)`` pairs, mirrored ``(k, -k)`` pairs on symmetric windows
    and random probes. Phase (b) runs compass descent in (magnitude, phase)
    coordinates from several starts. Leftover budget is spent on random sampling.

    The sequence of evaluations does not depend on ``budget``, so ``min_ratio`` is
    non-increasing in ``budget`` for a fixed ``seed``.

    Returns
    -------
    ConstantEstimate
        ``min_ratio`` is an empirical upper bound on the best constant.
    """
    kind = RatioKind(kind)
    if budget < 1:
        raise BudgetError("budget must be at least 1 evaluation")
    strat = strategy or SearchStrategy()
    if window is not None:
        seq = seq.window(*window)
    _check_alignment(kind, seq)
    n = len(seq)
    t0 = time.perf_counter()
    ev = _Evaluator(kind, seq.indices, _Numerator(kind, seq, T, q), budget)

    def stream(tag):
        return np.random.default_rng(np.random.SeedSequence([seed, tag]))

    try:
        S = _structured(kind, seq, gram_matrix(seq.values, T), stream(_PROBE_STREAM), strat.random_probes)
        svals = ev(S)
        starts = np.argsort(svals, kind="stable")[: strat.structured_starts]
        for r_i in range(strat.restarts):
            if r_i < len(starts):
                r, phi = _polar(S[starts[r_i]])
            else:
                rng = stream(r_i)
                r, phi = rng.exponential(size=n), rng.uniform(0.0, 2 * np.pi, n)
            r = r / r.max()
            f = ev((r * np.exp(1j * phi))[None, :])[0]
            _descend(ev, r, phi, f, strat)
        rng = stream(_TAIL_STREAM)
        while True:
            B = strat.tail_batch
            mag = rng.exponential(size=(B, n))
            mag[::2] = 1.0
            ev(mag * np.exp(2j * np.pi * rng.random((B, n))))
    except _Exhausted:
        pass

    w = ev.witness
    den = float(coefficient_norm(kind, seq.indices, w))
    w = w / (math.sqrt(den) if kind is RatioKind.INGHAM_L2 else den)
    return ConstantEstimate(
        kind=kind, T=float(T), window=(seq.index_lo, seq.index_hi), min_ratio=ev.best,
        witness=w, evaluations=ev.count, seed=int(seed), search_trace=ev.trace,
        strategy=strat, wall_time=time.perf_counter() - t0,
    )


# --------------------------------------------------------------------------
# Sweeps


def power_family(p: float, scale: float = 1.0) -> Callable[[int, bool], FrequencySequence]:
    """``lambda_k = scale * sign(k) |k|^p`` on ``0..N`` (one-sided) or ``-N..N``."""

    def family(N: int, symmetric: bool) -> FrequencySequence:
        k = np.arange(-N if symmetric else 0, N + 1)
        return FrequencySequence(scale * np.sign(k) * np.abs(k).astype(float) ** p, int(k[0]))

    family.__name__ = f"power_{p:g}"
    return family


def linear_family(gamma: float = 1.0):
    """``lambda_k = gamma * k``: uniform gap ``gamma``."""
    return power_family(1.0, gamma)


@dataclass
class SweepRow:
    T: float
    N: int
    estimate: ConstantEstimate | None
    error: str | None = None


def constant_sweep(kind, family, T_list: Sequence[float], N_list: Sequence[int],
                   strategy: SearchStrategy | None = None, budget: int = 10_000, seed: int = 0,
                   q: QuadratureSpec | None = None) -> list[SweepRow]:
    """One ``estimate_constant`` per ``(T, N)``, ``T`` outermost; every cell uses ``seed``.

    Errors in a cell are recorded in its row and do not stop the sweep.
    """
    kind = RatioKind(kind)
    symmetric = kind is not RatioKind.NAZAROV_L1
    rows = []
    for T in T_list:
        for N in N_list:
            try:
                est = estimate_constant(kind, family(N, symmetric), T, None, strategy, budget, seed, q)
                rows.append(SweepRow(float(T), int(N), est))
            except (ValueError, ArithmeticError) as exc:
                rows.append(SweepRow(float(T), int(N), None, f"{type(exc).__name__}: {exc}"))
    return rows
