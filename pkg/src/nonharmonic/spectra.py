"""Frequency sequences, polynomial dispersion spectra and their increasing rearrangements.

Two sign conventions are in use for the path frequencies of a sensor moving at
velocity ``a``:

* ``Convention.QUADRATIC``: ``lambda_k = P(k) + a*k`` (free Schrodinger, ``P = X^2``)
* ``Convention.GENERAL``:   ``lambda_k = P(k) - a*k`` (higher order equations)

Internally both are ``lambda_k = P(k) + drift*k``; ``DispersionSpectrum.drift``
carries the sign so that the two are never mixed silently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from numbers import Rational

import numpy as np

from .errors import (
    EqualIndicesError,
    FrequencyCollisionError,
    HalfIntegerBoundaryError,
    IntegerVelocityError,
    NoThresholdIndexError,
    OddDegreeError,
    WindowTooSmallError,
)

__all__ = [
    "Convention",
    "FrequencySequence",
    "RawSpectrum",
    "GapReport",
    "DispersionSpectrum",
    "Q0Case",
    "Reordering",
    "min_gap",
    "gap_threshold_index",
    "quadratic_spectrum",
    "quadratic_split",
    "interlacing_gaps",
    "quadratic_interlace",
    "q_symmetric_poly",
    "exceptional_set_member",
    "alpha_q",
    "find_q0",
    "reorder",
    "is_integer_velocity",
]

# |a - round(a)| below this counts as an integer velocity
INTEGER_TOL = 1e-12
# |Q(k,m) - a| <= EXCEPTIONAL_TOL * (1 + |a|) counts as a in E (float inputs only)
EXCEPTIONAL_TOL = 1e-12
# trailing interlacing steps required before a tail is declared stable
STABLE_STEPS = 8


def _is_exact(x) -> bool:
    return isinstance(x, Rational) and not isinstance(x, bool)


def _as_exact(x):
    """Python int / Fraction view of an exact number."""
    if isinstance(x, int):
        return x
    return Fraction(x)


def is_integer_velocity(a) -> bool:
    if _is_exact(a):
        return Fraction(a).denominator == 1
    return abs(a - round(a)) <= INTEGER_TOL


def _signed_order(bound: int) -> list[int]:
    """0, -1, 1, -2, 2, ..., -bound, bound."""
    out = [0]
    for j in range(1, bound + 1):
        out += [-j, j]
    return out


# --------------------------------------------------------------------------
# Sequences


@dataclass(frozen=True, eq=False)
class FrequencySequence:
    """Strictly increasing frequencies ``values[i]`` attached to indices ``index_lo + i``."""

    values: np.ndarray
    index_lo: int = 0

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        if v.ndim != 1:
            raise ValueError("values must be one-dimensional")
        d = np.diff(v)
        if np.any(d == 0):
            i = int(np.flatnonzero(d == 0)[0])
            lo = int(self.index_lo)
            raise FrequencyCollisionError(
                f"duplicate frequency {v[i]!r} at indices {lo + i} and {lo + i + 1}",
                pair=(lo + i, lo + i + 1),
            )
        if np.any(d < 0):
            raise ValueError("frequencies must be strictly increasing in index")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "index_lo", int(self.index_lo))

    @property
    def index_hi(self) -> int:
        return self.index_lo + len(self.values) - 1

    @property
    def indices(self) -> np.ndarray:
        return np.arange(self.index_lo, self.index_hi + 1)

    @property
    def gaps(self) -> np.ndarray:
        return np.diff(self.values)

    def __len__(self):
        return len(self.values)

    def __getitem__(self, k: int) -> float:
        if not self.index_lo <= k <= self.index_hi:
            raise IndexError(f"index {k} outside [{self.index_lo}, {self.index_hi}]")
        return float(self.values[k - self.index_lo])

    def window(self, lo: int, hi: int) -> "FrequencySequence":
        if lo < self.index_lo or hi > self.index_hi or hi < lo:
            raise IndexError(f"window [{lo}, {hi}] not inside [{self.index_lo}, {self.index_hi}]")
        return FrequencySequence(self.values[lo - self.index_lo : hi - self.index_lo + 1], lo)

    def translate(self, s: float) -> "FrequencySequence":
        return FrequencySequence(self.values + s, self.index_lo)

    def __repr__(self):
        return f"FrequencySequence(index_lo={self.index_lo}, values={self.values.tolist()!r})"


@dataclass(frozen=True, eq=False)
class RawSpectrum:
    """Frequencies in raw index order, possibly unsorted and possibly colliding."""

    indices: np.ndarray
    values: np.ndarray
    exact_values: tuple | None = None

    def sorted(self) -> tuple[FrequencySequence, np.ndarray]:
        """Ascending rearrangement indexed from 0, plus the source index of each entry.

        Raises ``FrequencyCollisionError`` if two indices share a frequency.
        """
        if self.exact_values is not None:
            order = sorted(range(len(self.indices)), key=lambda i: self.exact_values[i])
            for i, j in zip(order, order[1:]):
                if self.exact_values[i] == self.exact_values[j]:
                    raise FrequencyCollisionError(
                        f"indices {self.indices[i]} and {self.indices[j]} share frequency "
                        f"{self.exact_values[i]}",
                        pair=(int(self.indices[i]), int(self.indices[j])),
                    )
            order = np.array(order, dtype=int)
        else:
            order = np.argsort(self.values, kind="stable")
            v = self.values[order]
            close = np.abs(np.diff(v)) <= EXCEPTIONAL_TOL * (1.0 + np.abs(v[1:]))
            if np.any(close):
                i = int(np.flatnonzero(close)[0])
                pair = (int(self.indices[order[i]]), int(self.indices[order[i + 1]]))
                raise FrequencyCollisionError(
                    f"indices {pair[0]} and {pair[1]} share frequency {v[i]!r}", pair=pair
                )
        return FrequencySequence(self.values[order], 0), self.indices[order]


@dataclass(frozen=True)
class GapReport:
    min_gap: float
    threshold: float
    threshold_index: int
    gaps: tuple


def min_gap(seq: FrequencySequence) -> float:
    if len(seq) < 2:
        raise WindowTooSmallError("need at least two frequencies to measure a gap")
    return float(np.min(seq.gaps))


def gap_threshold_index(seq: FrequencySequence, threshold: float) -> GapReport:
    """Smallest ``K >= 0`` with ``values[k+1] - values[k] >= threshold`` whenever ``|k| >= K``.

    The gap at index ``k`` is the one starting at ``k``. ``K`` must leave at least one
    stored gap to test; otherwise the window cannot witness the threshold and
    ``NoThresholdIndexError`` is raised.
    """
    gaps = seq.gaps
    if len(gaps) == 0:
        raise WindowTooSmallError("need at least two frequencies to measure a gap")
    k = np.abs(np.arange(seq.index_lo, seq.index_hi))
    bad = k[gaps < threshold]
    K = int(bad.max()) + 1 if bad.size else 0
    if not np.any(k >= K):
        raise NoThresholdIndexError(
            f"no index K inside [{seq.index_lo}, {seq.index_hi}] has all gaps beyond it >= {threshold}"
        )
    return GapReport(float(gaps.min()), float(threshold), K, tuple(float(g) for g in gaps))


# --------------------------------------------------------------------------
# Quadratic (free Schrodinger) spectrum


def _quad_value(a, k):
    return k * k + a * k


def quadratic_spectrum(a, N: int) -> RawSpectrum:
    """``lambda_k = k^2 + a*k`` for ``k = -N..N`` in raw index order."""
    if N < 1:
        raise ValueError("N must be >= 1")
    ks = np.arange(-N, N + 1)
    exact = None
    if _is_exact(a):
        ea = _as_exact(a)
        exact = tuple(_quad_value(ea, int(k)) for k in ks)
        values = np.array([float(x) for x in exact])
    else:
        values = ks.astype(float) ** 2 + float(a) * ks
    return RawSpectrum(ks, values, exact)


def _frac_half(a):
    """``b = a/2``, ``[b]`` and ``b - [b]`` (exact when ``a`` is)."""
    if _is_exact(a):
        b = Fraction(a) / 2
        fb = math.floor(b)
        return b, fb, b - fb
    b = a / 2.0
    fb = math.floor(b)
    return b, fb, b - fb


def quadratic_split(a, K: int) -> tuple[np.ndarray, np.ndarray]:
    """``(lambda_plus[0..K], lambda_minus[1..K])`` with ``b = a/2``.

    ``lambda_plus[k] = lambda_{-[b]+k}`` and ``lambda_minus[k] = lambda_{-[b]-k}``;
    ``lambda_minus`` is returned from ``k = 1`` (element 0 is ``lambda_minus[1]``).
    """
    _, fb, _ = _frac_half(a)
    plus = np.array([float(_quad_value(a, -fb + k)) for k in range(K + 1)])
    minus = np.array([float(_quad_value(a, -fb - k)) for k in range(1, K + 1)])
    return plus, minus


def _check_velocity(a):
    _, _, frac = _frac_half(a)
    if is_integer_velocity(a):
        if frac == Fraction(1, 2) or abs(float(frac) - 0.5) <= INTEGER_TOL:
            raise HalfIntegerBoundaryError(f"a = {a} is an odd integer: b - [b] = 1/2")
        raise IntegerVelocityError(f"a = {a} is an integer: lambda_k = lambda_(-a-k)")
    return frac


def interlacing_gaps(a, K: int) -> tuple[str, np.ndarray, np.ndarray]:
    """Consecutive differences of the two interlaced families, ``k = 0..K``.

    First case (``1/2 < b-[b] < 1``): ``lambda_plus[k] - lambda_minus[k+1]`` and
    ``lambda_minus[k+2] - lambda_plus[k]``. Second case (``0 < b-[b] < 1/2``):
    ``lambda_minus[k+1] - lambda_plus[k]`` and ``lambda_plus[k+1] - lambda_minus[k+1]``.
    Both arrays are positive exactly when the interlacing holds.
    """
    frac = _check_velocity(a)
    plus, minus = quadratic_split(a, K + 2)
    m = lambda j: minus[j - 1]  # noqa: E731
    ks = np.arange(K + 1)
    if frac > 0.5:
        first = plus[ks] - m(ks + 1)
        second = m(ks + 2) - plus[ks]
        return "first", first, second
    first = m(ks + 1) - plus[ks]
    second = plus[ks + 1] - m(ks + 1)
    return "second", first, second


# --------------------------------------------------------------------------
# General polynomial dispersion


class Convention(str, Enum):
    QUADRATIC = "quadratic"
    GENERAL = "general"


@dataclass(frozen=True)
class DispersionSpectrum:
    """Dispersion polynomial ``P`` (coefficients ``a_0..a_n``) and sensor velocity ``a``.

    Inputs given as ``int``/``Fraction`` keep exact arithmetic for collision and
    exceptional-set decisions; any float switches those decisions to a tolerance.
    """

    poly_coeffs: tuple
    velocity: float = 0.0
    convention: Convention = Convention.GENERAL

    def __post_init__(self):
        coeffs = tuple(self.poly_coeffs)
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        if len(coeffs) - 1 < 2:
            raise ValueError("dispersion polynomial must have degree >= 2")
        if not coeffs[-1] > 0:
            raise ValueError("leading coefficient must be positive")
        object.__setattr__(self, "poly_coeffs", coeffs)
        object.__setattr__(self, "convention", Convention(self.convention))

    @classmethod
    def monomial(cls, n: int, velocity=0, convention=Convention.GENERAL):
        return cls(tuple([0] * n + [1]), velocity, convention)

    @property
    def degree(self) -> int:
        return len(self.poly_coeffs) - 1

    @property
    def exact(self) -> bool:
        return all(_is_exact(c) for c in self.poly_coeffs) and _is_exact(self.velocity)

    @property
    def drift(self):
        """Coefficient of ``k`` added to ``P(k)``: ``+a`` (quadratic) or ``-a`` (general)."""
        return self.velocity if self.convention is Convention.QUADRATIC else -self.velocity

    @property
    def collision_target(self):
        """Value of ``Q(k, m)`` at which ``lambda_k == lambda_m``."""
        return -self.drift

    @property
    def time_sign(self) -> int:
        """Sign of ``t`` in the solution's phase ``exp(2 pi i (sign*P(k) t + k x))``."""
        return 1 if self.convention is Convention.QUADRATIC else -1

    def with_velocity(self, a) -> "DispersionSpectrum":
        return DispersionSpectrum(self.poly_coeffs, a, self.convention)

    def poly_exact(self, k: int):
        acc = 0
        for c in reversed(self.poly_coeffs):
            acc = acc * k + _as_exact(c)
        return acc

    def lambda_exact(self, k: int):
        return self.poly_exact(k) + _as_exact(self.drift) * k

    def poly(self, k) -> np.ndarray:
        k = np.asarray(k)
        if self.exact and np.issubdtype(k.dtype, np.integer):
            return np.array([float(self.poly_exact(int(j))) for j in k.ravel()]).reshape(k.shape)
        return np.polynomial.polynomial.polyval(k.astype(float), [float(c) for c in self.poly_coeffs])

    def lambdas(self, k) -> np.ndarray:
        k = np.asarray(k)
        if self.exact and np.issubdtype(k.dtype, np.integer):
            return np.array([float(self.lambda_exact(int(j))) for j in k.ravel()]).reshape(k.shape)
        return self.poly(k) + float(self.drift) * k

    def raw(self, lo: int, hi: int) -> RawSpectrum:
        ks = np.arange(lo, hi + 1)
        exact = tuple(self.lambda_exact(int(k)) for k in ks) if self.exact else None
        values = np.array([float(x) for x in exact]) if exact is not None else self.lambdas(ks)
        return RawSpectrum(ks, values, exact)


def q_symmetric_poly(spec: DispersionSpectrum, k: int, m: int):
    """``Q(k, m) = sum_l a_l sum_{j<l} k^(l-1-j) m^j``, so ``lambda_k - lambda_m = (k-m)(Q - target)``.

    Exact (``int``/``Fraction``) for exact spectra, float otherwise.
    """
    k, m = int(k), int(m)
    if k == m:
        raise EqualIndicesError("Q(k, m) needs k != m")
    # complete homogeneous symmetric polynomials h_j(k, m), exact integers
    h = [1]
    for j in range(1, spec.degree):
        h.append(k * h[-1] + m**j)
    if spec.exact:
        return sum(_as_exact(a) * h[l - 1] for l, a in enumerate(spec.poly_coeffs) if l >= 1)
    return math.fsum(float(a) * h[l - 1] for l, a in enumerate(spec.poly_coeffs) if l >= 1)


def _scaled_integer_poly(spec: DispersionSpectrum):
    """Integer multiple ``L`` of ``P`` and of the collision target (exact spectra)."""
    coeffs = [Fraction(c) for c in spec.poly_coeffs]
    target = Fraction(spec.collision_target)
    L = math.lcm(*(c.denominator for c in coeffs), target.denominator)
    return [int(c * L) for c in coeffs], int(target * L)


def exceptional_set_member(spec: DispersionSpectrum, bound: int):
    """First ``(k, m)``, ``|k|, |m| <= bound``, ``k != m``, with ``Q(k, m)`` equal to the collision target.

    The target is ``a`` in the general convention and ``-a`` in the quadratic one, i.e.
    the witness always certifies ``lambda_k == lambda_m``. Pairs are scanned by ``m`` in
    the order 0, -1, 1, -2, 2, ... and, for each ``m``, ``k`` in the same order.

    ``None`` only means no collision inside the box; it does not prove ``a`` is outside E.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    order = _signed_order(bound)
    if spec.exact:
        coeffs, target = _scaled_integer_poly(spec)
        pv = {}
        for k in order:
            acc = 0
            for c in reversed(coeffs):
                acc = acc * k + c
            pv[k] = acc
        for m in order:
            for k in order:
                if k != m and pv[k] - pv[m] == target * (k - m):
                    return (k, m)
        return None

    ks = np.array(order, dtype=float)
    K, M = np.meshgrid(ks, ks)  # rows: m, cols: k
    h = np.ones_like(K)
    Mpow = np.ones_like(M)
    Q = np.zeros_like(K)
    for l, a in enumerate(spec.poly_coeffs):
        if l == 0:
            continue
        if l > 1:
            Mpow = Mpow * M
            h = K * h + Mpow
        Q += float(a) * h
    target = float(spec.collision_target)
    hit = (np.abs(Q - target) <= EXCEPTIONAL_TOL * (1.0 + abs(float(spec.velocity)))) & (K != M)
    if not hit.any():
        return None
    r, c = np.unravel_index(int(np.argmax(hit.ravel())), hit.shape)
    return (order[c], order[r])


def alpha_q(spec: DispersionSpectrum, q: int):
    """Half the leading coefficient of ``lambda_{k+q} - lambda_{-k}`` in ``k^(2p-1)``, ``n = 2p``.

    ``a_2 q + a_1 + drift`` when ``p = 1`` and ``p a_{2p} q + a_{2p-1}`` when ``p >= 2``.
    """
    n = spec.degree
    if n % 2:
        raise OddDegreeError(f"alpha_q needs an even degree, got {n}")
    p = n // 2
    c = spec.poly_coeffs
    if spec.exact:
        c = [_as_exact(x) for x in c]
        drift = _as_exact(spec.drift)
    else:
        c = [float(x) for x in c]
        drift = float(spec.drift)
    if p == 1:
        return c[2] * q + c[1] + drift
    return p * c[n] * q + c[n - 1]


@dataclass(frozen=True)
class Q0Case:
    """``kind`` is ``"crossing"`` (alpha_q0 > 0 > alpha_{q0-1}), ``"zero"`` or ``"degenerate"``."""

    kind: str
    q0: int | None


def find_q0(spec: DispersionSpectrum) -> Q0Case:
    slope = alpha_q(spec, 1) - alpha_q(spec, 0)
    if slope <= 0:
        return Q0Case("degenerate", None)
    root = -alpha_q(spec, 0) / slope
    if spec.exact:
        root = Fraction(root)
        if root.denominator == 1:
            return Q0Case("zero", int(root))
        return Q0Case("crossing", math.ceil(root))
    r = round(root)
    if abs(root - r) <= INTEGER_TOL * (1.0 + abs(root)):
        return Q0Case("zero", int(r))
    return Q0Case("crossing", math.ceil(root))


# --------------------------------------------------------------------------
# Rearrangements


@dataclass(frozen=True, eq=False)
class Reordering:
    """Increasing rearrangement ``mu`` of ``lambda_k`` over the source window ``index_lo..index_hi``.

    ``source[i]`` is the index whose frequency sits at position ``mu.index_lo + i``
    (the inverse of sigma). ``displacement_bound`` is ``max |sigma(k) - 2|k||`` for
    even-degree (one-sided) rearrangements and ``max |sigma(k) - k|`` for odd degree;
    ``index_displacement`` is the raw ``max ||k| - sigma(k)|``.
    """

    N: int
    index_lo: int
    index_hi: int
    mu: FrequencySequence
    source: np.ndarray
    displacement_bound: int
    index_displacement: int
    case: str
    q0: int | None = None
    head_size: int | None = None
    branches: tuple = field(default=())

    @property
    def sigma(self) -> dict:
        """Source index -> position in ``mu``."""
        return {int(k): self.mu.index_lo + i for i, k in enumerate(self.source)}

    def tail_alternations(self) -> int:
        """Number of trailing steps in ``mu`` whose source indices switch sign."""
        s = np.sign(self.source)
        count = 0
        for i in range(len(s) - 1, 0, -1):
            if s[i] * s[i - 1] < 0:
                count += 1
            else:
                break
        return count


def _displacements(source, positions, even):
    source = np.asarray(source)
    positions = np.asarray(positions)
    ref = 2 * np.abs(source) if even else source
    return int(np.max(np.abs(positions - ref))), int(np.max(np.abs(np.abs(source) - positions)))


def quadratic_interlace(a, N: int) -> Reordering:
    """Increasing rearrangement of ``lambda_k = k^2 + a k`` from the ``lambda_plus``/``lambda_minus`` split.

    With ``b = a/2``: when ``1/2 < b-[b] < 1`` the positions are
    ``mu_{2k} = lambda_minus[k+1]``, ``mu_{2k+1} = lambda_plus[k]``; when
    ``0 < b-[b] < 1/2`` they are ``mu_{2k} = lambda_plus[k]``,
    ``mu_{2k+1} = lambda_minus[k+1]``. Returns ``2N+1`` entries.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    frac = _check_velocity(a)
    _, fb, _ = _frac_half(a)
    source = []
    if frac > 0.5:
        case = "first"
        for k in range(N + 1):
            source.append(-fb - k - 1)
            if k < N:
                source.append(-fb + k)
    else:
        case = "second"
        for k in range(N + 1):
            source.append(-fb + k)
            if k < N:
                source.append(-fb - k - 1)
    ea = _as_exact(a) if _is_exact(a) else float(a)
    values = [float(_quad_value(ea, j)) for j in source]
    mu = FrequencySequence(values, 0)
    disp, idisp = _displacements(source, np.arange(len(source)), even=True)
    return Reordering(
        N=N,
        index_lo=min(source),
        index_hi=max(source),
        mu=mu,
        source=np.array(source),
        displacement_bound=disp,
        index_displacement=idisp,
        case=case,
    )


def _check_no_collision(spec, bound):
    w = exceptional_set_member(spec, bound)
    if w is not None:
        raise FrequencyCollisionError(
            f"lambda_{w[0]} == lambda_{w[1]}: velocity {spec.velocity} lies in the exceptional set",
            pair=w,
        )


def _value_table(spec, lo, hi):
    ks = range(lo, hi + 1)
    if spec.exact:
        return {k: spec.lambda_exact(k) for k in ks}
    vals = spec.lambdas(np.arange(lo, hi + 1))
    return {k: float(v) for k, v in zip(ks, vals)}


def reorder(spec: DispersionSpectrum, N: int, stable_steps: int = STABLE_STEPS) -> Reordering:
    """Increasing rearrangement of ``lambda_k = P(k) + drift*k`` with gaps tending to infinity.

    Even degree: the source window is ``-N..N+q0`` and ``mu`` is indexed from 0. A head
    block ``-K0..K0+q0`` is sorted; beyond it each ``k`` contributes the pair
    ``lambda_{-k}``, ``lambda_{k+q0}`` in whichever order the comparison gives (recorded
    in ``branches``). Odd degree: the window is ``-N..N``, a central block ``-K0..K0``
    is sorted and both monotone tails are kept, ``mu`` indexed from ``-N``.

    Raises ``FrequencyCollisionError`` if two window frequencies coincide and
    ``WindowTooSmallError`` if the tail has not settled for ``stable_steps`` steps.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    if spec.degree % 2:
        return _reorder_odd(spec, N, stable_steps)
    return _reorder_even(spec, N, stable_steps)


def _reorder_even(spec, N, stable_steps):
    tag = find_q0(spec)
    if tag.kind == "degenerate":
        raise RuntimeError("alpha_q has non-positive slope; spectrum construction is inconsistent")
    q0 = tag.q0
    if N <= abs(q0):
        raise WindowTooSmallError(f"N = {N} must exceed |q0| = {abs(q0)}")
    lo, hi = -N, N + q0
    _check_no_collision(spec, max(abs(lo), abs(hi)))
    val = _value_table(spec, lo - 1, hi + 1)

    # pair_k = (-k, k + q0) sorted by value, for k = 1..N+1 (N+1 lies outside the window)
    pairs, branches = {}, {}
    for k in range(1, N + 2):
        i, j = -k, k + q0
        if val[i] < val[j]:
            pairs[k], branches[k] = (i, j), "negative-first"
        else:
            pairs[k], branches[k] = (j, i), "positive-first"

    def chained(k):
        return val[pairs[k][1]] < val[pairs[k + 1][0]]

    # smallest K0 >= |q0| with the pair chain increasing from K0+1 on and the head below it
    K0 = None
    first_ok = N
    while first_ok >= 1 and chained(first_ok):
        first_ok -= 1
    for cand in range(max(abs(q0), first_ok), N):
        head = range(-cand, cand + q0 + 1)
        if max(val[h] for h in head) < val[pairs[cand + 1][0]]:
            K0 = cand
            break
    if K0 is None:
        raise WindowTooSmallError(f"no stable interlacing tail inside N = {N}")

    head = sorted(range(-K0, K0 + q0 + 1), key=lambda h: val[h])
    source = list(head)
    for k in range(K0 + 1, N + 1):
        source.extend(pairs[k])
    result = Reordering(
        N=N,
        index_lo=lo,
        index_hi=hi,
        mu=FrequencySequence([float(val[s]) for s in source], 0),
        source=np.array(source),
        displacement_bound=0,
        index_displacement=0,
        case=f"{tag.kind}",
        q0=q0,
        head_size=K0,
        branches=tuple((k, branches[k]) for k in range(K0 + 1, N + 1)),
    )
    if result.tail_alternations() < stable_steps:
        raise WindowTooSmallError(
            f"tail alternates for {result.tail_alternations()} steps, need {stable_steps}; increase N"
        )
    disp, idisp = _displacements(source, np.arange(len(source)), even=True)
    object.__setattr__(result, "displacement_bound", disp)
    object.__setattr__(result, "index_displacement", idisp)
    return result


def _reorder_odd(spec, N, stable_steps):
    lo, hi = -N, N
    _check_no_collision(spec, N)
    val = _value_table(spec, lo - 1, hi + 1)

    # smallest K0 with both tails increasing beyond it (including one step outside the window)
    rising = [val[k + 1] > val[k] for k in range(lo - 1, hi + 1)]  # step k -> k+1

    def tails_monotone(K0):
        return all(rising[k - (lo - 1)] for k in range(K0, hi + 1)) and all(
            rising[k - 1 - (lo - 1)] for k in range(lo, -K0 + 1)
        )

    K0 = None
    for cand in range(0, N + 1):
        if not tails_monotone(cand):
            continue
        block = [val[k] for k in range(-cand, cand + 1)]
        if max(block) < val[cand + 1] and min(block) > val[-cand - 1]:
            K0 = cand
            break
    if K0 is None or N - K0 < stable_steps:
        raise WindowTooSmallError(
            f"monotone tails need {stable_steps} steps beyond the central block; increase N"
        )
    centre = sorted(range(-K0, K0 + 1), key=lambda k: val[k])
    source = list(range(lo, -K0)) + centre + list(range(K0 + 1, hi + 1))
    positions = np.arange(lo, hi + 1)
    disp, idisp = _displacements(source, positions, even=False)
    return Reordering(
        N=N,
        index_lo=lo,
        index_hi=hi,
        mu=FrequencySequence([float(val[s]) for s in source], lo),
        source=np.array(source),
        displacement_bound=disp,
        index_displacement=idisp,
        case="odd",
        head_size=K0,
    )
