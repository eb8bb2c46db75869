"""Finite non-harmonic trigonometric polynomials and their interval norms.

All interval norms carry the ``1/T`` prefactor: ``l1_norm`` is
``(1/T) int_{-T/2}^{T/2} |p(t)| dt`` and ``l2_norm_sq`` is the same with ``|p|^2``.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import FrequencyCollisionError, ToleranceError, ZeroFrequencyError
from .quadrature import IntervalResult, PanelIntegrator, QuadratureSpec

__all__ = [
    "TrigPoly",
    "evaluate",
    "l1_norm",
    "interval_integral",
    "l2_norm_sq",
    "gram_matrix",
    "sinc",
    "weighted_l1m1",
    "sup_coeff",
    "antiderivative",
    "translate_frequencies",
]


class TrigPoly:
    """``p(t) = sum_k a_k exp(2 pi i lambda_k t)`` with distinct real frequencies, stored ascending."""

    def __init__(self, frequencies=(), coefficients=()):
        f = np.asarray(frequencies, dtype=float).ravel()
        a = np.asarray(coefficients, dtype=complex).ravel()
        if f.shape != a.shape:
            raise ValueError("frequencies and coefficients must have equal length")
        order = np.argsort(f, kind="stable")
        f, a = f[order], a[order]
        dup = np.flatnonzero(np.diff(f) == 0)
        if dup.size:
            raise FrequencyCollisionError(f"repeated frequency {f[dup[0]]!r}")
        f.setflags(write=False)
        a.setflags(write=False)
        self.frequencies = f
        self.coefficients = a

    @classmethod
    def from_terms(cls, terms):
        terms = list(terms)
        if not terms:
            return cls()
        f, a = zip(*terms)
        return cls(f, a)

    @property
    def terms(self):
        return list(zip(self.frequencies.tolist(), self.coefficients.tolist()))

    def __len__(self):
        return self.frequencies.size

    def is_zero(self) -> bool:
        return not np.any(self.coefficients)

    def __call__(self, t):
        return evaluate(self, t)

    def __mul__(self, c):
        return TrigPoly(self.frequencies, self.coefficients * complex(c))

    __rmul__ = __mul__

    def shift_time(self, tau: float) -> "TrigPoly":
        """``t -> p(t + tau)``: same frequencies, coefficients rotated by ``exp(2 pi i lambda tau)``."""
        return TrigPoly(self.frequencies, self.coefficients * np.exp(2j * np.pi * self.frequencies * tau))

    def __repr__(self):
        return f"TrigPoly({self.terms!r})"


def evaluate(p: TrigPoly, t):
    """Direct summation in ascending frequency order with Neumaier compensation."""
    t = np.asarray(t, dtype=float)
    s_re = np.zeros(t.shape)
    s_im = np.zeros(t.shape)
    c_re = np.zeros(t.shape)
    c_im = np.zeros(t.shape)
    for lam, a in zip(p.frequencies, p.coefficients):
        y = a * np.exp(2j * np.pi * lam * t)
        for s, c, yy in ((s_re, c_re, y.real), (s_im, c_im, y.imag)):
            tot = s + yy
            c += np.where(np.abs(s) >= np.abs(yy), (s - tot) + yy, (yy - tot) + s)
            s[...] = tot
    out = (s_re + c_re) + 1j * (s_im + c_im)
    return complex(out) if out.ndim == 0 else out


def interval_integral(p: TrigPoly, T: float, q: QuadratureSpec | None = None, power: int = 1,
                      *, strict: bool = False) -> IntervalResult:
    """``(1/T) int_{-T/2}^{T/2} |p(t)|^power dt`` by adaptive quadrature."""
    if not T > 0:
        raise ValueError("T must be positive")
    if len(p) == 0 or p.is_zero():
        return IntervalResult(0.0, 0.0, True)
    integ = PanelIntegrator(p.frequencies, T, q, power=power)
    res = IntervalResult(*integ.integrate(p.coefficients))
    if strict and not res.converged:
        raise ToleranceError(f"quadrature did not reach tolerance: {res}")
    return res


def l1_norm(p: TrigPoly, T: float, q: QuadratureSpec | None = None, *, strict: bool = False) -> IntervalResult:
    """``(1/T) int_{-T/2}^{T/2} |p(t)| dt`` with an a-posteriori error estimate.

    When the refinement depth runs out the best estimate is returned with
    ``converged=False``; pass ``strict=True`` to raise ``ToleranceError`` instead.
    """
    return interval_integral(p, T, q, power=1, strict=strict)


def sinc(x):
    """``sin(x)/x`` with the Taylor series below ``|x| = 1e-4``."""
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < 1e-4
    xs = np.where(small, 1.0, x)
    x2 = x * x
    return np.where(small, 1.0 - x2 / 6.0 + x2 * x2 / 120.0, np.sin(xs) / xs)


def gram_matrix(frequencies, T: float) -> np.ndarray:
    """``G[j, k] = (1/T) int e^{2 pi i (lambda_j - lambda_k) t} dt = sinc(pi T (lambda_j - lambda_k))``."""
    f = np.asarray(frequencies, dtype=float)
    return sinc(np.pi * T * (f[:, None] - f[None, :]))


def l2_norm_sq(p: TrigPoly, T: float) -> float:
    """``(1/T) int_{-T/2}^{T/2} |p|^2`` evaluated exactly through the sinc Gram matrix."""
    if not T > 0:
        raise ValueError("T must be positive")
    if len(p) == 0:
        return 0.0
    a = p.coefficients
    G = gram_matrix(p.frequencies, T)
    terms = (np.conj(a)[:, None] * a[None, :]).real * G
    return math.fsum(terms.ravel().tolist())


def weighted_l1m1(coeffs, indices=None) -> float:
    """``sum_k |a_k| / (1 + k)`` with ``k`` counted from 0.

    With explicit ``indices`` the weight is ``1 / (1 + |k|)`` instead.
    """
    a = np.abs(np.asarray(coeffs, dtype=complex).ravel())
    k = np.arange(a.size) if indices is None else np.abs(np.asarray(indices))
    return math.fsum((a / (1.0 + k)).tolist())


def sup_coeff(coeffs) -> float:
    a = np.abs(np.asarray(coeffs, dtype=complex).ravel())
    return float(a.max()) if a.size else 0.0


def antiderivative(p: TrigPoly) -> TrigPoly:
    """``Phi(x) = int_0^x p``; the constant ``-sum a_k / (2 pi i lambda_k)`` sits at frequency 0."""
    if np.any(p.frequencies == 0):
        raise ZeroFrequencyError("antiderivative needs nonzero frequencies; translate first")
    b = p.coefficients / (2j * np.pi * p.frequencies)
    const = -complex(np.sum(b))
    return TrigPoly(np.append(p.frequencies, 0.0), np.append(b, const))


def translate_frequencies(p: TrigPoly, s: float) -> TrigPoly:
    return TrigPoly(p.frequencies + s, p.coefficients)
