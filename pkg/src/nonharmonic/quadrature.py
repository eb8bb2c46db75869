"""Adaptive composite Gauss-Legendre integration of ``|p(t)|`` and ``|p(t)|^2``.

``p(t) = sum_k a_k exp(2 pi i lambda_k t)`` is smooth, and so is ``|p|`` except near
zeros of ``p``. The base layer tiles ``[-T/2, T/2]`` with equal panels of width at most
``1 / (base_points_per_period * (span + 1))`` and applies an ``m``-point Gauss-Legendre
rule on each. A panel is flagged when the two highest Legendre coefficients of the
sampled integrand are not negligible; flagged panels are bisected and each split is
judged by the two-level estimate ``|I(left) + I(right) - I(parent)|``.

All coefficient vectors in a batch share the frequency set, so the base layer is a
single matrix product against a precomputed exponential table.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ToleranceError

__all__ = ["QuadratureSpec", "IntervalResult", "PanelIntegrator"]

TWO_PI_I = 2j * np.pi
# |p| below this fraction of max|p| marks a stagnating panel as containing a zero
KINK_LEVEL = 1e-3
_CHUNK = 32


@dataclass(frozen=True)
class QuadratureSpec:
    base_points_per_period: int = 8
    panel_rule_order: int = 16
    abs_tol: float = 1e-10
    rel_tol: float = 1e-9
    max_refinement_depth: int = 20

    def __post_init__(self):
        for name in ("base_points_per_period", "panel_rule_order", "max_refinement_depth"):
            if int(getattr(self, name)) < 1:
                raise ValueError(f"{name} must be a positive integer")
        if self.panel_rule_order < 4:
            raise ValueError("panel_rule_order must be >= 4")
        for name in ("abs_tol", "rel_tol"):
            v = getattr(self, name)
            if not 0 < v < 1:
                raise ValueError(f"{name} must lie in (0, 1)")


class IntervalResult(NamedTuple):
    """Normalised integral ``(1/T) * int |p|^power`` with its error estimate."""

    value: float
    error: float
    converged: bool

    def __float__(self):
        return float(self.value)


class PanelIntegrator:
    """Integrates ``|sum_k a_k e^{2 pi i f_k t}|^power`` over ``[-T/2, T/2]``, divided by ``T``.

    Parameters
    ----------
    frequencies : array_like
        Real frequencies shared by every coefficient vector.
    T : float
        Window length.
    spec : QuadratureSpec, optional
    power : {1, 2}
    """

    def __init__(self, frequencies, T: float, spec: QuadratureSpec | None = None, power: int = 1):
        if not T > 0:
            raise ValueError("T must be positive")
        if power not in (1, 2):
            raise ValueError("power must be 1 or 2")
        self.spec = spec or QuadratureSpec()
        self.T = float(T)
        self.power = power
        freqs = np.asarray(frequencies, dtype=float)
        # |p| is unchanged by a common frequency shift; centring keeps phases small
        span = float(freqs.max() - freqs.min()) if freqs.size else 0.0
        self.center = 0.5 * float(freqs.max() + freqs.min()) if freqs.size else 0.0
        self.freqs = freqs - self.center

        m = self.spec.panel_rule_order
        self.x, self.w = np.polynomial.legendre.leggauss(m)
        vander = np.polynomial.legendre.legvander(self.x, m - 1)
        j = np.array([m - 2, m - 1])
        self._tail = (self.w[:, None] * vander[:, j]) * ((2 * j + 1) / 2.0)

        self.n_panels = max(1, int(np.ceil(self.T * self.spec.base_points_per_period * (span + 1.0) - 1e-9)))
        self.h0 = self.T / self.n_panels
        mids = -self.T / 2 + (np.arange(self.n_panels) + 0.5) * self.h0
        nodes = (mids[:, None] + 0.5 * self.h0 * self.x[None, :]).ravel()
        self._base = np.exp(TWO_PI_I * np.outer(nodes, self.freqs))

    @property
    def n_nodes(self) -> int:
        return self._base.shape[0]

    def _g(self, vals):
        if self.power == 1:
            return np.abs(vals)
        return vals.real**2 + vals.imag**2

    def integrate(self, coeffs):
        """Return ``(values, errors, converged)``; 1-D arrays for a 2-D ``coeffs`` of shape ``(n, B)``.

        A 1-D ``coeffs`` returns scalars.
        """
        A = np.asarray(coeffs, dtype=complex)
        single = A.ndim == 1
        if single:
            A = A[:, None]
        if A.shape[0] != self.freqs.size:
            raise ValueError(f"expected {self.freqs.size} coefficients, got {A.shape[0]}")
        out = [self._integrate_chunk(A[:, i : i + _CHUNK]) for i in range(0, A.shape[1], _CHUNK)]
        vals = np.concatenate([o[0] for o in out])
        errs = np.concatenate([o[1] for o in out])
        conv = np.concatenate([o[2] for o in out])
        if single:
            return float(vals[0]), float(errs[0]), bool(conv[0])
        return vals, errs, conv

    def _integrate_chunk(self, A):
        spec = self.spec
        m = self.x.size
        B = A.shape[1]
        P = self.n_panels
        h0 = self.h0
        V = self._base @ A
        G = self._g(V).reshape(P, m, B)
        absmax = np.abs(V).reshape(P * m, B).max(axis=0)
        Ipanel = 0.5 * h0 * np.einsum("pmb,m->pb", G, self.w)
        est = h0 * np.abs(np.einsum("pmb,mj->pjb", G, self._tail)).sum(axis=1)
        total = Ipanel.sum(axis=0)
        tol = self.T * np.maximum(spec.abs_tol, spec.rel_tol * np.abs(total) / self.T)
        allow = tol * (h0 / self.T)
        flag = est > allow[None, :]

        value = np.where(flag, 0.0, Ipanel).sum(axis=0)
        error = np.where(flag, 0.0, est).sum(axis=0)
        if flag.any():
            p_idx, col = np.nonzero(flag)
            left = -self.T / 2 + p_idx * h0
            self._refine(
                A, left, col, Ipanel[p_idx, col], allow[col], est[p_idx, col],
                np.zeros(col.size, dtype=bool), absmax, value, error,
            )
        # panels split to full depth at a zero may miss their own share but not the total
        converged = error <= tol
        return value / self.T, error / self.T, converged

    def _refine(self, A, left, col, parent, allow, prev, kink, absmax, value, error):
        """Level-synchronous bisection of the flagged panels; accumulates into ``value``/``error``."""
        spec = self.spec
        AT = A.T
        depth = 1
        while col.size:
            width = self.h0 / 2**depth  # child width
            half = 0.5 * width * self.x
            eh = np.exp(TWO_PI_I * np.outer(self.freqs, half))  # (n, m)
            centers = np.concatenate([left + 0.5 * width, left + 1.5 * width])
            cols2 = np.concatenate([col, col])
            mod = AT[cols2] * np.exp(TWO_PI_I * np.outer(centers, self.freqs))
            vals = mod @ eh
            g = self._g(vals)
            I = 0.5 * width * (g @ self.w)
            M = col.size
            I1, I2 = I[:M], I[M:]
            err = np.abs(I1 + I2 - parent)
            low = np.abs(vals).min(axis=1)
            low1, low2 = low[:M], low[M:]

            last = depth >= spec.max_refinement_depth
            ok = (err <= allow) & ~kink
            stuck = (err > 0.5 * prev) & (np.minimum(low1, low2) < KINK_LEVEL * absmax[col])
            kink = kink | (~ok & stuck)
            done = ok | last
            if done.any():
                np.add.at(value, col[done], I1[done] + I2[done])
                np.add.at(error, col[done], err[done])
            keep = ~done
            if not keep.any():
                break
            # children: the one holding the smaller sample inherits the zero flag
            k1 = kink[keep] & (low1[keep] <= low2[keep])
            k2 = kink[keep] & ~(low1[keep] <= low2[keep])
            left = np.concatenate([left[keep], left[keep] + width])
            col = np.concatenate([col[keep], col[keep]])
            parent = np.concatenate([I1[keep], I2[keep]])
            allow = np.concatenate([allow[keep], allow[keep]]) * 0.5
            prev = np.concatenate([err[keep], err[keep]])
            kink = np.concatenate([k1, k2])
            depth += 1

    def check(self, result: IntervalResult) -> IntervalResult:
        if not result.converged:
            raise ToleranceError(
                f"refinement depth {self.spec.max_refinement_depth} exhausted; "
                f"best estimate {result.value!r} +/- {result.error!r}"
            )
        return result
