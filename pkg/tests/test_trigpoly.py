import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from nonharmonic.errors import FrequencyCollisionError, ToleranceError, ZeroFrequencyError
from nonharmonic.quadrature import PanelIntegrator, QuadratureSpec
from nonharmonic.trigpoly import (
    TrigPoly,
    antiderivative,
    evaluate,
    gram_matrix,
    interval_integral,
    l1_norm,
    l2_norm_sq,
    sinc,
    sup_coeff,
    translate_frequencies,
    weighted_l1m1,
)


def random_poly(rng, n, spread=10.0):
    f = np.sort(rng.uniform(-spread, spread, n))
    a = rng.normal(size=n) + 1j * rng.normal(size=n)
    return TrigPoly(f, a)


def grid_l1(p, T, n=400_001):
    # independent oracle: composite trapezoid on a fine uniform grid
    t = np.linspace(-T / 2, T / 2, n)
    v = np.exp(2j * np.pi * np.outer(t, p.frequencies)) @ p.coefficients
    return np.trapezoid(np.abs(v), t) / T


# -- construction and evaluation


def test_storage_sorted_and_distinct():
    p = TrigPoly([2.0, -1.0, 0.5], [1, 2, 3])
    assert p.frequencies.tolist() == [-1.0, 0.5, 2.0]
    assert p.coefficients.tolist() == [2, 3, 1]
    with pytest.raises(FrequencyCollisionError):
        TrigPoly([1.0, 1.0], [1, 1])


@pytest.mark.parametrize(
    "terms, t, expected",
    [([(0, 1)], 0.37, 1), ([(1, 1)], 0.25, 1j), ([(1, 1), (-1, 1)], 1 / 6, 1)],
)
def test_evaluate_examples(terms, t, expected):
    assert abs(evaluate(TrigPoly.from_terms(terms), t) - expected) < 1e-15


def test_evaluate_vectorised_matches_direct():
    rng = np.random.default_rng(1)
    p = random_poly(rng, 12)
    t = rng.uniform(-3, 3, 50)
    direct = np.array([sum(c * np.exp(2j * np.pi * f * s) for f, c in p.terms) for s in t])
    assert np.max(np.abs(p(t) - direct)) < 1e-12


def test_shift_time():
    rng = np.random.default_rng(2)
    p = random_poly(rng, 6)
    assert abs(p.shift_time(0.3)(0.1) - p(0.4)) < 1e-12


# -- L1


def test_l1_single_term():
    r = l1_norm(TrigPoly([3.7], [3 - 4j]), 0.7)
    assert r.converged and abs(r.value - 5.0) < 1e-12


def test_l1_two_cosine_closed_form():
    r = l1_norm(TrigPoly([0, 1], [1, 1]), 1.0)
    assert abs(r.value - 4 / math.pi) < 1e-8
    assert r.error < 1e-8


def test_l1_zero_polynomial():
    assert l1_norm(TrigPoly(), 1.0).value == 0.0
    assert l1_norm(TrigPoly([1.0, 2.0], [0, 0]), 1.0).value == 0.0


def test_l1_rejects_bad_T():
    with pytest.raises(ValueError):
        l1_norm(TrigPoly([0], [1]), 0.0)


def test_l1_against_grid_oracle():
    rng = np.random.default_rng(3)
    for _ in range(5):
        p = random_poly(rng, 8, spread=6)
        T = rng.uniform(0.2, 2.0)
        assert abs(l1_norm(p, T).value - grid_l1(p, T)) < 1e-6 * sum(abs(p.coefficients))


def test_l1_interior_zero_kink():
    # |1 - e^{2 pi i (t - s)}| = 2|sin(pi (t - s))| has a kink at t = s; full period gives 4/pi
    for s in (0.0, 0.1234, -0.377):
        p = TrigPoly([0, 1], [1, -np.exp(-2j * np.pi * s)])
        r = l1_norm(p, 1.0)
        assert r.converged and abs(r.value - 4 / math.pi) < 1e-9


def test_l1_strict_raises_on_exhausted_depth():
    q = QuadratureSpec(abs_tol=1e-15, rel_tol=1e-15, max_refinement_depth=2)
    p = TrigPoly([0, 1], [1, -np.exp(-2j * np.pi * 0.123)])
    r = l1_norm(p, 1.0, q)
    assert not r.converged
    with pytest.raises(ToleranceError):
        l1_norm(p, 1.0, q, strict=True)


@given(st.integers(0, 10_000), st.complex_numbers(min_magnitude=0.1, max_magnitude=10))
def test_l1_homogeneity(seed, c):
    rng = np.random.default_rng(seed)
    p = random_poly(rng, 5)
    T = rng.uniform(0.1, 3)
    assert abs(l1_norm(c * p, T).value - abs(c) * l1_norm(p, T).value) <= 1e-8 * abs(c) * sum(abs(p.coefficients))


@given(st.integers(0, 10_000))
def test_l1_triangle_bound(seed):
    rng = np.random.default_rng(seed)
    p = random_poly(rng, int(rng.integers(1, 10)))
    T = rng.uniform(0.1, 3)
    assert l1_norm(p, T).value <= np.abs(p.coefficients).sum() * (1 + 1e-9)


@given(st.integers(0, 10_000), st.floats(-50, 50))
def test_l1_translation_invariance(seed, s):
    rng = np.random.default_rng(seed)
    p = random_poly(rng, 6)
    T = rng.uniform(0.1, 3)
    q = QuadratureSpec()
    assert abs(l1_norm(translate_frequencies(p, s), T, q).value - l1_norm(p, T, q).value) <= 2 * q.abs_tol + 2e-9 * l1_norm(p, T).value


def test_batch_matches_single():
    rng = np.random.default_rng(4)
    f = np.sort(rng.uniform(0, 20, 9))
    A = rng.normal(size=(9, 70)) + 1j * rng.normal(size=(9, 70))
    vals, errs, conv = PanelIntegrator(f, 0.6).integrate(A)
    single = [l1_norm(TrigPoly(f, A[:, j]), 0.6).value for j in range(70)]
    assert np.max(np.abs(vals - single)) < 1e-12 and conv.all()


# -- L2


def test_l2_examples():
    assert l2_norm_sq(TrigPoly([2.3], [3 + 4j]), 0.37) == pytest.approx(25.0, rel=1e-15)
    assert l2_norm_sq(TrigPoly([0, 1], [1, 1]), 1.0) == pytest.approx(2.0, abs=1e-15)
    assert l2_norm_sq(TrigPoly([0, 0.5], [1, 1]), 1.0) == pytest.approx(2 + 4 / math.pi, rel=1e-15)


def test_sinc_series_branch_continuous():
    x = np.array([9.99e-5, 1.0001e-4, 1e-9, 0.0])
    expected = [math.sin(x[0]) / x[0], math.sin(x[1]) / x[1], 1.0, 1.0]
    assert np.allclose(sinc(x), expected, rtol=1e-15, atol=0)


def test_gram_is_symmetric_psd():
    G = gram_matrix(np.sort(np.random.default_rng(0).uniform(0, 5, 12)), 0.8)
    assert np.allclose(G, G.T)
    assert np.linalg.eigvalsh(G).min() > -1e-12


def test_l2_against_quadrature_200_random():
    rng = np.random.default_rng(5)
    worst = 0.0
    for _ in range(200):
        n = int(rng.integers(1, 17))
        p = random_poly(rng, n, spread=float(rng.uniform(1, 30)))
        T = float(rng.uniform(0.1, 4))
        gram = l2_norm_sq(p, T)
        quad = interval_integral(p, T, power=2).value
        worst = max(worst, abs(gram - quad) / gram)
    assert worst < 1e-8


# -- coefficient norms


def test_weighted_l1m1():
    assert weighted_l1m1([1, 1, 1]) == pytest.approx(11 / 6)
    assert weighted_l1m1([0, 0, 0]) == 0
    assert weighted_l1m1([2j, 0, -3]) == pytest.approx(3.0)
    assert weighted_l1m1([1, 1], indices=[-1, 1]) == pytest.approx(1.0)


def test_sup_coeff():
    assert sup_coeff([1, -2, 1j]) == 2
    assert sup_coeff([]) == 0
    assert sup_coeff([3 + 4j]) == 5


# -- antiderivative


def test_antiderivative_example():
    phi = antiderivative(TrigPoly([1], [2j * math.pi]))
    assert abs(phi(0.5) - (-2)) < 1e-14
    assert abs(phi(0.0)) < 1e-15


def test_antiderivative_zero_frequency():
    with pytest.raises(ZeroFrequencyError):
        antiderivative(TrigPoly([0, 1], [1, 1]))


def test_antiderivative_finite_difference():
    rng = np.random.default_rng(6)
    p = random_poly(rng, 7, spread=3)
    p = translate_frequencies(p, 10.0 - p.frequencies.min())  # all frequencies positive
    phi = antiderivative(p)
    h = 1e-5
    t = rng.uniform(-1, 1, 20)
    fd = (phi(t + h) - phi(t - h)) / (2 * h)
    scale = np.abs(p.coefficients).sum() * (2 * math.pi * p.frequencies.max()) ** 2
    assert np.max(np.abs(fd - p(t))) < scale * h**2 + 1e-8


def test_translate_frequencies():
    p = translate_frequencies(TrigPoly([0, 1], [1, 1]), 5)
    assert p.terms == [(5.0, 1 + 0j), (6.0, 1 + 0j)]
    q = TrigPoly([0, 1], [1, 2])
    assert translate_frequencies(q, 0).terms == q.terms
