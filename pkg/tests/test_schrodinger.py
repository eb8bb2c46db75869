from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from nonharmonic.errors import DegeneratePairError, FrequencyCollisionError, NotExceptionalError
from nonharmonic.inequalities import RatioKind, estimate_constant, ratio
from nonharmonic.spectra import Convention, DispersionSpectrum, FrequencySequence, exceptional_set_member
from nonharmonic.schrodinger import (
    InitialData,
    Regime,
    SensorPath,
    classify_velocity,
    exceptional_velocity_counterexample,
    grid_sample,
    integer_velocity_counterexample,
    observability_battery,
    observability_functional,
    path_residual,
    restrict_to_path,
    solution_eval,
)
from nonharmonic.trigpoly import gram_matrix

Q, G = Convention.QUADRATIC, Convention.GENERAL
SCHRO = DispersionSpectrum((0, 0, 1), 0, Q)


def random_data(rng, lo=-8, hi=8):
    ks = np.arange(lo, hi + 1)
    c = rng.normal(size=ks.size) + 1j * rng.normal(size=ks.size)
    return InitialData.from_arrays(ks, c)


# -- initial data and paths


def test_initial_data():
    u0 = InitialData(((1, 3 + 4j), (-2, 1)))
    assert u0.wiener_norm == 6.0 and u0.indices.tolist() == [1, -2]
    with pytest.raises(ValueError):
        InitialData(((1, 1), (1, 2)))
    assert SensorPath(0, 2.25, 1).x0 == 0.25 and SensorPath(0, -0.25, 1).x0 == 0.75


# -- solution


def test_solution_constant_mode():
    u0 = InitialData(((0, 1),))
    for t, x in [(0.3, 0.7), (-12.1, 3.3)]:
        assert solution_eval(SCHRO, u0, t, x) == pytest.approx(1, abs=1e-15)


def test_solution_integer_phase():
    assert abs(solution_eval(SCHRO, InitialData(((1, 1),)), 1.0, 0.0) - 1) < 1e-15


def test_solution_conventions():
    # quadratic: e^{2 pi i (k^2 t + k x)}; general: e^{-2 pi i P(k) t} e^{2 pi i k x}
    u0 = InitialData(((2, 1),))
    t, x = 0.1, 0.05
    assert abs(solution_eval(SCHRO, u0, t, x) - np.exp(2j * np.pi * (4 * t + 2 * x))) < 1e-14
    gen = DispersionSpectrum((0, 0, 1), 0, G)
    assert abs(solution_eval(gen, u0, t, x) - np.exp(2j * np.pi * (-4 * t + 2 * x))) < 1e-14


def test_solution_parseval():
    # the L2 norm in x of u(t, .) is the l2 norm of c, from the Gram matrix of the integer frequencies
    rng = np.random.default_rng(0)
    u0 = random_data(rng)
    spec = DispersionSpectrum((0, 0.2, -1, 0, 1), 0.3, G)
    x = np.arange(64) / 64
    for t in rng.uniform(-5, 5, 5):
        vals = solution_eval(spec, u0, t, x)
        # the 64-point rule is exact for modes |k| <= 8
        assert np.mean(np.abs(vals) ** 2) == pytest.approx(np.sum(np.abs(u0.coeffs) ** 2), rel=1e-12)
    Gm = gram_matrix(u0.indices.astype(float), 1.0)
    assert np.allclose(Gm, np.eye(len(u0)), atol=1e-15)


# -- restriction


def test_restrict_zero_offsets():
    rng = np.random.default_rng(1)
    u0 = random_data(rng, -3, 3)
    v = restrict_to_path(SCHRO, u0, SensorPath(0, 0, 0.5))
    lam = u0.indices**2 + 0.5 * u0.indices
    order = np.argsort(lam)
    assert np.array_equal(v.frequencies, lam[order])
    assert np.array_equal(v.coefficients, u0.coeffs[order])


def test_restrict_matches_solution_on_path():
    rng = np.random.default_rng(2)
    u0 = random_data(rng)
    for conv in (Q, G):
        spec = DispersionSpectrum((0, 0, 0.5, 1), 0, conv)
        path = SensorPath(0.37, 0.81, 0.43)
        v = restrict_to_path(spec, u0, path)
        t = rng.uniform(0, 1, 30)
        direct = solution_eval(spec.with_velocity(path.a), u0, path.t0 + t, path.x0 + path.a * t)
        assert np.max(np.abs(v(t) - direct)) < 1e-10


def test_restrict_modulus_preserved():
    rng = np.random.default_rng(3)
    for _ in range(50):
        u0 = random_data(rng)
        path = SensorPath(rng.uniform(-100, 100), rng.uniform(0, 1), rng.uniform(-5, 5))
        v = restrict_to_path(SCHRO, u0, path)
        assert np.max(np.abs(np.sort(np.abs(v.coefficients)) - np.sort(np.abs(u0.coeffs)))) <= 1e-14


def test_restrict_collision():
    u0 = InitialData(((1, 1), (-2, 1)))
    with pytest.raises(FrequencyCollisionError) as info:
        restrict_to_path(SCHRO, u0, SensorPath(0, 0, 1))
    assert set(info.value.pair) == {1, -2}
    merged = restrict_to_path(SCHRO, u0, SensorPath(0, 0, 1), on_collision="merge")
    assert merged.terms == [(2.0, 2 + 0j)]


# -- observability


def test_functional_single_mode():
    rep = observability_functional(SCHRO, InitialData(((1, 2),)), SensorPath(0.3, 0.1, 0.5), 0.7)
    assert rep.functional_value == pytest.approx(2, abs=1e-12)
    assert rep.ratio == pytest.approx(2, abs=1e-12)
    assert rep.sup_coeff_norm == 2 and rep.regime is Regime.GENERIC


def test_functional_zero_data():
    rep = observability_functional(SCHRO, InitialData(((0, 0), (1, 0))), SensorPath(0, 0, 0.5), 0.5)
    assert rep.functional_value == 0 and rep.ratio is None
    assert rep.to_dict()["ratio"] is None


def test_functional_window_is_zero_to_T():
    rng = np.random.default_rng(4)
    u0 = random_data(rng, -3, 3)
    path = SensorPath(0.2, 0.4, 0.5)
    T = 0.3
    t = (np.arange(200_000) + 0.5) / 200_000 * T  # midpoint rule on [0, T]
    v = solution_eval(SCHRO.with_velocity(path.a), u0, path.t0 + t, path.x0 + path.a * t)
    rep = observability_functional(SCHRO, u0, path, T)
    assert rep.functional_value == pytest.approx(np.mean(np.abs(v)), rel=1e-7)


def test_functional_rejects_T():
    with pytest.raises(ValueError):
        observability_functional(SCHRO, InitialData(((1, 1),)), SensorPath(), 0)


def test_regime_agrees_with_exceptional_set():
    u0 = InitialData(((0, 1), (1, 1), (3, 1)))
    cases = [(Q, 1), (Q, Fraction(1, 2)), (G, 3), (G, 0.5)]
    for conv, a in cases:
        spec = DispersionSpectrum((0, 0, 1), a, conv)
        rep = observability_functional(spec, u0, SensorPath(0, 0, a), 0.5)
        member = exceptional_set_member(spec, 32)
        assert (rep.regime is Regime.GENERIC) == (member is None)
        assert rep.caveat
    quartic = DispersionSpectrum((0, Fraction(1, 3), 0, 1), Fraction(22, 3), G)
    regime, w = classify_velocity(quartic, Fraction(22, 3))
    assert regime is Regime.EXCEPTIONAL_VELOCITY and w == exceptional_set_member(quartic, 32)


@pytest.mark.parametrize("T", [0.1, 0.5, 1.0])
def test_generic_velocity_positivity(T):
    spec = DispersionSpectrum((0, 0, 1), Fraction(1, 2), Q)
    path = SensorPath(0, 0, 0.5)
    a = observability_battery(spec, path, T, range(-8, 9), 10_000, seed=11)
    b = observability_battery(spec, path, T, range(-8, 9), 10_000, seed=11)
    assert (a.ratios > 0).all() and a.converged.all()
    assert float(f"{a.min_ratio:.3g}") == float(f"{b.min_ratio:.3g}")


def test_battery_matches_functional():
    spec = DispersionSpectrum((0, 0, 1), Fraction(1, 2), Q)
    path = SensorPath(0.3, 0.6, 0.5)
    b = observability_battery(spec, path, 0.4, range(-3, 4), 5, seed=2)
    rng = np.random.default_rng(2)
    C = rng.exponential(size=(5, 7)) * np.exp(2j * np.pi * rng.random((5, 7)))
    for r, c in zip(b.ratios, C):
        rep = observability_functional(spec, InitialData.from_arrays(range(-3, 4), c), path, 0.4)
        assert r == pytest.approx(rep.ratio, rel=1e-12)


def test_observability_cross_module():
    # the functional is a Nazarov-type ratio on the reordered path frequencies
    spec = DispersionSpectrum((0, 0, 1), Fraction(1, 2), Q)
    ks = np.arange(-2, 3)
    u0 = InitialData.from_arrays(ks, np.ones(5))
    path = SensorPath(0, 0, 0.5)
    T = 0.5
    rep = observability_functional(spec, u0, path, T)
    v = restrict_to_path(spec, u0, path).shift_time(T / 2)
    lam = ks**2 + 0.5 * ks
    order = np.argsort(lam)
    seq = FrequencySequence(lam[order], 0)
    # same numerator; only the weights differ (|k| versus position in the rearrangement)
    direct = ratio(RatioKind.NAZAROV_L1, seq, v.coefficients, T)
    w_obs = 1 / (1 + np.abs(ks[order]))
    w_mu = 1 / (1 + np.arange(5))
    assert direct == pytest.approx(rep.ratio * w_obs.sum() / w_mu.sum(), rel=1e-9)
    est = estimate_constant(RatioKind.NAZAROV_L1, seq, T, budget=2000, seed=0)
    assert 0 < est.min_ratio <= direct


# -- counterexamples


def test_integer_counterexample_example():
    u0 = integer_velocity_counterexample(1, 1)
    assert u0.modes == ((1, 1 + 0j), (-2, -1 + 0j))
    res = path_residual(SCHRO, u0, SensorPath(0, 0, 1), samples=1000)
    assert res <= 1e-10 * u0.wiener_norm and u0.wiener_norm == 2


@given(st.integers(-6, 6), st.integers(-6, 6), st.floats(-3, 3), st.floats(0, 1),
       st.complex_numbers(min_magnitude=0.1, max_magnitude=10))
def test_integer_counterexample_nullity(a, k, t0, x0, c):
    if 2 * k == -a:
        with pytest.raises(DegeneratePairError):
            integer_velocity_counterexample(a, k, t0, x0, c)
        return
    u0 = integer_velocity_counterexample(a, k, t0, x0, c)
    res = path_residual(SCHRO, u0, SensorPath(t0, x0, a), samples=1000)
    assert u0.wiener_norm > 0 and res <= 1e-10 * u0.wiener_norm


def test_integer_counterexample_errors():
    with pytest.raises(DegeneratePairError):
        integer_velocity_counterexample(-2, 1)
    with pytest.raises(NotExceptionalError):
        integer_velocity_counterexample(0.5, 1)


def test_exceptional_counterexample_quadratic():
    spec = DispersionSpectrum((0, 0, 1), 3, G)
    u0 = exceptional_velocity_counterexample(spec, (3, 0), 0.4, 0.7)
    assert u0.indices.tolist() == [3, 0]
    assert path_residual(spec, u0, SensorPath(0.4, 0.7, 3)) <= 1e-10 * u0.wiener_norm
    with pytest.raises(NotExceptionalError):
        exceptional_velocity_counterexample(spec, (2, 0))


def test_exceptional_counterexample_quartic():
    spec = DispersionSpectrum((0, Fraction(1, 3), 0, 1), Fraction(22, 3), G)
    w = exceptional_set_member(spec, 20)
    u0 = exceptional_velocity_counterexample(spec, w, 1.3, 0.2, 2 - 1j)
    res = path_residual(spec, u0, SensorPath(1.3, 0.2, spec.velocity))
    assert res <= 1e-10 * u0.wiener_norm


# -- grid


def test_grid_sample():
    g = grid_sample(SCHRO, InitialData(((0, 3 - 4j),)), (0, 1, 5), 8)
    assert g.shape == (5, 8) and np.allclose(g, 5)
    assert not grid_sample(SCHRO, InitialData(), (0, 1, 4), 6).any()
    u0 = random_data(np.random.default_rng(5))
    rows = (grid_sample(SCHRO, u0, (-1, 1, 33), 32) ** 2).mean(axis=1)
    assert np.ptp(rows) <= 1e-10 * rows.max()
