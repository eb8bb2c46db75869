"""Observing a Schrodinger wave from a moving sensor, and how it fails.

Run with ``python3 demos/sensor_tour.py``.
"""

from fractions import Fraction

from nonharmonic.schrodinger import (
    InitialData,
    SensorPath,
    integer_velocity_counterexample,
    observability_battery,
    observability_functional,
    path_residual,
)
from nonharmonic.spectra import Convention, DispersionSpectrum


def main():
    spec = DispersionSpectrum((0, 0, 1), Fraction(1, 2), Convention.QUADRATIC)
    path = SensorPath(0.0, 0.0, 0.5)
    u0 = InitialData(tuple((k, 1.0) for k in range(-2, 3)))
    rep = observability_functional(spec, u0, path, 0.5)
    print(f"a = 1/2, five unit modes: functional {rep.functional_value:.4f}, ratio {rep.ratio:.4f} ({rep.regime.value})")

    for T in (0.1, 0.5, 1.0):
        b = observability_battery(spec, path, T, range(-8, 9), 2000, seed=0)
        print(f"  T = {T}: smallest ratio over 2000 random data = {b.min_ratio:.4f}")

    # integer velocity: two modes cancel on the whole path
    u0 = integer_velocity_counterexample(1, 1)
    sq = DispersionSpectrum((0, 0, 1), 1, Convention.QUADRATIC)
    res = path_residual(sq, u0, SensorPath(0, 0, 1))
    print(f"\na = 1: modes {[k for k, _ in u0.modes]}, sup of the trace {res:.1e}, norm {u0.wiener_norm}")


if __name__ == "__main__":
    main()
