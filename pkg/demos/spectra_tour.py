"""Frequencies seen by a moving sensor and their increasing rearrangement.

Run with ``python3 demos/spectra_tour.py``.
"""

from fractions import Fraction

import numpy as np

from nonharmonic.spectra import (
    Convention,
    DispersionSpectrum,
    exceptional_set_member,
    find_q0,
    quadratic_interlace,
    reorder,
)


def main():
    # free Schrodinger: lambda_k = k^2 + a k
    for a in (Fraction(1, 2), Fraction(8, 5)):
        r = quadratic_interlace(a, 4)
        print(f"a = {a}: {r.case} interlacing")
        print("  mu     ", np.round(r.mu.values, 3).tolist())
        print("  source ", r.source.tolist())

    # integer velocities collide
    spec = DispersionSpectrum((0, 0, 1), 1, Convention.QUADRATIC)
    print("\na = 1 collision witness:", exceptional_set_member(spec, 10))

    # a quartic dispersion: pairs (-k, k + q0) alternate in the tail
    quartic = DispersionSpectrum((0, 0.3, -1.0, 0.5, 1), 0.37, Convention.GENERAL)
    tag = find_q0(quartic)
    r = reorder(quartic, 20)
    print(f"\nquartic: q0 = {tag.q0} ({tag.kind}), head block of {r.head_size}")
    print("  last sources  ", r.source[-10:].tolist())
    print("  last gaps     ", np.round(np.diff(r.mu.values)[-5:], 1).tolist())
    print("  displacement  ", r.displacement_bound)


if __name__ == "__main__":
    main()
