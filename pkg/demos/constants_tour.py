"""Empirical Ingham and Nazarov constants.

Every number printed is the smallest ratio found by the search, hence an upper
bound on the true constant. Run with ``python3 demos/constants_tour.py``.
"""

from nonharmonic.inequalities import RatioKind, constant_sweep, estimate_constant, linear_family, power_family
from nonharmonic.trigpoly import TrigPoly, l1_norm


def main():
    r = l1_norm(TrigPoly([0, 1], [1, 1]), 1.0)
    print(f"(1/T) int |1 + e^(2 pi i t)| over one period = {r.value:.12f} (4/pi = 1.273239544735)")

    # unit gaps, T = 1: the L1 / sup ratio stays above 1/2
    est = estimate_constant(RatioKind.INGHAM_L1, linear_family()(8, True), 1.0, budget=5000, seed=0)
    print(f"\nIngham L1, lambda_k = k, T = 1: {est.min_ratio:.4f} after {est.evaluations} evaluations")

    # squares: gaps grow, so short windows keep a positive constant
    print("\nNazarov, lambda_k = k^2, T = 0.1")
    for row in constant_sweep(RatioKind.NAZAROV_L1, power_family(2), [0.1], [4, 8, 16], budget=2000, seed=0):
        print(f"  N = {row.N:3d}: {row.estimate.min_ratio:.5f}")


if __name__ == "__main__":
    main()
