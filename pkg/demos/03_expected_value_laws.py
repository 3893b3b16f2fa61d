#!/usr/bin/env python3
"""Monte Carlo means against the closed-form expectations.

Each random ensemble comes with a reference law: the spherical ensemble has
an exact finite-N expected energy and expected wce^2, elliptic zeros have an
exact expected logarithmic energy and a two-term expansion for Riesz
energies, the harmonic ensemble reduces to a one-dimensional Jacobi-weighted
integral, and i.i.d. uniform points satisfy E[wce^2] = V/N. A few hundred
replicates reproduce every law within Monte Carlo error.
"""

import math

import numpy as np

from sphereqmc import (
    SobolevOrder,
    expected_log_energy_elliptic,
    expected_wce2_harmonic_quadrature,
    expected_wce2_spherical,
    harmonic_kernel,
    hkpv_sample,
    log_energy,
    replicate_seed,
    sample_uniform,
    spherical_kernel,
    wce_squared,
    zeros_on_sphere,
)

REPS = 300
SO = SobolevOrder(d=2, s=1.5)


def show(name, values, reference):
    mean = np.mean(values)
    se = np.std(values, ddof=1) / math.sqrt(len(values))
    dev = (mean - reference) / se
    print(f"  {name:<34} mc {mean:12.6g}   ref {reference:12.6g}   dev {dev:+.2f} SE")


def main():
    print(f"{REPS} replicates per line; dev is in Monte Carlo standard errors\n")

    n = 32
    kern = spherical_kernel(n)
    vals = [wce_squared(hkpv_sample(kern, replicate_seed(1, "spherical", n, r)), SO)
            for r in range(REPS)]
    show(f"spherical N={n}: wce^2(3/2)", vals, expected_wce2_spherical(n, 1.5).value)

    vals = [log_energy(zeros_on_sphere(n, replicate_seed(1, "elliptic", n, r)))
            for r in range(REPS)]
    show(f"elliptic N={n}: log energy", vals, expected_log_energy_elliptic(n).value)

    kern = harmonic_kernel(2, 4)  # 25 points
    vals = [wce_squared(hkpv_sample(kern, replicate_seed(1, "harmonic", 4, r)), SO)
            for r in range(REPS)]
    show("harmonic L=4: wce^2(3/2)", vals,
         expected_wce2_harmonic_quadrature(2, 4, 1.5).value)

    vals = [wce_squared(sample_uniform(2, n, replicate_seed(1, "uniform", n, r)), SO)
            for r in range(REPS)]
    show(f"uniform N={n}: wce^2(3/2)", vals, (4.0 / 3.0) / n)


if __name__ == "__main__":
    main()
