#!/usr/bin/env python3
"""Estimate average QMC strength from slope scans (reduced-size edition).

A sequence of random N-point sets has average strength s* when the mean
squared worst-case error decays at the optimal rate N^(-s) for every order
s below s*, and saturates at the N^(-s*) rate above. The scan estimates
log-log slopes of mean wce^2 against N; where the slope stops tracking -s
the strength has been passed.

With the reduced replicate counts here (R = 60) this takes about a minute;
the saturation of the spherical ensemble at strength 2 is already obvious.
Zeros of elliptic polynomials saturate at 3 and the jittered baseline at 2,
as larger scans reproduce sharply.
"""

from sphereqmc import fit_strength, run_scan


def show(name, scan, d=2):
    fit = fit_strength(scan, d=d)
    print(f"{name}: strength estimate s* = {fit.s_star}")
    print("  s      slope     target -2s/d   |gap|")
    for f in fit.slopes:
        print(f"  {f.s:<6g} {f.slope:>8.3f}   {f.target:>8.3f}      {abs(f.slope - f.target):.3f}")
    print()


def main():
    sizes = [16, 32, 64, 128]

    scan = run_scan("spherical", sizes, [1.25, 1.75, 2.5], reps=60, master_seed=4)
    show("spherical ensemble (strength 2)", scan)

    scan = run_scan("elliptic", sizes, [1.5, 2.5, 3.5], reps=60, master_seed=4)
    show("elliptic-polynomial zeros (strength 3)", scan)

    scan = run_scan("uniform", sizes, [1.5], reps=200, master_seed=4)
    show("uniform i.i.d. (no strength: slope stuck at -1)", scan)


if __name__ == "__main__":
    main()
