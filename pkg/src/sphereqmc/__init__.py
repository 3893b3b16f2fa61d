"""sphereqmc: random point configurations on spheres and their quadrature
quality.

Samplers for five point processes on S^d (uniform, jittered, harmonic and
spherical determinantal ensembles, elliptic-polynomial zeros), discrete and
continuous Riesz energies, worst-case integration errors in the Sobolev
scale, spherical cap discrepancies, closed-form expected values, and a
seeded Monte Carlo harness that estimates each ensemble's average QMC
strength from slope scans.
"""

__version__ = "0.1.0"

from .closedforms import (
    ExpectedValue,
    elliptic_subleading_coefficient,
    expected_energy_elliptic,
    expected_energy_spherical,
    expected_log_energy_elliptic,
    expected_wce2_harmonic_quadrature,
    expected_wce2_spherical,
    proposition7_lhs,
    proposition7_limit,
)
from .detproc import ProjectionKernel, harmonic_kernel, hkpv_sample, spherical_kernel
from .energy import compensated_sum, continuous_energy, log_energy, riesz_energy
from .harness import (
    EnsembleSpec,
    ScanResult,
    ScanRow,
    StrengthFit,
    fit_strength,
    make_sampler,
    read_scan_csv,
    replicate_seed,
    run_scan,
    write_scan_csv,
)
from .polyzeros import EllipticPolynomial, RootSet, find_roots, sample_elliptic, zeros_on_sphere
from .quadrature import fibonacci_sphere, gauss_jacobi, gauss_legendre
from .specfun import (
    DimensionTable,
    JacobiParams,
    bessel_j,
    gamma_ratio,
    gegenbauer_eval,
    harmonic_dim,
    jacobi_eval,
    kernel_jacobi_params,
    log_gamma,
    pochhammer,
    polyspace_dim,
    zeta,
)
from .sphere import (
    Cap,
    Configuration,
    EqualAreaPartition,
    build_equal_area_partition,
    cap_measure,
    inverse_stereographic,
    load_configuration,
    sample_jittered,
    sample_uniform,
    save_configuration,
    stereographic_projection,
)
from .wce import (
    SobolevOrder,
    SpectralWce,
    alpha_coefficients,
    discrepancy_l2_quadrature,
    discrepancy_l2_stolarsky,
    discrepancy_linf_sampled,
    stolarsky_constant,
    wce_squared,
    wce_squared_from_inner_products,
    wce_squared_spectral,
)
