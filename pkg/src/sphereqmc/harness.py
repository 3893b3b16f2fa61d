"""Seeded Monte Carlo scans over ensembles and the strength fit.

A scan draws R independent replicates of each requested configuration size,
computes wce^2 for every order s in the grid from one shared Gram matrix
per replicate, and aggregates mean / standard error / min / max per (N, s)
row. Replicate seeds come from a splittable scheme keyed on
(master seed, ensemble, size, replicate), so results are bit-identical for
any worker count.

The strength fit regresses log mean wce^2 on log N per s and reports the
largest s whose slope is compatible with the optimal rate -2s/d; the
decision rule |slope + 2s/d| <= tol is a pragmatic estimator, not a theorem.
"""

import csv
import math
import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from threadpoolctl import threadpool_limits

from . import __version__
from .detproc import harmonic_kernel, hkpv_sample, spherical_kernel
from .energy import compensated_sum
from .polyzeros import zeros_on_sphere
from .specfun import polyspace_dim
from .sphere import build_equal_area_partition, sample_jittered, sample_uniform
from .wce import SobolevOrder, wce_squared_from_inner_products

ENSEMBLES = ("uniform", "jittered", "harmonic", "spherical", "elliptic")
_KIND_CODES = {kind: i + 1 for i, kind in enumerate(ENSEMBLES)}

SCAN_COLUMNS = (
    "ensemble", "d", "N", "s", "reps",
    "mean_wce2", "stderr_wce2", "min_wce2", "max_wce2",
)


@dataclass(frozen=True)
class EnsembleSpec:
    """Which random process to draw from, with its size parameter.

    For the harmonic ensemble `size` is the degree L and the point count is
    dim P_L(S^d); for every other ensemble `size` is the point count N >= 2.
    """

    kind: str
    size: int
    d: int = 2
    master_seed: int = 0

    def __post_init__(self):
        if self.kind not in ENSEMBLES:
            raise ValueError(f"unknown ensemble {self.kind!r}")
        if self.kind != "harmonic" and self.d != 2 and self.kind != "uniform":
            raise ValueError(f"{self.kind} ensemble is defined on S^2 only")
        if self.kind == "harmonic":
            if self.size < 0:
                raise ValueError("harmonic degree L must be >= 0")
        elif self.size < 2:
            raise ValueError("need at least 2 points")
        if self.master_seed < 0:
            raise ValueError("master seed must be a nonnegative integer")

    @property
    def n_points(self):
        if self.kind == "harmonic":
            return polyspace_dim(self.d, self.size)
        return self.size


def replicate_seed(master_seed, kind, size, replicate):
    """Collision-free seed for one replicate of one scan cell."""
    return np.random.SeedSequence(
        [int(master_seed), _KIND_CODES[kind], int(size), int(replicate)]
    )


def make_sampler(kind, d, size):
    """Callable seed -> Configuration for one ensemble at one size."""
    if kind == "uniform":
        return lambda seed: sample_uniform(d, size, seed)
    if kind == "jittered":
        part = build_equal_area_partition(size)
        return lambda seed: sample_jittered(size, seed, partition=part)
    if kind == "harmonic":
        kern = harmonic_kernel(d, size)
        return lambda seed: hkpv_sample(kern, seed)
    if kind == "spherical":
        kern = spherical_kernel(size)
        return lambda seed: hkpv_sample(kern, seed)
    if kind == "elliptic":
        return lambda seed: zeros_on_sphere(size, seed)
    raise ValueError(f"unknown ensemble {kind!r}")


@dataclass(frozen=True)
class ScanRow:
    ensemble: str
    d: int
    N: int
    s: float
    reps: int
    mean_wce2: float
    stderr_wce2: float
    min_wce2: float
    max_wce2: float


@dataclass
class ScanResult:
    rows: list
    metadata: dict = field(default_factory=dict)

    def row(self, N, s):
        for r in self.rows:
            if r.N == N and r.s == s:
                return r
        raise KeyError(f"no row with N={N}, s={s}")


def filter_s_grid(s_values, d):
    """Drop orders the energy formulas cannot handle, with a warning each."""
    kept = []
    for s in s_values:
        try:
            SobolevOrder(d=d, s=float(s))
        except ValueError as exc:
            warnings.warn(f"dropping s = {s} from the grid: {exc}")
            continue
        kept.append(float(s))
    return kept


def resolve_threads(threads=None):
    """Worker count: explicit argument, else SPHEREQMC_THREADS, else 1."""
    if threads is not None:
        return max(1, int(threads))
    env = os.environ.get("SPHEREQMC_THREADS")
    if env:
        return max(1, int(env))
    return 1


def run_scan(kind, sizes, s_values, reps, master_seed, d=2, threads=None):
    """Monte Carlo scan of mean wce^2 over sizes x orders.

    `sizes` are point counts N, except for the harmonic ensemble where they
    are degrees L. Returns a ScanResult with one row per (N, s), aggregated
    over `reps` replicates; output is a pure function of the arguments,
    independent of the worker count.
    """
    if reps < 2:
        raise ValueError("need at least 2 replicates")
    if kind not in ENSEMBLES:
        raise ValueError(f"unknown ensemble {kind!r}")
    s_list = filter_s_grid(s_values, d)
    if not s_list:
        raise ValueError("no valid s values remain in the grid")
    orders = [SobolevOrder(d=d, s=s) for s in s_list]
    n_workers = resolve_threads(threads)

    cells = []
    for size in sizes:
        spec = EnsembleSpec(kind=kind, size=int(size), d=d, master_seed=master_seed)
        sampler = make_sampler(kind, d, int(size))
        cells.append((spec, sampler))

    def one_replicate(args):
        spec, sampler, r = args
        seed = replicate_seed(master_seed, kind, spec.size, r)
        cfg = sampler(seed)
        gram = cfg.inner_products()
        return [wce_squared_from_inner_products(gram, so) for so in orders]

    tasks = [(spec, sampler, r) for spec, sampler in cells for r in range(reps)]
    # replicate-level parallelism only; threaded BLAS underneath would just
    # spin on the small per-replicate matrices
    with threadpool_limits(limits=1, user_api="blas"):
        if n_workers == 1:
            results = [one_replicate(t) for t in tasks]
        else:
            with ThreadPoolExecutor(max_workers=n_workers) as pool:
                results = list(pool.map(one_replicate, tasks))

    rows = []
    for i, (spec, _) in enumerate(cells):
        block = np.array(results[i * reps:(i + 1) * reps])  # (reps, n_s)
        for j, s in enumerate(s_list):
            vals = block[:, j]
            mean = compensated_sum(vals) / reps
            var = compensated_sum((vals - mean) ** 2) / (reps - 1)
            rows.append(ScanRow(
                ensemble=kind, d=d, N=spec.n_points, s=s, reps=reps,
                mean_wce2=float(mean),
                stderr_wce2=float(math.sqrt(var / reps)),
                min_wce2=float(np.min(vals)),
                max_wce2=float(np.max(vals)),
            ))
    meta = {"master_seed": master_seed, "ensemble": kind, "version": __version__}
    return ScanResult(rows=rows, metadata=meta)


def write_scan_csv(result, path):
    """Persist scan rows; 17 significant digits, columns fixed, no metadata."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(SCAN_COLUMNS)
        for r in result.rows:
            writer.writerow([
                r.ensemble, r.d, r.N, f"{r.s:.17g}", r.reps,
                f"{r.mean_wce2:.17g}", f"{r.stderr_wce2:.17g}",
                f"{r.min_wce2:.17g}", f"{r.max_wce2:.17g}",
            ])


def read_scan_csv(path):
    """Load scan rows written by write_scan_csv."""
    rows = []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != list(SCAN_COLUMNS):
            raise ValueError(f"{path}: unexpected scan CSV columns {reader.fieldnames}")
        for rec in reader:
            rows.append(ScanRow(
                ensemble=rec["ensemble"], d=int(rec["d"]), N=int(rec["N"]),
                s=float(rec["s"]), reps=int(rec["reps"]),
                mean_wce2=float(rec["mean_wce2"]),
                stderr_wce2=float(rec["stderr_wce2"]),
                min_wce2=float(rec["min_wce2"]),
                max_wce2=float(rec["max_wce2"]),
            ))
    return ScanResult(rows=rows, metadata={})


@dataclass(frozen=True)
class SlopeFit:
    s: float
    slope: float
    stderr: float
    n_sizes: int
    target: float


@dataclass(frozen=True)
class StrengthFit:
    """Per-order slopes of log mean wce^2 against log N and the fitted strength.

    s_star is the largest grid order whose slope matches the optimal rate
    -2s/d within the tolerance; None if no order qualifies.
    """

    slopes: tuple
    s_star: Optional[float]
    tol: float


def fit_strength(result, d, tol=0.15):
    """Least-squares slopes per s and the strength estimate s*."""
    by_s = {}
    for r in result.rows:
        by_s.setdefault(r.s, []).append(r)
    slopes = []
    for s in sorted(by_s):
        rows = sorted(by_s[s], key=lambda r: r.N)
        ns = [r.N for r in rows]
        if len(set(ns)) < 4:
            raise ValueError(f"need at least 4 sizes per s for the fit, s = {s}")
        x = np.log([r.N for r in rows])
        y = np.log([r.mean_wce2 for r in rows])
        xbar = x.mean()
        sxx = float(np.sum((x - xbar) ** 2))
        beta = float(np.sum((x - xbar) * (y - y.mean())) / sxx)
        resid = y - (y.mean() + beta * (x - xbar))
        dof = len(x) - 2
        se = math.sqrt(float(np.sum(resid ** 2)) / dof / sxx) if dof > 0 else 0.0
        slopes.append(SlopeFit(
            s=s, slope=beta, stderr=se, n_sizes=len(x), target=-2.0 * s / d,
        ))
    qualifying = [f.s for f in slopes if abs(f.slope - f.target) <= tol]
    s_star = max(qualifying) if qualifying else None
    return StrengthFit(slopes=tuple(slopes), s_star=s_star, tol=tol)
