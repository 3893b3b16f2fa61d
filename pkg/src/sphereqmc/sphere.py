"""Spherical geometry: configurations, stereographic maps, caps, and the
uniform and jittered samplers.

Points on S^d are unit rows of an (N, d+1) float array. A Configuration
bundles such an array with the sphere dimension, a provenance label and the
seed that produced it. The jittered sampler places one exact uniform draw in
every cell of a zonal equal-area partition of S^2.
"""

import csv
import math
from dataclasses import dataclass, field

import numpy as np

from .quadrature import gauss_legendre
from .specfun import log_gamma

NORM_TOLERANCE = 1e-6


def normalize_rows(points):
    """Return a copy of `points` with every row scaled to unit length."""
    pts = np.asarray(points, dtype=float)
    norms = np.linalg.norm(pts, axis=-1, keepdims=True)
    if np.any(norms == 0.0):
        raise ValueError("cannot normalize a zero vector")
    return pts / norms


@dataclass
class Configuration:
    """A finite point set on S^d.

    Rows of `points` are renormalized on construction; rows whose norm
    deviates from 1 by more than 1e-6 are rejected as corrupt input.
    """

    d: int
    points: np.ndarray
    label: str = "custom"
    seed: object = None

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != self.d + 1:
            raise ValueError(
                f"points must have shape (N, {self.d + 1}), got {pts.shape}"
            )
        norms = np.linalg.norm(pts, axis=1)
        bad = np.nonzero(np.abs(norms - 1.0) > NORM_TOLERANCE)[0]
        if bad.size:
            raise ValueError(
                f"rows {bad[:5].tolist()} have norm deviating from 1 by more "
                f"than {NORM_TOLERANCE}"
            )
        self.points = pts / norms[:, None]

    @property
    def n_points(self):
        return self.points.shape[0]

    def inner_products(self):
        """Gram matrix of pairwise inner products, clipped to [-1, 1]."""
        return np.clip(self.points @ self.points.T, -1.0, 1.0)


@dataclass(frozen=True)
class Cap:
    """Geodesic cap with unit center and geodesic radius in (0, pi)."""

    center: np.ndarray
    geodesic_radius: float

    def __post_init__(self):
        if not (0.0 < self.geodesic_radius < math.pi):
            raise ValueError("cap radius must lie in the open interval (0, pi)")
        c = normalize_rows(np.asarray(self.center, dtype=float)[None, :])[0]
        object.__setattr__(self, "center", c)


def cap_measure(cap, d):
    """Normalized surface measure of a geodesic cap on S^d.

    Closed forms for d <= 3, spectral quadrature in the colatitude otherwise.
    """
    r = cap.geodesic_radius if isinstance(cap, Cap) else float(cap)
    if not (0.0 <= r <= math.pi):
        raise ValueError("cap radius must lie in [0, pi]")
    if d == 1:
        return r / math.pi
    if d == 2:
        return (1.0 - math.cos(r)) / 2.0
    if d == 3:
        return (r - math.sin(r) * math.cos(r)) / math.pi
    c_d = math.exp(log_gamma((d + 1) / 2.0) - log_gamma(d / 2.0)) / math.sqrt(math.pi)
    theta, w = gauss_legendre(64, 0.0, r)
    return c_d * float(np.sum(w * np.sin(theta) ** (d - 1)))


def inverse_stereographic(z, at_infinity=None):
    """Map complex plane points onto S^2.

    Phi(z) = (2 Re z, 2 Im z, |z|^2 - 1) / (1 + |z|^2), so z = 0 goes to the
    south pole (0, 0, -1). `at_infinity` is an optional boolean mask marking
    entries that represent the point at infinity (the north pole); large |z|
    are handled through the reciprocal coordinate for stability.
    """
    zz = np.asarray(z, dtype=complex)
    scalar = zz.ndim == 0
    zz = np.atleast_1d(zz)
    out = np.empty(zz.shape + (3,))

    big = np.abs(zz) > 1e6
    if at_infinity is not None:
        big = big | np.atleast_1d(np.asarray(at_infinity, dtype=bool))
    small = ~big

    zs = zz[small]
    denom = 1.0 + np.abs(zs) ** 2
    out[small, 0] = 2.0 * zs.real / denom
    out[small, 1] = 2.0 * zs.imag / denom
    out[small, 2] = (np.abs(zs) ** 2 - 1.0) / denom

    if np.any(big):
        zb = zz[big]
        with np.errstate(divide="ignore", invalid="ignore"):
            w = np.where(np.isfinite(zb) & (zb != 0), 1.0 / zb, 0.0)
        denom = 1.0 + np.abs(w) ** 2
        out[big, 0] = 2.0 * w.real / denom
        out[big, 1] = -2.0 * w.imag / denom
        out[big, 2] = (1.0 - np.abs(w) ** 2) / denom

    return out[0] if scalar else out


def stereographic_projection(points):
    """Inverse of `inverse_stereographic`: S^2 points to plane coordinates.

    The north pole maps to complex infinity.
    """
    pts = np.asarray(points, dtype=float)
    scalar = pts.ndim == 1
    pts = np.atleast_2d(pts)
    with np.errstate(divide="ignore", invalid="ignore"):
        z = (pts[:, 0] + 1j * pts[:, 1]) / (1.0 - pts[:, 2])
    z = np.where(pts[:, 2] >= 1.0, np.inf + 0j, z)
    return z[0] if scalar else z


def sample_uniform(d, n_points, seed):
    """n_points i.i.d. uniform points on S^d (normalized Gaussian method)."""
    if n_points < 1:
        raise ValueError("need at least one point")
    rng = np.random.default_rng(seed)
    pts = rng.standard_normal((n_points, d + 1))
    norms = np.linalg.norm(pts, axis=1)
    while np.any(norms == 0.0):
        redo = norms == 0.0
        pts[redo] = rng.standard_normal((int(np.sum(redo)), d + 1))
        norms = np.linalg.norm(pts, axis=1)
    return Configuration(d=d, points=pts / norms[:, None], label="uniform", seed=seed)


@dataclass(frozen=True)
class EqualAreaPartition:
    """Zonal equal-area partition of S^2 into N cells.

    Two polar caps plus latitude collars split into equal azimuthal cells.
    `bands` holds (theta_lo, theta_hi, m_cells) with colatitudes measured
    from the north pole; every cell has normalized area exactly 1/N.
    """

    n_cells: int
    bands: tuple = field(repr=False)

    def cells(self):
        """Yield (band_index, (phi_lo, phi_hi), (theta_lo, theta_hi))."""
        for b, (t0, t1, m) in enumerate(self.bands):
            width = 2.0 * math.pi / m
            for j in range(m):
                yield b, (j * width, (j + 1) * width), (t0, t1)

    def cell_areas(self):
        """Normalized area of every cell, in cell order."""
        areas = []
        for _, (p0, p1), (t0, t1) in self.cells():
            areas.append((p1 - p0) / (2.0 * math.pi) * (math.cos(t0) - math.cos(t1)) / 2.0)
        return np.array(areas)

    def cell_diameters(self):
        """Euclidean diameter of every cell (exact over the corner/equator set)."""
        diams = []
        for _, (p0, p1), (t0, t1) in self.cells():
            dphi = min(p1 - p0, math.pi)
            thetas = [t0, t1]
            if t0 < math.pi / 2.0 < t1:
                thetas.append(math.pi / 2.0)
            best = 0.0
            for ta in thetas:
                for tb in thetas:
                    cosd = math.cos(ta) * math.cos(tb) + math.sin(ta) * math.sin(tb) * math.cos(dphi)
                    best = max(best, 2.0 - 2.0 * cosd)
            diams.append(math.sqrt(max(best, 0.0)))
        return np.array(diams)

    def locate(self, point):
        """Index (in cell order) of the cell containing a unit vector."""
        x, y, z = point
        theta = math.acos(min(1.0, max(-1.0, z)))
        phi = math.atan2(y, x) % (2.0 * math.pi)
        idx = 0
        for b, (t0, t1, m) in enumerate(self.bands):
            last = b == len(self.bands) - 1
            if theta < t1 or (last and theta <= t1 + 1e-12):
                width = 2.0 * math.pi / m
                j = min(int(phi / width), m - 1)
                return idx + j
            idx += m
        raise ValueError("point not located in any cell")


def build_equal_area_partition(n_cells):
    """Equal-area, diameter-bounded zonal partition of S^2 into n_cells cells.

    Polar caps of area 1/N, collars sized near sqrt(4 pi / N), then collar
    boundaries adjusted so each collar area is an exact multiple of 1/N.
    """
    N = int(n_cells)
    if N < 2:
        raise ValueError("partition needs at least 2 cells")
    theta_cap = math.acos(1.0 - 2.0 / N)
    if N == 2:
        bands = ((0.0, theta_cap, 1), (theta_cap, math.pi, 1))
        return EqualAreaPartition(n_cells=2, bands=bands)

    span = math.pi - 2.0 * theta_cap
    delta_ideal = math.sqrt(4.0 * math.pi / N)
    n_collars = max(1, round(span / delta_ideal))

    while True:
        delta = span / n_collars
        # ideal (real-valued) cell counts per collar, then cumulative rounding
        areas = []
        for i in range(n_collars):
            t0 = theta_cap + i * delta
            t1 = theta_cap + (i + 1) * delta
            areas.append((math.cos(t0) - math.cos(t1)) / 2.0 * N)
        counts = []
        assigned = 0
        cum = 0.0
        for y in areas:
            cum += y
            m = round(cum) - assigned
            counts.append(m)
            assigned += m
        if all(m >= 1 for m in counts):
            break
        n_collars -= 1
        if n_collars < 1:
            raise RuntimeError("failed to build partition")

    # exact boundaries: collar i ends after 1 + counts[0..i] cells of area 1/N
    bands = [(0.0, theta_cap, 1)]
    c = 1
    lo = theta_cap
    for m in counts:
        c += m
        hi = math.acos(max(-1.0, min(1.0, 1.0 - 2.0 * c / N)))
        bands.append((lo, hi, m))
        lo = hi
    bands.append((lo, math.pi, 1))
    return EqualAreaPartition(n_cells=N, bands=tuple(bands))


def sample_jittered(n_points, seed, partition=None):
    """One uniform point per cell of the equal-area partition of S^2.

    Exact inversion sampling in each cell: cos(theta) uniform on the cell's
    z-interval, azimuth uniform on its phi-interval. No rejection.
    """
    if n_points < 2:
        raise ValueError("jittered sampling needs at least 2 points")
    part = partition if partition is not None else build_equal_area_partition(n_points)
    if part.n_cells != n_points:
        raise ValueError("partition size does not match n_points")
    rng = np.random.default_rng(seed)
    pts = np.empty((n_points, 3))
    for i, (_, (p0, p1), (t0, t1)) in enumerate(part.cells()):
        z_hi, z_lo = math.cos(t0), math.cos(t1)
        z = z_lo + rng.random() * (z_hi - z_lo)
        phi = p0 + rng.random() * (p1 - p0)
        r = math.sqrt(max(0.0, 1.0 - z * z))
        pts[i] = (r * math.cos(phi), r * math.sin(phi), z)
    return Configuration(d=2, points=pts, label="jittered", seed=seed)


def save_configuration(cfg, path):
    """Write a configuration as CSV with header x0,...,xd, 17 significant digits."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([f"x{i}" for i in range(cfg.d + 1)])
        for row in cfg.points:
            writer.writerow([f"{v:.17g}" for v in row])


def load_configuration(path, label="loaded"):
    """Read a configuration CSV, renormalizing rows and rejecting corrupt ones."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if not header or not header[0].startswith("x"):
            raise ValueError(f"{path}: missing x0,...,xd header")
        d = len(header) - 1
        rows = [[float(v) for v in row] for row in reader if row]
    pts = np.array(rows, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != d + 1:
        raise ValueError(f"{path}: malformed rows")
    return Configuration(d=d, points=pts, label=label)
