"""Grids, quadrature weights and sampled test functions.

The polar product grid realizes the volume element
dmu = S_{d-1} sinh^{d-1}(r) dr d(omega) with the boundary measure normalized
to total mass 1 (so the spherical function is exactly 1 at the origin) and
the sphere-area factor S_{d-1} kept in one place, inside integrate_X.

Test functions are analytic bump specifications sampled on demand; off-grid
evaluation always goes through the analytic descriptor, never interpolation.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .geometry import (
    Isometry,
    apply_array,
    dist,
    sphere_area,
    volume_weight,
    _as_coords,
)


class ConfigurationError(ValueError):
    """Grid/bump parameters violate a precondition (support exceeding R_max, ...)."""


def _gauss_legendre(n: int, a: float, b: float):
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (b - a) * (x + 1.0) + a, 0.5 * (b - a) * w


@dataclass(frozen=True)
class RadialGrid:
    """Gauss-Legendre nodes and weights on [0, r_max]."""

    nodes: np.ndarray
    weights: np.ndarray
    r_max: float

    @staticmethod
    def gauss_legendre(n: int, r_max: float) -> "RadialGrid":
        if n <= 0 or r_max <= 0:
            raise ConfigurationError("radial grid needs n > 0 and r_max > 0")
        nodes, weights = _gauss_legendre(n, 0.0, r_max)
        return RadialGrid(nodes, weights, float(r_max))

    def __len__(self):
        return len(self.nodes)


@dataclass(frozen=True)
class BoundaryGrid:
    """Directions on S^{d-1} with weights normalized to total mass 1.

    dim == 2: uniform angles, weight 1/M each.
    dim == 3: Gauss-Legendre in cos(theta) times uniform azimuth.
    """

    dim: int
    directions: np.ndarray  # (m, dim) unit vectors
    weights: np.ndarray  # (m,), sums to 1

    @staticmethod
    def disk(n: int) -> "BoundaryGrid":
        if n <= 0:
            raise ConfigurationError("boundary grid needs n > 0")
        theta = 2.0 * np.pi * np.arange(n) / n
        dirs = np.stack([np.cos(theta), np.sin(theta)], axis=1)
        return BoundaryGrid(2, dirs, np.full(n, 1.0 / n))

    @staticmethod
    def sphere(n_theta: int, n_phi: int) -> "BoundaryGrid":
        if n_theta <= 0 or n_phi <= 0:
            raise ConfigurationError("boundary grid needs positive node counts")
        mu, w_mu = np.polynomial.legendre.leggauss(n_theta)  # mu = cos(theta)
        phi = 2.0 * np.pi * np.arange(n_phi) / n_phi
        sin_theta = np.sqrt(1.0 - mu**2)
        dirs = np.empty((n_theta * n_phi, 3))
        weights = np.empty(n_theta * n_phi)
        for i in range(n_theta):
            sl = slice(i * n_phi, (i + 1) * n_phi)
            dirs[sl, 0] = sin_theta[i] * np.cos(phi)
            dirs[sl, 1] = sin_theta[i] * np.sin(phi)
            dirs[sl, 2] = mu[i]
            weights[sl] = w_mu[i] / (2.0 * n_phi)
        return BoundaryGrid(3, dirs, weights)

    def __len__(self):
        return len(self.weights)


@dataclass(frozen=True)
class SpectralGrid:
    """Gauss-Legendre nodes on (0, lam_max] for real-spectrum integrals."""

    nodes: np.ndarray
    weights: np.ndarray
    lam_max: float

    @staticmethod
    def gauss_legendre(n: int, lam_max: float) -> "SpectralGrid":
        if n <= 0 or lam_max <= 0:
            raise ConfigurationError("spectral grid needs n > 0 and lam_max > 0")
        nodes, weights = _gauss_legendre(n, 0.0, lam_max)
        return SpectralGrid(nodes, weights, float(lam_max))

    def __len__(self):
        return len(self.nodes)


@dataclass(frozen=True)
class BumpSpec:
    """Analytic compactly supported test function.

    value(x) = profile(dist(c, x) / radius) * (1 + alpha * <omega_rel, axis>)

    where c = center . origin, omega_rel is the polar direction of
    center^{-1} x, profile(s) = exp(-1/(1-s^2)) for |s| < 1 (or the sharp
    indicator 1_{s<1} for the non-smooth control profile).
    """

    dim: int
    radius: float
    center: Isometry = None
    alpha: float = 0.0
    axis: np.ndarray = None
    profile: str = "smooth"
    amplitude: float = 1.0

    def __post_init__(self):
        if self.radius <= 0:
            raise ConfigurationError("bump radius must be positive")
        if self.center is None:
            object.__setattr__(self, "center", Isometry.identity(self.dim))
        if self.axis is None:
            a = np.zeros(self.dim)
            a[0] = 1.0
            object.__setattr__(self, "axis", a)
        else:
            a = np.asarray(self.axis, dtype=float)
            object.__setattr__(self, "axis", a / np.linalg.norm(a))
        if abs(self.alpha) > 1.0:
            raise ConfigurationError("angular modulation |alpha| must be <= 1")
        if self.profile not in ("smooth", "indicator"):
            raise ConfigurationError(f"unknown bump profile {self.profile!r}")

    @property
    def center_offset(self) -> float:
        """Hyperbolic distance from the origin to the bump center."""
        return dist(np.zeros(self.dim), self.center.origin_image())

    @property
    def support_radius(self) -> float:
        """Circumscribed radius about the origin: dist(0, center) + radius."""
        return self.center_offset + self.radius

    def __call__(self, points: np.ndarray) -> np.ndarray:
        """Evaluate at coordinate array (..., dim)."""
        pts = np.asarray(points, dtype=float)
        shape = pts.shape[:-1]
        flat = pts.reshape(-1, self.dim)
        rel = apply_array(self.center.inverse(), flat)
        norms = np.linalg.norm(rel, axis=1)
        r_rel = 2.0 * np.arctanh(np.minimum(norms, 1.0 - 1e-15))
        s = r_rel / self.radius
        vals = np.zeros(len(flat))
        inside = s < 1.0
        if self.profile == "smooth":
            vals[inside] = np.exp(-1.0 / (1.0 - s[inside] ** 2))
        else:
            vals[inside] = 1.0
        if self.alpha != 0.0:
            mod = np.ones(len(flat))
            nz = norms > 1e-15
            mod[nz] += self.alpha * (rel[nz] @ self.axis) / norms[nz]
            vals = vals * mod
        return (self.amplitude * vals).reshape(shape)


@dataclass(eq=False)
class SampledFunction:
    """Test function sampled on a radial x boundary product grid."""

    dim: int
    radial: RadialGrid
    boundary: BoundaryGrid
    values: np.ndarray  # (n_r, m) complex
    support_radius: float
    bump: BumpSpec = None
    _points: np.ndarray = field(default=None, repr=False)

    @property
    def points(self) -> np.ndarray:
        """Ball coordinates of the grid nodes, shape (n_r, m, dim)."""
        if self._points is None:
            t = np.tanh(0.5 * self.radial.nodes)
            self._points = t[:, None, None] * self.boundary.directions[None, :, :]
        return self._points

    @property
    def support_mask(self) -> np.ndarray:
        return self.radial.nodes <= self.support_radius

    def node_weights(self) -> np.ndarray:
        """Quadrature weights of dmu on the grid, shape (n_r, m)."""
        w_r = self.radial.weights * volume_weight(self.radial.nodes, self.dim)
        return sphere_area(self.dim) * w_r[:, None] * self.boundary.weights[None, :]

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        """Off-grid evaluation through the analytic descriptor (required)."""
        if self.bump is None:
            raise ConfigurationError(
                "off-grid evaluation requires an analytic bump descriptor"
            )
        return self.bump(points)

    def is_radial(self, tol: float = 1e-10) -> bool:
        """True when samples are boundary-independent (K-invariant function)."""
        spread = np.max(np.abs(self.values - self.values.mean(axis=1, keepdims=True)))
        scale = max(1.0, np.max(np.abs(self.values)))
        return bool(spread <= tol * scale)

    def radial_profile(self) -> np.ndarray:
        return self.values.mean(axis=1)

    def __add__(self, other: "SampledFunction") -> "SampledFunction":
        self._check_same_grids(other)
        return SampledFunction(
            self.dim,
            self.radial,
            self.boundary,
            self.values + other.values,
            max(self.support_radius, other.support_radius),
            bump=None,
        )

    def __mul__(self, scalar) -> "SampledFunction":
        bump = None
        if self.bump is not None and np.isrealobj(np.asarray(scalar)):
            bump = replace(self.bump, amplitude=self.bump.amplitude * float(scalar))
        return SampledFunction(
            self.dim, self.radial, self.boundary, self.values * scalar, self.support_radius, bump=bump
        )

    __rmul__ = __mul__

    def _check_same_grids(self, other):
        if self.radial is not other.radial or self.boundary is not other.boundary:
            raise ConfigurationError("sampled functions must share grids")


def sample_bump(spec: BumpSpec, radial: RadialGrid, boundary: BoundaryGrid) -> SampledFunction:
    """Sample a bump on the product grid; support must fit inside r_max."""
    if spec.support_radius > radial.r_max:
        raise ConfigurationError(
            f"bump support radius {spec.support_radius:.3f} exceeds r_max {radial.r_max}"
        )
    f = SampledFunction(spec.dim, radial, boundary, None, spec.support_radius, bump=spec)
    f.values = spec(f.points).astype(complex)
    # enforce exact zeros beyond the declared support
    f.values[~f.support_mask, :] = 0.0
    return f


def zero_function(dim: int, radial: RadialGrid, boundary: BoundaryGrid) -> SampledFunction:
    vals = np.zeros((len(radial), len(boundary)), dtype=complex)
    return SampledFunction(dim, radial, boundary, vals, 0.0, bump=None)


def integrate_X(f: SampledFunction) -> complex:
    """Quadrature of f over the hyperbolic volume."""
    return complex(np.sum(f.node_weights() * f.values))


def integrate_B(values: np.ndarray, boundary: BoundaryGrid) -> complex:
    """Normalized boundary integral (total mass 1) of samples on the grid."""
    return complex(np.sum(boundary.weights * np.asarray(values)))


def integrate_spectrum(values: np.ndarray, grid: SpectralGrid) -> complex:
    return complex(np.sum(grid.weights * np.asarray(values)))


def k_average(f: SampledFunction, post_map: Isometry, x) -> complex:
    """Average of f(g k x) over rotations k, realized as a direction average.

    Rotations push x uniformly over the Euclidean sphere of radius |x|, so
    the Haar average equals the boundary-grid average over directions.
    """
    coords = _as_coords(x, f.dim)
    norm = float(np.linalg.norm(coords))
    pts = apply_array(post_map, norm * f.boundary.directions)
    vals = f.evaluate(pts) if norm > 0 else f.evaluate(apply_array(post_map, coords[None, :]))
    if norm == 0.0:
        return complex(vals[0])
    return complex(np.sum(f.boundary.weights * vals))


def k_average_profile(f: SampledFunction, post_map: Isometry) -> SampledFunction:
    """Materialize the K-average as a boundary-independent sampled function."""
    t = np.tanh(0.5 * f.radial.nodes)
    prof = np.empty(len(f.radial), dtype=complex)
    for i, ti in enumerate(t):
        pts = apply_array(post_map, ti * f.boundary.directions)
        prof[i] = np.sum(f.boundary.weights * f.evaluate(pts))
    values = np.repeat(prof[:, None], len(f.boundary), axis=1)
    shift = dist(np.zeros(f.dim), post_map.origin_image())
    support = min(f.support_radius + shift, f.radial.r_max)
    return SampledFunction(f.dim, f.radial, f.boundary, values, support, bump=None)


def translate_bump(spec: BumpSpec, g: Isometry) -> BumpSpec:
    """Exact analytic translate: the bump of x -> f(g^{-1} x)."""
    return replace(spec, center=spec.center.then(g))
