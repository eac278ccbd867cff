"""The transform stack on H^2 and H^3.

Forward boundary transform (horocycle-wave analysis), Poisson transform,
their composition (the joint-eigenspace transform, both by factorization and
by the distance-kernel convolution oracle), spherical transform, inversion,
Plancherel, and the residuals used to verify the identities connecting them.

Boundary integrals at evaluation points far from the origin switch to an
exponentially graded angular rule: the Poisson kernel peak has width ~e^-r
and a fixed product grid cannot resolve it (same substitution as the d=2
spherical function).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import (
    Isometry,
    apply_array,
    busemann_field,
    dist,
    half_root_sum,
    pairwise_dist,
    point_to_polar,
    polar_to_point,
    _as_coords,
)
from .grids import (
    BoundaryGrid,
    SampledFunction,
    SpectralGrid,
    integrate_spectrum,
    k_average_profile,
)
from .spectral import c_function, eigenvalue_of, plancherel_density_table, spherical_phi

# Beyond these radii the product boundary grid cannot resolve the Poisson
# kernel peak and the graded rule takes over.
FAR_RADIUS = {2: 3.2, 3: 2.2}

# Derived analytically for d = 3 by reducing the radial inversion to a sine
# transform; the d = 2 value is calibrated at runtime (calibrate_kappa) and
# lands on the same number.
KAPPA_D3 = 1.0 / (2.0 * np.pi**2)

_CHUNK = 4_000_000


class TransformUsageError(ValueError):
    """Operation called outside its contract (non-radial input, bad radius, ...)."""


def _support_data(f: SampledFunction):
    mask = f.support_mask
    pts = f.points[mask].reshape(-1, f.dim)
    wv = (f.node_weights()[mask] * f.values[mask]).ravel()
    return pts, wv


def helgason_forward(f: SampledFunction, lam: complex, b):
    """Forward transform: quadrature of f(x) e^{(-i lam + rho)(A(x, b))} over dmu.

    ``b`` may be a single boundary point or an (m, d) array of unit vectors;
    lam may be complex (the integrand is entire in lam).
    """
    bs = np.atleast_2d(_as_coords(b, f.dim))
    pts, wv = _support_data(f)
    rho = half_root_sum(f.dim)
    s = -1j * complex(lam) + rho
    out = np.empty(len(bs), dtype=complex)
    step = max(1, _CHUNK // max(len(pts), 1))
    for i in range(0, len(bs), step):
        B = busemann_field(pts, bs[i : i + step])
        out[i : i + step] = wv @ np.exp(s * B)
    return out[0] if np.ndim(_as_coords(b, f.dim)) == 1 else out


def boundary_slices(f: SampledFunction, lams, bs=None) -> np.ndarray:
    """Forward transform on a lam grid in one pass: values of shape (n_lam, m).

    Shares the Busemann matrix across spectral nodes chunk by chunk, which is
    what makes full-grid sweeps affordable in three dimensions.
    """
    if bs is None:
        bs = f.boundary.directions
    bs = np.atleast_2d(np.asarray(bs, dtype=float))
    lams = np.asarray(lams, dtype=complex)
    pts, wv = _support_data(f)
    rho = half_root_sum(f.dim)
    out = np.empty((len(lams), len(bs)), dtype=complex)
    step = max(1, _CHUNK // max(len(pts), 1))
    for i in range(0, len(bs), step):
        B = busemann_field(pts, bs[i : i + step])
        for k, lam in enumerate(lams):
            out[k, i : i + step] = wv @ np.exp((-1j * lam + rho) * B)
    return out


def poisson(F, boundary: BoundaryGrid, lam: complex, x):
    """Poisson transform of boundary samples F at interior point(s) x."""
    xs = np.atleast_2d(_as_coords(x))
    rho = half_root_sum(boundary.dim)
    B = busemann_field(xs, boundary.directions)
    vals = np.exp((1j * complex(lam) + rho) * B) @ (boundary.weights * np.asarray(F))
    return vals[0] if np.ndim(_as_coords(x)) == 1 else vals


def _orthonormal_frame(omega: np.ndarray):
    """Two unit vectors completing omega to an orthonormal basis of R^3."""
    k = np.argmin(np.abs(omega))
    e = np.zeros(3)
    e[k] = 1.0
    p = np.cross(omega, e)
    p /= np.linalg.norm(p)
    q = np.cross(omega, p)
    return p, q


def _graded_angle_rule(lam: complex, r: float, dim: int, tail: float = 38.0, max_step: float = np.inf):
    """Nodes v, weights, mapped polar angle theta(v) for tan(theta/2) = e^{-r} sinh(v).

    The d = 2 integrand is even in v and the half-line trapezoid converges
    exponentially; the d = 3 measure sin(theta) d(theta) is odd in v, which
    degrades the trapezoid to O(h^2), so composite Gauss-Legendre panels are
    used there instead.
    """
    h = min(2.0 * np.pi / (2.0 * abs(complex(lam).real) + 30.0), max_step)
    v_max = r + tail
    if dim == 2:
        n = int(np.ceil(v_max / h)) + 1
        v = np.linspace(0.0, v_max, n)
        w = np.full(n, v[1] - v[0])
        w[0] *= 0.5
        w[-1] *= 0.5
    else:
        panel = min(1.0, 6.0 * h)
        xg, wg = np.polynomial.legendre.leggauss(16)
        edges = np.linspace(0.0, v_max, int(np.ceil(v_max / panel)) + 1)
        lo, hi = edges[:-1], edges[1:]
        v = (0.5 * (hi - lo)[:, None] * (xg + 1.0)[None, :] + lo[:, None]).ravel()
        w = (0.5 * (hi - lo)[:, None] * wg[None, :]).ravel()
    t = np.exp(-r) * np.sinh(v)
    theta = 2.0 * np.arctan(t)
    return v, w, t, theta


def _poisson_far(F_eval, dim: int, lam: complex, x, angular_scale: float, n_phi: int = 96):
    """Graded Poisson transform at a far interior point.

    ``F_eval`` maps an (m, d) array of boundary directions to boundary values.
    ``angular_scale`` is the smallest angular feature of F (about e^{-R_f}),
    which limits the step of the graded rule.
    """
    coords = _as_coords(x)
    r, omega = point_to_polar(coords)
    rho = half_root_sum(dim)
    lam = complex(lam)
    # the boundary density's angular feature scale also caps the step
    v, w, t, theta = _graded_angle_rule(lam, r, dim, max_step=angular_scale / 3.0)
    # kernel in log form: (cosh r - sinh r cos theta) = e^{-r} cosh^2 v / (1 + t^2)
    log_base = -r + 2.0 * np.log(np.cosh(v)) - np.log1p(t * t)
    kernel = np.exp(-(1j * lam + rho) * log_base)
    if dim == 2:
        psi = np.arctan2(omega[1], omega[0])
        bp = np.stack([np.cos(psi + theta), np.sin(psi + theta)], axis=1)
        bm = np.stack([np.cos(psi - theta), np.sin(psi - theta)], axis=1)
        dtheta = 2.0 * np.exp(-r) * np.cosh(v) / (1.0 + t * t)
        Fp = np.asarray(F_eval(bp))
        Fm = np.asarray(F_eval(bm))
        return np.sum(w * kernel * dtheta * (Fp + Fm)) / (2.0 * np.pi)
    p, q = _orthonormal_frame(omega)
    phi = 2.0 * np.pi * np.arange(n_phi) / n_phi
    sin_t = 2.0 * t / (1.0 + t * t)
    cos_t = (1.0 - t * t) / (1.0 + t * t)
    # sin(theta) dtheta/dv
    dens = 4.0 * t * np.exp(-r) * np.cosh(v) / (1.0 + t * t) ** 2
    ring = np.cos(phi)[:, None] * p[None, :] + np.sin(phi)[:, None] * q[None, :]
    total = 0.0 + 0.0j
    block = max(1, _CHUNK // (n_phi * 8))
    for i in range(0, len(v), block):
        sl = slice(i, i + block)
        bs = cos_t[sl, None, None] * omega[None, None, :] + sin_t[sl, None, None] * ring[None, :, :]
        Fv = np.asarray(F_eval(bs.reshape(-1, 3))).reshape(-1, n_phi)
        total += np.sum((w[sl] * kernel[sl] * dens[sl]) * Fv.mean(axis=1))
    return total / 2.0


def spherical_transform(f: SampledFunction, lam):
    """Spherical transform of a K-invariant function: integral of f phi_(-lam) dmu."""
    if not f.is_radial():
        raise TransformUsageError("spherical_transform requires a K-invariant (radial) input")
    lams = np.atleast_1d(np.asarray(lam, dtype=complex))
    prof = f.radial_profile()
    w = f.node_weights().sum(axis=1)  # S_{d-1} w_i sinh^{d-1}(r_i)
    mask = f.support_mask
    out = np.array(
        [np.sum(w[mask] * prof[mask] * spherical_phi(f.dim, l, f.radial.nodes[mask])) for l in lams]
    )
    return out[0] if np.ndim(lam) == 0 else out


def jeft(f: SampledFunction, lam: complex, x):
    """Joint-eigenspace transform by factorization: Poisson of the boundary slice.

    Near the origin this is the product-grid composition; beyond FAR_RADIUS
    the graded angular rule is used (with the exact spherical-transform
    shortcut for K-invariant inputs, for which the boundary slice is flat).
    """
    coords = _as_coords(x, f.dim)
    r_x = dist(np.zeros(f.dim), coords)
    if r_x <= FAR_RADIUS[f.dim]:
        return complex(poisson(boundary_slices(f, [lam])[0], f.boundary, lam, coords))
    if f.is_radial():
        return complex(spherical_transform(f, lam) * spherical_phi(f.dim, lam, r_x))
    scale = 2.0 * np.exp(-f.support_radius)
    return complex(
        _poisson_far(lambda bs: helgason_forward(f, lam, bs), f.dim, lam, coords, scale)
    )


def jeft_many(f: SampledFunction, lam: complex, xs) -> np.ndarray:
    """jeft at several points sharing one boundary slice."""
    xs = np.atleast_2d(np.asarray(xs, dtype=float))
    radii = np.array([dist(np.zeros(f.dim), p) for p in xs])
    out = np.empty(len(xs), dtype=complex)
    near = radii <= FAR_RADIUS[f.dim]
    if np.any(near):
        out[near] = poisson(boundary_slices(f, [lam])[0], f.boundary, lam, xs[near])
    for i in np.nonzero(~near)[0]:
        out[i] = jeft(f, lam, xs[i])
    return out


def jeft_direct(f: SampledFunction, lam: complex, x):
    """Convolution oracle: quadrature of f(y) phi_lam(dist(x, y)) over dmu(y).

    The group convolution with the spherical function descends to this
    point-pair kernel because phi_lam is K-bi-invariant.
    """
    coords = np.atleast_2d(_as_coords(x, f.dim))
    pts, wv = _support_data(f)
    D = pairwise_dist(coords, pts)
    vals = np.array(
        [np.sum(wv * spherical_phi(f.dim, lam, D[i])) for i in range(len(coords))]
    )
    return vals[0] if np.ndim(_as_coords(x, f.dim)) == 1 else vals


def jeft_spectrum_many(f: SampledFunction, sgrid: SpectralGrid, xs) -> np.ndarray:
    """jeft(f, lam_k, x_j) over the spectral grid, shape (n_lam, n_x).

    The boundary slices are computed once and shared across evaluation
    points; radial inputs use the exact spherical-transform shortcut.
    """
    xs = np.atleast_2d(np.asarray(xs, dtype=float))
    radii = np.array([dist(np.zeros(f.dim), p) for p in xs])
    if f.is_radial():
        ft = spherical_transform(f, sgrid.nodes)
        phis = np.array([spherical_phi(f.dim, lam, radii) for lam in sgrid.nodes])
        return ft[:, None] * phis
    out = np.empty((len(sgrid), len(xs)), dtype=complex)
    near = radii <= FAR_RADIUS[f.dim]
    if np.any(near):
        slices = boundary_slices(f, sgrid.nodes)
        rho = half_root_sum(f.dim)
        B = busemann_field(xs[near], f.boundary.directions)
        for k, lam in enumerate(sgrid.nodes):
            out[k, near] = np.exp((1j * lam + rho) * B) @ (f.boundary.weights * slices[k])
    for j in np.nonzero(~near)[0]:
        out[:, j] = [jeft(f, lam, xs[j]) for lam in sgrid.nodes]
    return out


def jeft_spectrum(f: SampledFunction, sgrid: SpectralGrid, x) -> np.ndarray:
    """jeft(f, lam_k, x) over the spectral grid; radial inputs use the exact shortcut."""
    return jeft_spectrum_many(f, sgrid, np.atleast_2d(_as_coords(x, f.dim)))[:, 0]


@dataclass(frozen=True)
class InversionResult:
    value: complex
    tail_fraction: float
    truncated: bool
    kappa: float


_KAPPA_CACHE = {3: KAPPA_D3}


def calibrate_kappa(dim: int, **density_kwargs) -> float:
    """Normalization constant of the inversion formula.

    d = 3 is analytic (KAPPA_D3).  d = 2 is calibrated by requiring exact
    inversion of a reference bump at the origin, on dedicated dense grids.
    """
    if dim == 3:
        return KAPPA_D3
    if 2 in _KAPPA_CACHE:
        return _KAPPA_CACHE[2]
    from .grids import BumpSpec, RadialGrid, sample_bump

    radial = RadialGrid.gauss_legendre(256, 7.0)
    boundary = BoundaryGrid.disk(8)  # radial reference bump: boundary size irrelevant
    sgrid = SpectralGrid.gauss_legendre(300, 30.0)
    ref = sample_bump(BumpSpec(dim=2, radius=2.5), radial, boundary)
    ft = spherical_transform(ref, sgrid.nodes)
    phis0 = np.ones(len(sgrid))  # phi_lam(0) = 1
    dens = plancherel_density_table(2, sgrid.nodes, **density_kwargs)
    raw = integrate_spectrum(ft * phis0 * dens, sgrid).real
    kappa = float(np.exp(-1.0) / raw)
    _KAPPA_CACHE[2] = kappa
    return kappa


def invert_many(f: SampledFunction, xs, sgrid: SpectralGrid, kappa: float = None) -> list:
    """Pointwise inversion at several points sharing one spectral sweep."""
    if kappa is None:
        kappa = calibrate_kappa(f.dim)
    vals = jeft_spectrum_many(f, sgrid, xs)  # (n_lam, n_x)
    dens = plancherel_density_table(f.dim, sgrid.nodes)
    integrand = vals * dens[:, None]
    tail_mask = sgrid.nodes >= 0.9 * sgrid.lam_max
    results = []
    for j in range(integrand.shape[1]):
        col = integrand[:, j]
        mass = np.sum(np.abs(col) * sgrid.weights)
        tail = float(np.sum(np.abs(col[tail_mask]) * sgrid.weights[tail_mask]) / mass) if mass > 0 else 0.0
        value = kappa * integrate_spectrum(col, sgrid)
        results.append(InversionResult(complex(value), tail, tail > 5e-3, kappa))
    return results


def invert(f: SampledFunction, x, sgrid: SpectralGrid, kappa: float = None) -> InversionResult:
    """Pointwise inversion: kappa * integral of jeft(f, ., x) against |c|^-2 d lam."""
    return invert_many(f, np.atleast_2d(_as_coords(x, f.dim)), sgrid, kappa)[0]


@dataclass(frozen=True)
class PlancherelReport:
    lhs: float
    rhs: float
    kappa: float
    residual: float
    kappa_implied: float


def plancherel_residual(f: SampledFunction, sgrid: SpectralGrid, kappa: float = None) -> PlancherelReport:
    """|  ||f||^2 - kappa * double integral of |fhat|^2 |c|^-2 | / ||f||^2."""
    if kappa is None:
        kappa = calibrate_kappa(f.dim)
    lhs = float(np.sum(f.node_weights() * np.abs(f.values) ** 2))
    dens = plancherel_density_table(f.dim, sgrid.nodes)
    if f.is_radial():
        ft = spherical_transform(f, sgrid.nodes)
        slice_norms = np.abs(ft) ** 2
    else:
        slices = boundary_slices(f, sgrid.nodes)
        slice_norms = (np.abs(slices) ** 2) @ f.boundary.weights
    rhs = float(np.sum(sgrid.weights * dens * slice_norms))
    if lhs == 0.0:
        return PlancherelReport(0.0, rhs, kappa, abs(rhs), 0.0)
    return PlancherelReport(lhs, rhs, kappa, abs(lhs - kappa * rhs) / lhs, lhs / rhs)


def kaverage_bridge_residual(f: SampledFunction, g: Isometry, sgrid: SpectralGrid) -> float:
    """Max over the spectral grid of | jeft(f, lam, g.0) - sph(K-average of f o g) |.

    The K-average is materialized as a radial sampled function first; the
    residual is normalized by 1 + |jeft|.
    """
    x0 = g.origin_image()
    prof = k_average_profile(f, g)
    lhs = jeft_spectrum(f, sgrid, x0)
    rhs = spherical_transform(prof, sgrid.nodes)
    return float(np.max(np.abs(lhs - rhs) / (1.0 + np.abs(lhs))))


def functional_equation_residual(f: SampledFunction, g: Isometry, x, lam: complex) -> float:
    """Rotation-averaged jeft around g . (k x) against phi_lam(|x|) jeft(f, lam, g.0)."""
    coords = _as_coords(x, f.dim)
    norm = float(np.linalg.norm(coords))
    pts = apply_array(g, norm * f.boundary.directions)
    sl = boundary_slices(f, [lam])[0]
    vals = poisson(sl, f.boundary, lam, pts)
    lhs = np.sum(f.boundary.weights * vals)
    r_x = dist(np.zeros(f.dim), coords)
    rhs = spherical_phi(f.dim, lam, r_x) * poisson(sl, f.boundary, lam, g.origin_image())
    return float(abs(lhs - rhs) / max(abs(rhs), 1e-300))


@dataclass(frozen=True)
class AsymptoticReport:
    ts: tuple
    residuals: np.ndarray
    target_magnitude: float


def asymptotic_limit_residual(f: SampledFunction, lam: complex, b0, t_list) -> AsymptoticReport:
    """Flat-front limit check: e^{(-i lam + rho) t} jeft(f, lam, a_t . o) -> c(lam) fhat(lam, b0).

    Requires Im(lam) < 0; real lam is shifted to lam - 1e-3 i (regularity
    condition of the limit), in which case the convergence rate e^{2 Im(lam) t}
    is correspondingly slow.
    """
    lam = complex(lam)
    if lam.imag == 0.0:
        lam = lam - 1e-3j
    rho = half_root_sum(f.dim)
    ts = tuple(float(t) for t in t_list)
    for t in ts:
        if t > f.radial.r_max:
            raise TransformUsageError(f"t = {t} exceeds the radial quadrature range")
    c = c_function(f.dim, lam).c
    target = c * helgason_forward(f, lam, _as_coords(b0, f.dim))
    res = np.empty(len(ts))
    for i, t in enumerate(ts):
        x_t = polar_to_point(t, _as_coords(b0, f.dim))
        val = np.exp((-1j * lam + rho) * t) * jeft(f, lam, x_t.coords)
        res[i] = abs(val - target)
    return AsymptoticReport(ts, res, float(abs(target)))


@dataclass(frozen=True)
class EigenCheck:
    residual: float
    skipped: bool


def laplace_beltrami_residual(u, dim: int, lam: float, x, h: float = 1e-3) -> EigenCheck:
    """Finite-difference residual |Lap u - (-(lam^2 + rho^2)) u| / |u| at x.

    ``u`` maps an (n, d) coordinate array to complex values.  Central
    differences in geodesic polar coordinates with one Richardson step; for
    d = 3 the stencil is built in a frame with x on the equator, away from
    coordinate poles.  x must satisfy dist(0, x) >= 0.1.
    """
    coords = _as_coords(x, dim)
    r, omega = point_to_polar(coords)
    if r < 0.1:
        raise TransformUsageError("stencil point must satisfy dist(0, x) >= 0.1")

    if dim == 2:
        psi = np.arctan2(omega[1], omega[0])

        def place(rr, dth):
            a = psi + dth
            return np.tanh(0.5 * rr) * np.array([np.cos(a), np.sin(a)])

        def lap(step):
            pts = np.array(
                [
                    place(r, 0.0),
                    place(r + step, 0.0),
                    place(r - step, 0.0),
                    place(r, step),
                    place(r, -step),
                ]
            )
            u0, urp, urm, utp, utm = u(pts)
            u_rr = (urp - 2.0 * u0 + urm) / step**2
            u_r = (urp - urm) / (2.0 * step)
            u_tt = (utp - 2.0 * u0 + utm) / step**2
            return u_rr + u_r / np.tanh(r) + u_tt / np.sinh(r) ** 2, u0

    else:
        p, q = _orthonormal_frame(omega)

        def direction(th, ph):
            return (
                np.sin(th) * np.cos(ph) * omega
                + np.sin(th) * np.sin(ph) * p
                + np.cos(th) * q
            )

        th0 = 0.5 * np.pi

        def place(rr, th, ph):
            return np.tanh(0.5 * rr) * direction(th, ph)

        def lap(step):
            pts = np.array(
                [
                    place(r, th0, 0.0),
                    place(r + step, th0, 0.0),
                    place(r - step, th0, 0.0),
                    place(r, th0 + step, 0.0),
                    place(r, th0 - step, 0.0),
                    place(r, th0, step),
                    place(r, th0, -step),
                ]
            )
            u0, urp, urm, utp, utm, upp, upm = u(pts)
            u_rr = (urp - 2.0 * u0 + urm) / step**2
            u_r = (urp - urm) / (2.0 * step)
            u_tt = (utp - 2.0 * u0 + utm) / step**2
            u_t = (utp - utm) / (2.0 * step)
            u_pp = (upp - 2.0 * u0 + upm) / step**2
            sph = u_tt + u_t / np.tan(th0) + u_pp / np.sin(th0) ** 2
            return u_rr + 2.0 * u_r / np.tanh(r) + sph / np.sinh(r) ** 2, u0

    l1, u0 = lap(h)
    l2, _ = lap(0.5 * h)
    richardson = (4.0 * l2 - l1) / 3.0
    if abs(u0) < 1e-12:
        return EigenCheck(float("nan"), True)
    res = abs(richardson - eigenvalue_of(dim, lam) * u0) / abs(u0)
    return EigenCheck(float(res), False)


def eigen_equation_residual(f: SampledFunction, lam: float, x, h: float = 1e-3) -> EigenCheck:
    """Eigen-equation residual of the transform output u(y) = jeft(f, lam, y)."""
    sl = boundary_slices(f, [lam])[0]

    def u(pts):
        return poisson(sl, f.boundary, lam, pts)

    return laplace_beltrami_residual(u, f.dim, lam, x, h=h)


def helgason_e_mismatch(f: SampledFunction, lam: complex, b) -> float:
    """|jeft(f, lam, origin) - forward transform at b|: zero only in special cases."""
    origin = np.zeros(f.dim)
    return float(abs(jeft(f, lam, origin) - helgason_forward(f, lam, _as_coords(b, f.dim))))


@dataclass(frozen=True)
class TransformField:
    """Forward-transform values on a spectral x boundary grid."""

    dim: int
    sgrid: SpectralGrid
    boundary: BoundaryGrid
    values: np.ndarray  # (n_lam, m)
    provenance: str = ""


@dataclass(frozen=True)
class JeftField:
    """Joint-eigenspace transform values on a spectral grid x point set."""

    dim: int
    sgrid: SpectralGrid
    points: np.ndarray  # (n_x, d)
    values: np.ndarray  # (n_lam, n_x)
    provenance: str = ""


def transform_field(f: SampledFunction, sgrid: SpectralGrid, provenance: str = "") -> TransformField:
    return TransformField(f.dim, sgrid, f.boundary, boundary_slices(f, sgrid.nodes), provenance)


def jeft_field(f: SampledFunction, sgrid: SpectralGrid, xs, provenance: str = "") -> JeftField:
    xs = np.atleast_2d(np.asarray(xs, dtype=float))
    values = np.stack([jeft_spectrum(f, sgrid, x) for x in xs], axis=1)
    return JeftField(f.dim, sgrid, xs, values, provenance)
