"""Empirical Paley-Wiener verification.

Holomorphic extension of the forward transform in the spectral parameter,
exponential-type estimation along the imaginary axis (slope -> circumscribed
support radius), polynomial decay on the real axis, and the combined
joint-eigenspace membership report.

The type estimate probes lam = i sigma because the supremum of the Busemann
bracket over the support governs the growth exactly there.  The log-magnitude
is not asymptotically linear at reachable sigma: the mollifier's edge
contributes a -sqrt(2 R sigma) term, so the fit uses the enriched basis
{sigma~, sqrt(sigma~), log(sigma~), 1, 1/sqrt(sigma~)} and reports the linear
coefficient; a plain two-parameter slope carries an O(1/sqrt(sigma)) bias of
15-25% and cannot recover support radii to the 5% target.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .geometry import busemann_field, half_root_sum, sphere_area, _as_coords
from .grids import BoundaryGrid, RadialGrid, SampledFunction, SpectralGrid, integrate_B
from .spectral import spherical_phi
from .transforms import boundary_slices, eigen_equation_residual, helgason_forward

# Largest allowed |Im lam| * support_radius: keeps the kernel below ~e^40.
OVERFLOW_EXPONENT = 40.0


class TransformRangeError(ValueError):
    """Requested spectral parameter violates the overflow guard."""


class TypeFitError(RuntimeError):
    """Exponential-type fit failed (underflow or no admissible window)."""


def complex_transform(f: SampledFunction, lam: complex, b):
    """Forward transform at complex lam (entire in lam by compact support)."""
    lam = complex(lam)
    if abs(lam.imag) * max(f.support_radius, 1e-9) > OVERFLOW_EXPONENT:
        raise TransformRangeError(
            f"|Im lam| * support = {abs(lam.imag) * f.support_radius:.1f} exceeds "
            f"the overflow guard {OVERFLOW_EXPONENT}"
        )
    return helgason_forward(f, lam, b)


def holomorphy_circle_residual(
    f: SampledFunction, center: complex, b, radius: float = 0.1, n_nodes: int = 32
) -> float:
    """Mean-value test: the circle average of the transform minus its center value."""
    angles = 2.0 * np.pi * np.arange(n_nodes) / n_nodes
    ring = center + radius * np.exp(1j * angles)
    vals = np.array([complex_transform(f, z, b) for z in ring])
    return float(abs(vals.mean() - complex_transform(f, center, b)))


@dataclass(frozen=True)
class TypeEstimate:
    boundary_points: np.ndarray  # (n_b, d)
    sigma_grid: np.ndarray
    log_magnitudes: np.ndarray  # (n_b, n_sigma)
    slopes: np.ndarray  # fitted R-hat per boundary point, >= 0
    fit_residuals: np.ndarray  # RMS residual of the accepted window per point
    window_starts: np.ndarray  # first sigma index of the accepted window
    radius_estimate: float  # global R-hat = max over sampled b

    def as_dict(self) -> dict:
        return {
            "boundary_points": self.boundary_points.tolist(),
            "sigma_grid": self.sigma_grid.tolist(),
            "log_magnitudes": self.log_magnitudes.tolist(),
            "slopes": self.slopes.tolist(),
            "fit_residuals": self.fit_residuals.tolist(),
            "window_starts": self.window_starts.tolist(),
            "radius_estimate": self.radius_estimate,
        }


_FIT_RESIDUAL_BOUND = 1e-2
_MIN_WINDOW = 7


def _fit_growth_rate(sigma: np.ndarray, logmag: np.ndarray, rho: float):
    """Linear coefficient of sigma~ over the largest trailing admissible window."""
    st = sigma + rho
    basis = np.vstack(
        [st, np.sqrt(st), np.log(st), np.ones_like(st), 1.0 / np.sqrt(st)]
    ).T
    for start in range(0, len(sigma) - _MIN_WINDOW + 1):
        A = basis[start:]
        y = logmag[start:]
        coef, *_ = np.linalg.lstsq(A, y, rcond=None)
        rms = float(np.sqrt(np.mean((A @ coef - y) ** 2)))
        if rms <= _FIT_RESIDUAL_BOUND:
            return max(float(coef[0]), 0.0), rms, start
    raise TypeFitError("no trailing sigma-window met the fit residual bound")


def _imaginary_axis_log_magnitudes(f: SampledFunction, sigmas: np.ndarray, bs: np.ndarray) -> np.ndarray:
    """log |fhat(i sigma, b)| as an (n_b, n_sigma) array.

    Along the imaginary axis the kernel concentrates in angular features of
    width ~ e^{-support}/sqrt(sigma), far beyond any fixed product grid.  For
    unmodulated bumps (translates of radial profiles) the transform factors
    exactly through the translation cocycle,

        fhat(i sigma, b) = e^{(sigma + rho) A(c, b)} * (radial transform of
                           the centered profile at i sigma),

    and both factors are evaluated with dense 1-d rules.  Other inputs fall
    back to the product grid, whose angular resolution then caps the usable
    sigma range.
    """
    rho = half_root_sum(f.dim)
    spec = f.bump
    if spec is not None and spec.alpha == 0.0:
        center = spec.center.origin_image()
        bus = busemann_field(center[None, :], bs)[0]
        prof = RadialGrid.gauss_legendre(512, spec.radius)
        if spec.profile == "smooth":
            beta = np.exp(-1.0 / (1.0 - (prof.nodes / spec.radius) ** 2))
        else:
            beta = np.ones(len(prof))
        beta = beta * abs(spec.amplitude)
        w = sphere_area(f.dim) * prof.weights * np.sinh(prof.nodes) ** (f.dim - 1) * beta
        log_ft = np.empty(len(sigmas))
        for k, sig in enumerate(sigmas):
            ft = np.sum(w * np.real(spherical_phi(f.dim, -1j * sig, prof.nodes)))
            if not np.isfinite(ft) or abs(ft) < 1e-300:
                raise TypeFitError("radial transform under/overflow on the imaginary axis")
            log_ft[k] = np.log(abs(ft))
        return (sigmas[None, :] + rho) * bus[:, None] + log_ft[None, :]
    vals = boundary_slices(f, 1j * sigmas, bs)
    mags = np.abs(vals).T
    if np.any(mags < 1e-300):
        raise TypeFitError("transform underflow along the imaginary axis")
    return np.log(mags)


def _default_probe_points(dim: int) -> np.ndarray:
    if dim == 2:
        return BoundaryGrid.disk(8).directions
    return BoundaryGrid.sphere(3, 4).directions


def estimate_type(
    f: SampledFunction,
    boundary_points=None,
    sigma_max: float = 8.0,
    n_sigma: int = 16,
    adaptive: bool = True,
) -> TypeEstimate:
    """Exponential-type estimate of the transform: growth rate of |fhat(i sigma, b)|.

    The per-point rate estimates sup of the Busemann bracket over the support;
    the global maximum estimates the circumscribed support radius about the
    origin.  When ``adaptive`` is set a second pass rescales sigma_max to
    ~36 / R-hat (under the overflow guard), which the small default sigma_max
    needs for small supports.
    """
    bs = _default_probe_points(f.dim) if boundary_points is None else np.atleast_2d(
        np.asarray(boundary_points, dtype=float)
    )
    rho = half_root_sum(f.dim)

    def one_pass(smax: float):
        sig = np.linspace(max(0.5, smax / 2.0), smax, n_sigma)
        logmag = _imaginary_axis_log_magnitudes(f, sig, bs)
        slopes = np.empty(len(bs))
        resids = np.empty(len(bs))
        starts = np.empty(len(bs), dtype=int)
        for i in range(len(bs)):
            slopes[i], resids[i], starts[i] = _fit_growth_rate(sig, logmag[i], rho)
        return sig, logmag, slopes, resids, starts

    guard = OVERFLOW_EXPONENT / max(f.support_radius, 0.2) - 1.0
    smax = min(sigma_max, guard)
    try:
        sig, logmag, slopes, resids, starts = one_pass(smax)
    except TypeFitError:
        smax *= 0.5
        sig, logmag, slopes, resids, starts = one_pass(smax)
    if adaptive:
        r_rough = max(float(np.max(slopes)), 0.5)
        better = min(30.0, 36.0 / r_rough, guard)
        if abs(better - smax) > 0.5:
            sig, logmag, slopes, resids, starts = one_pass(better)
    return TypeEstimate(bs, sig, logmag, slopes, resids, starts, float(np.max(slopes)))


@dataclass(frozen=True)
class DecayReport:
    orders: tuple  # polynomial orders N
    window_sups: dict  # N -> (sup on [L/4, L/2), sup on [L/2, L])
    verdicts: dict  # N -> bool, windowed sup non-increasing
    passed: bool
    vacuous: bool = False

    def as_dict(self) -> dict:
        return {
            "orders": list(self.orders),
            "window_sups": {str(k): list(v) for k, v in self.window_sups.items()},
            "verdicts": {str(k): bool(v) for k, v in self.verdicts.items()},
            "passed": self.passed,
            "vacuous": self.vacuous,
        }


def decay_report(f: SampledFunction, b, sgrid: SpectralGrid = None, n_max: int = 4) -> DecayReport:
    """Windowed sups of (1 + lam)^N |fhat(lam, b)| over the last two dyadic windows.

    For K-invariant inputs the slice equals the spherical transform and the
    radial path is used: the product grid's angular rule aliases once the
    kernel bandwidth ~ lam * support exceeds its node count, and real-axis
    tails sit far below that noise floor.
    """
    from .transforms import spherical_transform

    if sgrid is None:
        sgrid = SpectralGrid.gauss_legendre(200, 24.0)
    bs = np.atleast_2d(_as_coords(b, f.dim))
    if f.is_radial():
        mags = np.abs(spherical_transform(f, sgrid.nodes))
    else:
        mags = np.abs(boundary_slices(f, sgrid.nodes, bs)[:, 0])
    lam = sgrid.nodes
    lo = (lam >= 0.25 * sgrid.lam_max) & (lam < 0.5 * sgrid.lam_max)
    hi = lam >= 0.5 * sgrid.lam_max
    if not np.any(mags):
        orders = tuple(range(n_max + 1))
        return DecayReport(orders, {n: (0.0, 0.0) for n in orders}, {n: True for n in orders}, True, vacuous=True)
    sups = {}
    verdicts = {}
    for n in range(n_max + 1):
        weighted = (1.0 + lam) ** n * mags
        s_lo = float(np.max(weighted[lo]))
        s_hi = float(np.max(weighted[hi]))
        sups[n] = (s_lo, s_hi)
        verdicts[n] = bool(s_hi <= s_lo * (1.0 + 1e-9))
    return DecayReport(tuple(range(n_max + 1)), sups, verdicts, all(verdicts.values()))


@dataclass(frozen=True)
class PwMembershipReport:
    lam: float
    eigen_residual: float
    eigen_skipped: bool
    eigen_ok: bool
    type_estimate: TypeEstimate = field(repr=False)
    declared_support: float
    support_recovery_error: float
    type_ok: bool
    boundary_norm: float
    norm_ok: bool
    passed: bool
    vacuous: bool = False

    def as_dict(self) -> dict:
        return {
            "lam": self.lam,
            "eigen_residual": self.eigen_residual,
            "eigen_skipped": self.eigen_skipped,
            "eigen_ok": self.eigen_ok,
            "type_estimate": self.type_estimate.as_dict() if self.type_estimate else None,
            "declared_support": self.declared_support,
            "support_recovery_error": self.support_recovery_error,
            "type_ok": self.type_ok,
            "boundary_norm": self.boundary_norm,
            "norm_ok": self.norm_ok,
            "passed": self.passed,
            "vacuous": self.vacuous,
        }


def pw_membership_report(
    f: SampledFunction,
    lam: float,
    eigen_tol: float = 1e-4,
    support_tol: float = 0.05,
) -> PwMembershipReport:
    """Three-part joint-eigenspace membership check at real lam != 0.

    (a) the transform output is a Laplace-Beltrami eigenfunction,
    (b) the boundary density has exponential type ~ the declared support,
    (c) the boundary slice is square integrable.
    """
    lam = float(lam)
    if lam == 0.0:
        raise ValueError("membership checks avoid lam = 0 (c-function pole)")
    sl = boundary_slices(f, [lam])[0]
    norm = float(abs(integrate_B(np.abs(sl) ** 2, f.boundary)))
    if not np.any(np.abs(f.values) > 0):
        return PwMembershipReport(
            lam, 0.0, True, True, None, 0.0, 0.0, True, 0.0, True, True, vacuous=True
        )
    probe_dir = np.zeros(f.dim)
    probe_dir[0] = 1.0
    x = np.tanh(0.5) * probe_dir  # radius 1 probe point
    chk = eigen_equation_residual(f, lam, x)
    eigen_ok = chk.skipped or chk.residual <= eigen_tol
    est = estimate_type(f)
    declared = float(f.support_radius)
    rec_err = abs(est.radius_estimate - declared) / declared if declared > 0 else np.inf
    type_ok = bool(rec_err <= support_tol and np.all(est.fit_residuals <= _FIT_RESIDUAL_BOUND))
    norm_ok = bool(np.isfinite(norm))
    return PwMembershipReport(
        lam,
        float("nan") if chk.skipped else chk.residual,
        chk.skipped,
        eigen_ok,
        est,
        declared,
        float(rec_err),
        type_ok,
        norm,
        norm_ok,
        bool(eigen_ok and type_ok and norm_ok),
    )
