"""Spherical functions, the c-function, and the Plancherel density for H^2 and H^3.

The spectral parameter lam is a complex scalar (rank one).  For H^3 the
spherical function has the closed form sin(lam r) / (lam sinh r); for H^2 it
is the conical Legendre function P_{-1/2 + i lam}(cosh r), evaluated as the
boundary integral of the horocycle kernel.

Two exact realizations of that integral are used: the plain trapezoid rule
in the boundary angle (accurate while the kernel peak, of width ~e^-r, is
resolved by the node spacing) and an exponentially graded substitution
tan(theta/2) = e^-r sinh(v) that keeps the integrand analytic in a uniform
strip, accurate for every radius.  Both are tested against each other and
against an external conical-function oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import GeometryError, half_root_sum


class CFunctionPoleError(ValueError):
    """c(lam) requested at its pole lam = 0."""


class FitConditioningError(RuntimeError):
    """The asymptotic-fit linear system was too ill-conditioned; retry with shifted radii."""


# Series fallbacks near removable singularities.
_SMALL_PRODUCT = 1e-4
_SMALL_RADIUS = 1e-6


def _phi3(lam: complex, r: np.ndarray) -> np.ndarray:
    """Closed form sin(lam r)/(lam sinh r) with removable singularities handled."""
    out = np.empty(r.shape, dtype=complex)
    tiny_r = r < _SMALL_RADIUS
    out[tiny_r] = 1.0 - (lam * lam + 1.0) * r[tiny_r] ** 2 / 6.0
    rr = r[~tiny_r]
    w = lam * rr
    small = np.abs(w) < _SMALL_PRODUCT
    sinc = np.empty(rr.shape, dtype=complex)
    sinc[small] = 1.0 - w[small] ** 2 / 6.0 + w[small] ** 4 / 120.0
    sinc[~small] = np.sin(w[~small]) / w[~small]
    out[~tiny_r] = sinc * rr / np.sinh(rr)
    return out


def _phi2_theta(lam: complex, r: np.ndarray, n_theta: int) -> np.ndarray:
    """Trapezoid rule in the boundary angle; valid while n_theta resolves the kernel peak."""
    theta = 2.0 * np.pi * np.arange(n_theta) / n_theta
    s = 1j * lam + 0.5
    base = np.cosh(r)[:, None] - np.sinh(r)[:, None] * np.cos(theta)[None, :]
    return np.exp(-s * np.log(base)).mean(axis=1)


def _phi2_graded(lam: complex, r: np.ndarray, refine: float = 1.0) -> np.ndarray:
    """Graded substitution tan(theta/2) = e^-r sinh(v).

    phi_lam(r) = (2/pi) e^{(s-1)r} * Int_0^inf cosh(v)^{1-2s} (1 + e^{-2r} sinh^2 v)^{s-1} dv

    with s = i lam + 1/2.  The integrand is even in v, analytic in the strip
    |Im v| < pi/2 uniformly in r, and decays like e^{-(v - r)}; the trapezoid
    step is set from the oscillation rate 2|Re lam|.
    """
    s = 1j * lam + 0.5
    h = 2.0 * np.pi / (2.0 * abs(complex(lam).real) + 30.0) / refine
    v_max = float(np.max(r, initial=0.0)) + 38.0
    n = int(np.ceil(v_max / h)) + 1
    v = np.linspace(0.0, v_max, n)
    w = np.full(n, v[1] - v[0])
    w[0] *= 0.5
    w[-1] *= 0.5
    log_cosh = np.log(np.cosh(v))
    sinh_sq = np.sinh(v) ** 2
    out = np.empty(len(r), dtype=complex)
    block = max(1, int(4e6 / n))
    for i in range(0, len(r), block):
        q = np.log1p(np.exp(-2.0 * r[i : i + block, None]) * sinh_sq[None, :])
        # single exp keeps intermediate magnitudes bounded for Re(s) far from 1/2
        integ = np.exp((1.0 - 2.0 * s) * log_cosh[None, :] + (s - 1.0) * q)
        out[i : i + block] = integ @ w
    return (2.0 / np.pi) * np.exp((s - 1.0) * r) * out


def _theta_rule_radius(lam: complex, n_theta: int) -> float:
    """Largest radius at which the plain theta rule is trusted for this node count."""
    guard = 60.0 + 10.0 * abs(complex(lam).real)
    return max(0.0, np.log(2.0 * n_theta / guard))


def spherical_phi(dim: int, lam: complex, r, n_theta: int = 256):
    """Spherical function phi_lam at geodesic radius r (scalar or array).

    phi_lam(0) = 1 for every lam; phi_lam = phi_(-lam).  For dim == 2 the
    value equals the conical function P_{-1/2 + i lam}(cosh r).
    """
    lam = complex(lam)
    r_arr = np.atleast_1d(np.asarray(r, dtype=float))
    if np.any(r_arr < 0):
        raise GeometryError("radius must be nonnegative")
    if dim == 3:
        out = _phi3(lam, r_arr)
    elif dim == 2:
        out = np.empty(r_arr.shape, dtype=complex)
        r_switch = _theta_rule_radius(lam, n_theta) if abs(lam.imag) < 0.05 else 0.0
        near = r_arr <= r_switch
        if np.any(near):
            out[near] = _phi2_theta(lam, r_arr[near], n_theta)
        if np.any(~near):
            out[~near] = _phi2_graded(lam, r_arr[~near], refine=max(1.0, n_theta / 256.0))
    else:
        raise GeometryError(f"dimension must be 2 or 3, got {dim}")
    return out[0] if np.isscalar(r) or np.ndim(r) == 0 else out


@dataclass(frozen=True)
class CFunctionValue:
    lam: complex
    c: complex
    method: str


def _fit_leading_coefficient(dim: int, lam: complex, fit_radii, n_theta: int) -> complex:
    """Solve u(r_k) = c+ e^{i lam r_k} + c- e^{-i lam r_k} for u = phi * e^{rho r}."""
    rho = half_root_sum(dim)
    r1, r2 = fit_radii
    rs = np.array([r1, r2], dtype=float)
    u = spherical_phi(dim, lam, rs, n_theta=n_theta) * np.exp(rho * rs)
    system = np.array(
        [
            [np.exp(1j * lam * r1), np.exp(-1j * lam * r1)],
            [np.exp(1j * lam * r2), np.exp(-1j * lam * r2)],
        ]
    )
    if abs(np.linalg.det(system)) < 1e-8:
        raise FitConditioningError(
            f"fit system nearly singular at lam = {lam} for radii {fit_radii}; "
            "retry with shifted radii"
        )
    c_plus, _ = np.linalg.solve(system, u)
    return complex(c_plus)


def c_function(
    dim: int,
    lam: complex,
    method: str = "auto",
    fit_radii=(12.0, 14.0),
    n_theta: int = 256,
) -> CFunctionValue:
    """Harish-Chandra c-function, normalized so phi_lam ~ c(lam) e^{(i lam - rho) r}.

    dim == 3 has the closed form 1/(i lam), read off the large-r expansion of
    sin(lam r)/(lam sinh r).  dim == 2 (or method="asymptotic_fit") extracts
    the leading coefficient from phi at two large radii.
    """
    lam = complex(lam)
    if abs(lam) < 1e-12:
        raise CFunctionPoleError("c(lam) has a pole at lam = 0")
    if method == "auto":
        method = "closed_form_d3" if dim == 3 else "asymptotic_fit"
    if method == "closed_form_d3":
        if dim != 3:
            raise ValueError("closed_form_d3 is only available for dim == 3")
        return CFunctionValue(lam, 1.0 / (1j * lam), "closed_form_d3")
    if method == "asymptotic_fit":
        c = _fit_leading_coefficient(dim, lam, fit_radii, n_theta)
        return CFunctionValue(lam, c, "asymptotic_fit")
    raise ValueError(f"unknown c-function method {method!r}")


def plancherel_density(dim: int, lam: float, **kwargs) -> float:
    """|c(lam)|^{-2} for real lam > 0: the spectral measure of the inversion formula."""
    lam = float(lam)
    if lam <= 0:
        raise ValueError("plancherel_density requires real lam > 0")
    c = c_function(dim, lam, **kwargs).c
    return 1.0 / abs(c) ** 2


_DENSITY_CACHE: dict = {}


def plancherel_density_table(dim: int, lams: np.ndarray, **kwargs) -> np.ndarray:
    """Vector of |c(lam)|^{-2} over a grid of positive reals (fit results cached)."""
    lams = np.asarray(lams, dtype=float)
    if dim == 3:
        return lams**2
    key = (dim, lams.tobytes(), tuple(sorted(kwargs.items())))
    if key not in _DENSITY_CACHE:
        _DENSITY_CACHE[key] = np.array(
            [plancherel_density(dim, lam, **kwargs) for lam in lams]
        )
    return _DENSITY_CACHE[key]


def eigenvalue_of(dim: int, lam: complex) -> complex:
    """Laplace-Beltrami eigenvalue -(lam^2 + rho^2) of phi_lam and of the horocycle waves."""
    rho = half_root_sum(dim)
    return -(complex(lam) ** 2 + rho * rho)
