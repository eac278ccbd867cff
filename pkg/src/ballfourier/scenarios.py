"""Batch theorem-verification scenarios for the CLI harness.

Each scenario builds its grids from a ScenarioConfig, runs a suite of
checks, and returns per-check results plus plot-ready CSV artifacts.
Numeric failures are recorded as failed checks, never raised.  Every
scenario carries its own default grid profile (echoed in results.json);
user config files and flags override it.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, replace

import numpy as np

from .config import ConfigError, ScenarioConfig, config_echo
from .geometry import Isometry, apply_array, busemann_field, polar_to_point, random_isometry
from .grids import (
    BoundaryGrid,
    BumpSpec,
    RadialGrid,
    SpectralGrid,
    sample_bump,
)
from .paley_wiener import decay_report, estimate_type, holomorphy_circle_residual
from .spectral import FitConditioningError, c_function, plancherel_density_table
from .transforms import (
    KAPPA_D3,
    asymptotic_limit_residual,
    boundary_slices,
    calibrate_kappa,
    eigen_equation_residual,
    functional_equation_residual,
    invert_many,
    jeft_direct,
    jeft_many,
    kaverage_bridge_residual,
    laplace_beltrami_residual,
    plancherel_residual,
    spherical_transform,
)
from . import serialize


@dataclass
class CheckResult:
    name: str
    value: float
    tol: float
    passed: bool
    seconds: float = 0.0
    note: str = ""

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "value": float(self.value),
            "tol": float(self.tol),
            "pass": bool(self.passed),
            "seconds": float(self.seconds),
            "note": str(self.note),
        }


def _boundary(cfg: ScenarioConfig) -> BoundaryGrid:
    if cfg.dim == 2:
        return BoundaryGrid.disk(cfg.boundary_nodes)
    return BoundaryGrid.sphere(cfg.boundary_theta, cfg.boundary_phi)


def _grids(cfg: ScenarioConfig):
    radial = RadialGrid.gauss_legendre(cfg.radial_nodes, cfg.r_max)
    sgrid = SpectralGrid.gauss_legendre(cfg.spectral_nodes, cfg.lambda_max)
    return radial, _boundary(cfg), sgrid


def _bump_spec(cfg: ScenarioConfig, alpha=None, shift=None, radius=None) -> BumpSpec:
    shift = cfg.bump_shift if shift is None else shift
    alpha = cfg.bump_alpha if alpha is None else alpha
    radius = cfg.bump_radius if radius is None else radius
    center = None
    if shift > 0:
        target = np.zeros(cfg.dim)
        target[0] = np.tanh(0.5 * shift)
        center = Isometry.translation(target)
    return BumpSpec(dim=cfg.dim, radius=radius, center=center, alpha=alpha)


def _random_interior_points(rng, dim, n, r_lo, r_hi):
    pts = np.empty((n, dim))
    for i in range(n):
        w = rng.standard_normal(dim)
        w /= np.linalg.norm(w)
        pts[i] = polar_to_point(rng.uniform(r_lo, r_hi), w).coords
    return pts


def _rel(a, b):
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


# ---------------------------------------------------------------------------
# scenarios


def scenario_jeft_equivalence(cfg: ScenarioConfig, rng):
    radial, boundary, _ = _grids(cfg)
    f = sample_bump(_bump_spec(cfg), radial, boundary)
    lams = rng.uniform(0.4, 3.2, 4)
    xs = _random_interior_points(rng, cfg.dim, 5, 0.1, 1.5)
    rows = []
    worst = 0.0
    for lam in lams:
        direct = jeft_direct(f, lam, xs)
        composed = jeft_many(f, lam, xs)
        for j in range(len(xs)):
            rel = _rel(composed[j], direct[j])
            worst = max(worst, rel)
            rows.append(
                (float(lam), j, composed[j].real, composed[j].imag,
                 direct[j].real, direct[j].imag, rel)
            )
    checks = [CheckResult("factorization_max_rel_error", worst, 1e-6, worst <= 1e-6)]
    csv = serialize._csv(rows, ["lambda", "x_index", "jeft_re", "jeft_im", "direct_re", "direct_im", "rel_error"])
    return checks, {"factorization_pairs.csv": csv}


def scenario_inversion(cfg: ScenarioConfig, rng):
    spec = _bump_spec(cfg)
    if cfg.dim == 3:
        sample_rel = (0.0, 0.2, 0.35, 0.5, 0.65)
        tol = 1e-3
    else:
        sample_rel = (0.1, 0.25, 0.4, 0.5, 0.6)
        tol = 1e-2
    pts = []
    for s in sample_rel:
        w = rng.standard_normal(cfg.dim)
        w /= np.linalg.norm(w)
        pts.append(apply_array(spec.center, polar_to_point(s * spec.radius, w).coords))
    pts = np.array(pts)
    truths = spec(pts)

    levels = []
    for frac in (0.5, 0.75, 1.0):
        levels.append(
            (
                max(16, int(round(cfg.radial_nodes * frac))),
                max(16, int(round(cfg.boundary_nodes * (0.5 + 0.5 * frac)))),
                max(4, int(round(cfg.boundary_theta * (0.5 + 0.5 * frac)))),
                max(8, int(round(cfg.boundary_phi * (0.5 + 0.5 * frac)))),
                max(16, int(round(cfg.spectral_nodes * frac))),
                cfg.lambda_max * frac,
            )
        )
    rows = []
    level_errs = []
    tail = 0.0
    for li, (nr, nb, nt, nph, ns, lmax) in enumerate(levels):
        radial = RadialGrid.gauss_legendre(nr, cfg.r_max)
        boundary = BoundaryGrid.disk(nb) if cfg.dim == 2 else BoundaryGrid.sphere(nt, nph)
        f = sample_bump(spec, radial, boundary)
        sgrid = SpectralGrid.gauss_legendre(ns, lmax)
        results = invert_many(f, pts, sgrid)
        errs = [_rel(r.value, t) for r, t in zip(results, truths)]
        level_errs.append(max(errs))
        tail = max(r.tail_fraction for r in results)
        for j, (r, t, e) in enumerate(zip(results, truths, errs)):
            rows.append((li, j, float(t), r.value.real, r.value.imag, e))
    monotone = all(level_errs[i + 1] < level_errs[i] for i in range(len(level_errs) - 1))
    checks = [
        CheckResult("reconstruction_max_rel_error", level_errs[-1], tol, level_errs[-1] <= tol),
        CheckResult("refinement_monotone", float(monotone), 1.0, monotone,
                    note=f"levels: {['%.3e' % e for e in level_errs]}"),
        CheckResult("truncation_tail_fraction", tail, 5e-3, tail <= 5e-3,
                    note="tail mass of |integrand| in the last lambda decade"),
    ]
    csv = serialize._csv(rows, ["level", "x_index", "truth", "recon_re", "recon_im", "rel_error"])
    return checks, {"reconstruction.csv": csv}


def scenario_plancherel(cfg: ScenarioConfig, rng):
    radial, boundary, sgrid = _grids(cfg)
    f = sample_bump(_bump_spec(cfg), radial, boundary)
    tol = 1e-3 if cfg.dim == 3 else 1e-2
    rep = plancherel_residual(f, sgrid)
    kappa_dev = abs(rep.kappa_implied - rep.kappa) / rep.kappa
    checks = [
        CheckResult("plancherel_residual", rep.residual, tol, rep.residual <= tol),
        CheckResult("kappa_consistency", kappa_dev, 1e-2, kappa_dev <= 1e-2,
                    note=f"kappa={rep.kappa!r} implied={rep.kappa_implied!r}"),
    ]
    dens = plancherel_density_table(f.dim, sgrid.nodes)
    if f.is_radial():
        norms = np.abs(spherical_transform(f, sgrid.nodes)) ** 2
    else:
        norms = (np.abs(boundary_slices(f, sgrid.nodes)) ** 2) @ f.boundary.weights
    rows = [(float(l), float(d), float(n)) for l, d, n in zip(sgrid.nodes, dens, norms)]
    csv = serialize._csv(rows, ["lambda", "plancherel_density", "slice_norm_sq"])
    return checks, {"plancherel_spectrum.csv": csv}


def scenario_kaverage_bridge(cfg: ScenarioConfig, rng):
    radial, boundary, sgrid = _grids(cfg)
    f = sample_bump(_bump_spec(cfg), radial, boundary)
    checks = []
    rows = []
    for i in range(2):
        g = random_isometry(rng, cfg.dim, max_shift=0.5)
        res = kaverage_bridge_residual(f, g, sgrid)
        checks.append(CheckResult(f"bridge_residual_{i}", res, 1e-5, res <= 1e-5))
        rows.append((i, res))
    csv = serialize._csv(rows, ["isometry_index", "bridge_residual"])
    return checks, {"kaverage_bridge.csv": csv}


def scenario_functional_equation(cfg: ScenarioConfig, rng):
    radial, boundary, _ = _grids(cfg)
    f = sample_bump(_bump_spec(cfg), radial, boundary)
    rows = []
    worst = 0.0
    for i in range(5):
        g = random_isometry(rng, cfg.dim, max_shift=0.4)
        w = rng.standard_normal(cfg.dim)
        w /= np.linalg.norm(w)
        x = polar_to_point(rng.uniform(0.2, 0.9), w)
        lam = rng.uniform(0.5, 2.8)
        res = functional_equation_residual(f, g, x, lam)
        worst = max(worst, res)
        rows.append((i, float(lam), res))
    g0 = random_isometry(rng, cfg.dim, max_shift=0.4)
    trivial = functional_equation_residual(f, g0, np.zeros(cfg.dim), 1.3)
    checks = [
        CheckResult("functional_equation_max_residual", worst, 1e-5, worst <= 1e-5),
        CheckResult("functional_equation_origin_case", trivial, 1e-10, trivial <= 1e-10),
    ]
    csv = serialize._csv(rows, ["case", "lambda", "residual"])
    return checks, {"functional_equation.csv": csv}


def scenario_asymptotic(cfg: ScenarioConfig, rng):
    radial, boundary, _ = _grids(cfg)
    f = sample_bump(_bump_spec(cfg), radial, boundary)
    b0 = np.zeros(cfg.dim)
    b0[0] = 1.0
    lam = 2.0 - 0.35j
    ts = (6.0, 8.0, 10.0)
    rep = asymptotic_limit_residual(f, lam, b0, ts)
    decreasing = bool(np.all(np.diff(rep.residuals) < 0))
    ratio = rep.residuals[-1] / max(rep.target_magnitude, 1e-300)
    checks = [
        CheckResult("asymptotic_strictly_decreasing", float(decreasing), 1.0, decreasing,
                    note=f"residuals: {['%.3e' % r for r in rep.residuals]}"),
        CheckResult("asymptotic_final_ratio", float(ratio), 1e-3, ratio <= 1e-3),
    ]
    rows = [(t, float(r)) for t, r in zip(rep.ts, rep.residuals)]
    # regularity-shift trend for real lam (recorded, not asserted: for real
    # spectral parameters the limit does not converge; see the module notes)
    trend = []
    for eps in (3e-2, 1e-2, 1e-3):
        r_eps = asymptotic_limit_residual(f, 2.0 - 1j * eps, b0, (10.0,))
        trend.append((eps, float(r_eps.residuals[0] / max(r_eps.target_magnitude, 1e-300))))
    csv = serialize._csv(rows, ["t", "residual"])
    csv2 = serialize._csv(trend, ["epsilon", "residual_ratio_at_t10"])
    return checks, {"asymptotic_residuals.csv": csv, "asymptotic_epsilon_trend.csv": csv2}


def scenario_eigen(cfg: ScenarioConfig, rng):
    radial, boundary, _ = _grids(cfg)
    f = sample_bump(_bump_spec(cfg), radial, boundary)
    cases = [(1.0, 1.0)]
    for _ in range(4):
        cases.append((rng.uniform(0.6, 2.6), rng.uniform(0.6, 1.8)))
    rows = []
    worst = 0.0
    skipped = 0
    for lam, r in cases:
        w = rng.standard_normal(cfg.dim)
        w /= np.linalg.norm(w)
        x = polar_to_point(r, w)
        chk = eigen_equation_residual(f, lam, x)
        if chk.skipped:
            skipped += 1
            continue
        worst = max(worst, chk.residual)
        rows.append((float(lam), float(r), chk.residual))
    # exact-kernel control: the horocycle wave with no quadrature error
    rho = 0.5 * (cfg.dim - 1)
    b = np.zeros(cfg.dim)
    b[0] = 1.0

    def wave(pts):
        return np.exp((1j * 1.3 + rho) * busemann_field(np.atleast_2d(pts), b[None, :])[:, 0])

    xk = polar_to_point(0.9, np.ones(cfg.dim) / np.sqrt(cfg.dim))
    control = laplace_beltrami_residual(wave, cfg.dim, 1.3, xk)
    checks = [
        CheckResult("eigen_max_residual", worst, 1e-4, worst <= 1e-4,
                    note=f"{len(rows)} cases, {skipped} skipped"),
        CheckResult("eigen_kernel_control", control.residual, 1e-6, control.residual <= 1e-6),
    ]
    csv = serialize._csv(rows, ["lambda", "radius", "residual"])
    return checks, {"eigen_cases.csv": csv}


def scenario_pw_recovery(cfg: ScenarioConfig, rng):
    checks = []
    artifacts = {}
    worst_rec = 0.0
    for radius in (1.0, 2.0, 3.0):
        for shift in (0.0, 1.0):
            spec = _bump_spec(cfg, alpha=0.0, shift=shift, radius=radius)
            radial = RadialGrid.gauss_legendre(cfg.radial_nodes, spec.support_radius + 4.0)
            f = sample_bump(spec, radial, _boundary(cfg))
            est = estimate_type(f)
            target = spec.support_radius
            rec = abs(est.radius_estimate - target) / target
            worst_rec = max(worst_rec, rec)
            tag = f"R{radius:g}_shift{shift:g}"
            checks.append(
                CheckResult(f"support_recovery_{tag}", rec, 0.05, rec <= 0.05,
                            note=f"estimate {est.radius_estimate:.4f} vs {target:g}")
            )
            artifacts[f"type_estimate_{tag}.csv"] = serialize.type_estimate_to_csv(est)
    # holomorphy of the extension: mean-value circles at random centers
    spec = _bump_spec(cfg, alpha=0.3, shift=0.3, radius=1.0)
    radial = RadialGrid.gauss_legendre(cfg.radial_nodes, spec.support_radius + 4.0)
    f = sample_bump(spec, radial, _boundary(cfg))
    b = np.zeros(cfg.dim)
    b[0] = 1.0
    holo = 0.0
    for _ in range(10):
        center = complex(rng.uniform(0.3, 3.0), rng.uniform(-2.0, 2.0))
        holo = max(holo, holomorphy_circle_residual(f, center, b))
    checks.append(CheckResult("holomorphy_circle_max", holo, 1e-8, holo <= 1e-8))
    # real-axis decay: smooth passes all orders, the rough profile must fail one
    dgrid = SpectralGrid.gauss_legendre(300, 48.0)
    smooth = sample_bump(_bump_spec(cfg, alpha=0.0, shift=0.0, radius=2.0),
                         RadialGrid.gauss_legendre(cfg.radial_nodes, 6.0), _boundary(cfg))
    rough_spec = BumpSpec(dim=cfg.dim, radius=2.0, profile="indicator")
    rough = sample_bump(rough_spec, RadialGrid.gauss_legendre(cfg.radial_nodes, 6.0), _boundary(cfg))
    rep_s = decay_report(smooth, b, sgrid=dgrid)
    rep_r = decay_report(rough, b, sgrid=dgrid)
    checks.append(CheckResult("decay_smooth_passes", float(rep_s.passed), 1.0, rep_s.passed))
    checks.append(CheckResult("decay_rough_fails", float(not rep_r.passed), 1.0, not rep_r.passed,
                              note=f"verdicts {rep_r.verdicts}"))
    artifacts["decay_smooth.json"] = serialize.report_to_json(rep_s)
    artifacts["decay_rough.json"] = serialize.report_to_json(rep_r)
    return checks, artifacts


def scenario_c_table(cfg: ScenarioConfig, rng):
    checks = []
    rows = []
    worst_fit = 0.0
    for lam in (0.5, 1.0, 2.0, 5.0):
        closed = c_function(3, lam).c
        fit = c_function(3, lam, method="asymptotic_fit").c
        rel = abs(fit - closed) / abs(closed)
        worst_fit = max(worst_fit, rel)
        rows.append((3, float(lam), fit.real, fit.imag, "asymptotic_fit", float(lam**2)))
    checks.append(CheckResult("d3_fit_vs_closed_max_rel", worst_fit, 1e-6, worst_fit <= 1e-6))
    worst_conj = 0.0
    for lam in (0.5, 1.0, 3.0, 8.0):
        cp = c_function(2, lam).c
        cm = c_function(2, -lam).c
        worst_conj = max(worst_conj, abs(np.conj(cp) - cm) / abs(cp))
        rows.append((2, float(lam), cp.real, cp.imag, "asymptotic_fit", float(1.0 / abs(cp) ** 2)))
    checks.append(CheckResult("d2_conjugation_max_rel", worst_conj, 1e-8, worst_conj <= 1e-8))
    # ill-conditioned fit radii recover after the documented shift
    lam_bad = np.pi / 2.0
    retried = False
    try:
        c_function(2, lam_bad, fit_radii=(12.0, 14.0))
    except FitConditioningError:
        c_function(2, lam_bad, fit_radii=(12.6, 14.2))
        retried = True
    checks.append(CheckResult("fit_retry_on_singular_radii", float(retried), 1.0, retried))
    csv = serialize._csv(rows, ["dim", "lambda", "c_re", "c_im", "method", "plancherel_density"])
    return checks, {"c_table.csv": csv}


def scenario_calibrate(cfg: ScenarioConfig, rng):
    kappa2 = calibrate_kappa(2)
    rows = [(2, kappa2), (3, KAPPA_D3)]
    dev_analytic = abs(kappa2 - KAPPA_D3) / KAPPA_D3
    # held-out spread: kappa implied by inversion of an independent bump at
    # independent points must match the calibrated value
    spec = BumpSpec(dim=2, radius=2.0, center=Isometry.translation([np.tanh(0.25), 0.0]))
    radial = RadialGrid.gauss_legendre(128, 6.5)
    f = sample_bump(spec, radial, BoundaryGrid.disk(128))
    sgrid = SpectralGrid.gauss_legendre(200, 24.0)
    pts = np.array(
        [apply_array(spec.center, polar_to_point(s, np.eye(2)[0]).coords) for s in (0.0, 0.5, 1.0)]
    )
    truths = spec(pts)
    implied = []
    for res, truth in zip(invert_many(f, pts, sgrid, kappa=1.0), truths):
        implied.append(truth / res.value.real)
    spread = (max(implied) - min(implied)) / kappa2
    dev_heldout = max(abs(k - kappa2) / kappa2 for k in implied)
    prep = plancherel_residual(f, sgrid)
    dev_planch = abs(prep.kappa_implied - kappa2) / kappa2
    checks = [
        CheckResult("kappa2_heldout_spread", spread, 1e-2, spread <= 1e-2),
        CheckResult("kappa2_heldout_deviation", dev_heldout, 1e-2, dev_heldout <= 1e-2),
        CheckResult("kappa2_vs_plancherel", dev_planch, 1e-2, dev_planch <= 1e-2),
        CheckResult("kappa2_vs_analytic", dev_analytic, 1e-2, dev_analytic <= 1e-2,
                    note=f"kappa2={kappa2!r}, 1/(2 pi^2)={KAPPA_D3!r}"),
    ]
    csv = serialize._csv(rows, ["dim", "kappa"])
    return checks, {"kappa.csv": csv}


# ---------------------------------------------------------------------------
# registry, profiles, runner

SCENARIOS = {
    "inversion": scenario_inversion,
    "plancherel": scenario_plancherel,
    "jeft-equivalence": scenario_jeft_equivalence,
    "kaverage-bridge": scenario_kaverage_bridge,
    "functional-equation": scenario_functional_equation,
    "asymptotic": scenario_asymptotic,
    "eigen": scenario_eigen,
    "pw-recovery": scenario_pw_recovery,
    "c-table": scenario_c_table,
    "calibrate": scenario_calibrate,
}

# Per-scenario default grid profiles (dim-dependent), applied under user
# config; chosen so each scenario meets its tolerance within its time budget.
_PROFILES = {
    "jeft-equivalence": {
        2: dict(radial_nodes=96, r_max=6.0, boundary_nodes=256,
                bump_radius=1.0, bump_shift=0.4, bump_alpha=0.6),
        3: dict(radial_nodes=96, r_max=6.0, boundary_theta=24, boundary_phi=48,
                bump_radius=1.0, bump_shift=0.4, bump_alpha=0.6),
    },
    "inversion": {
        2: dict(radial_nodes=128, r_max=6.5, boundary_nodes=160,
                spectral_nodes=200, lambda_max=24.0, bump_radius=2.0, bump_shift=0.4),
        3: dict(radial_nodes=192, r_max=7.5, boundary_theta=8, boundary_phi=16,
                spectral_nodes=300, lambda_max=40.0, bump_radius=2.5),
    },
    "plancherel": {
        2: dict(radial_nodes=128, r_max=6.5, boundary_nodes=128,
                spectral_nodes=200, lambda_max=24.0,
                bump_radius=2.0, bump_shift=0.4, bump_alpha=0.5),
        3: dict(radial_nodes=192, r_max=7.5, boundary_theta=8, boundary_phi=16,
                spectral_nodes=300, lambda_max=40.0, bump_radius=2.5),
    },
    "kaverage-bridge": {
        2: dict(radial_nodes=256, r_max=5.5, boundary_nodes=256,
                spectral_nodes=32, lambda_max=10.0, bump_radius=1.0, bump_shift=0.5),
        3: dict(radial_nodes=160, r_max=5.5, boundary_theta=24, boundary_phi=48,
                spectral_nodes=8, lambda_max=6.0, bump_radius=1.0, bump_shift=0.5),
    },
    "functional-equation": {
        2: dict(radial_nodes=96, r_max=6.0, boundary_nodes=256,
                bump_radius=1.2, bump_shift=0.3, bump_alpha=0.6),
        3: dict(radial_nodes=96, r_max=6.0, boundary_theta=24, boundary_phi=48,
                bump_radius=1.2, bump_shift=0.3, bump_alpha=0.6),
    },
    "asymptotic": {
        2: dict(radial_nodes=128, r_max=16.0, boundary_nodes=64, bump_radius=2.0),
        3: dict(radial_nodes=128, r_max=16.0, boundary_theta=12, boundary_phi=24,
                bump_radius=2.0),
    },
    "eigen": {
        2: dict(radial_nodes=96, r_max=6.0, boundary_nodes=256,
                bump_radius=1.2, bump_alpha=0.5),
        3: dict(radial_nodes=96, r_max=6.0, boundary_theta=24, boundary_phi=48,
                bump_radius=1.2, bump_alpha=0.5),
    },
    "pw-recovery": {
        2: dict(radial_nodes=512, boundary_nodes=128),
        3: dict(radial_nodes=384, boundary_theta=24, boundary_phi=48),
    },
    "c-table": {2: {}, 3: {}},
    "calibrate": {2: {}, 3: {}},
}


def scenario_base_config(name: str, dim: int) -> ScenarioConfig:
    if name not in SCENARIOS:
        raise ConfigError(f"unknown scenario: {name}")
    profile = _PROFILES.get(name, {}).get(dim, {})
    return replace(ScenarioConfig(), dim=dim, **profile)


def list_scenarios():
    return sorted(SCENARIOS)


def run_scenario(name: str, cfg: ScenarioConfig, out_dir=None) -> int:
    """Execute a scenario, write results.json and CSV artifacts, return exit code.

    Exit code 0 when all checks pass, 1 on any check failure; configuration
    errors raise ConfigError before any work starts (CLI maps them to 2).
    Numeric errors inside the run surface as failed checks.
    """
    import pathlib

    if name not in SCENARIOS:
        raise ConfigError(f"unknown scenario: {name}")
    out = pathlib.Path(out_dir if out_dir is not None else cfg.out_dir)
    rng = np.random.default_rng(cfg.seed)
    t0 = time.perf_counter()
    try:
        checks, artifacts = SCENARIOS[name](cfg, rng)
    except ConfigError:
        raise
    except Exception as exc:  # numeric/runtime failures become failed checks
        checks = [CheckResult("scenario_error", float("nan"), 0.0, False, note=repr(exc))]
        artifacts = {}
    wall = time.perf_counter() - t0
    for name_override, tol in cfg.tolerances:
        for c in checks:
            if c.name == name_override:
                c.tol = float(tol)
                c.passed = bool(c.value <= c.tol)
    if cfg.timing == "zero":
        wall = 0.0
        for c in checks:
            c.seconds = 0.0
    else:
        # per-check runtimes are not measured individually; the scenario wall
        # clock is spread evenly (checks share the heavy computations)
        for c in checks:
            if c.seconds == 0.0:
                c.seconds = wall / max(len(checks), 1)
    passed = sum(1 for c in checks if c.passed)
    summary = {
        "total": len(checks),
        "passed": passed,
        "failed": len(checks) - passed,
        "wall_seconds": wall,
    }
    out.mkdir(parents=True, exist_ok=True)
    # single writer: everything accumulated first, then flushed
    for fname, payload in artifacts.items():
        (out / fname).write_text(payload, encoding="utf-8")
    results = serialize.results_to_json(name, config_echo(cfg), [c.as_dict() for c in checks], summary)
    (out / "results.json").write_text(results, encoding="utf-8")
    return 0 if passed == len(checks) else 1
