"""Verification suite.

Checks are registered in execution order under ids ``<GROUP>_<NAME>``; a selection may name
single ids or whole groups (``GEOM``, ``NORM``, ``METRIC``, ``CONN``, ``SPHERE``, ``EXP``).
Random samples come from one named stream per check, so a check's result does not depend on
the selection it runs in.
"""
from __future__ import annotations

import logging
import os
from functools import cached_property

import numpy as np

from hilbert_lab.module_utils import settings
from hilbert_lab.module_utils.config import DomainConfig
from hilbert_lab.module_utils.connection import (
    CurveJet,
    arclength_accel,
    finsler_curvature,
    normal_curvature,
    rund_curvature,
    unit_normal,
)
from hilbert_lab.module_utils.convex_geometry import (
    angle_cosine_bound,
    cross2,
    planar_section,
    ray_exit,
)
from hilbert_lab.module_utils.errors import HilbertLabError, UnknownCheckError
from hilbert_lab.module_utils.expansions import EXPANSION_CHECKS, expansion_check, normalized_jet
from hilbert_lab.module_utils.finsler import (
    distance_by_quadrature,
    fundamental_tensor,
    fundamental_tensor_fd,
    hilbert_distance,
    hilbert_norm,
    okada_residual,
)
from hilbert_lab.module_utils.projective import normalize
from hilbert_lab.module_utils.report import (
    FAIL,
    PASS,
    SKIPPED,
    CheckRecord,
    VerificationReport,
    assertion,
    diagnostic,
)
from hilbert_lab.module_utils.sampling import interior_pairs, interior_points, stream, unit_vectors
from hilbert_lab.module_utils.spheres import (
    FIT_COLUMNS,
    circle_jet,
    curvature_sweep,
    fit_exponential_approach,
    predicted_coefficients,
    radius_grid,
    sphere_frame,
    sphere_radial,
)

log = logging.getLogger(__name__)

GROUPS = ("GEOM", "NORM", "METRIC", "CONN", "SPHERE", "EXP")
RIEMANNIAN_KINDS = ("disk", "ellipse", "ball3", "ellipsoid3")
RATE_TARGET = 2.0
RATE_TOL = 0.2
LIMIT_TOL = 0.05
COTH_RTOL = 1e-5
RIEMANN_TOL = 1e-6
CURVATURE_COLUMNS = ("k_n", "k_R", "k_F")

CHECKS = {}


def check(check_id):
    def register(func):
        CHECKS[check_id] = func
        return func

    return register


def select_checks(selection=None):
    """Ordered check ids for ``selection`` (``None`` means every check)."""
    if selection is None:
        return list(CHECKS)
    chosen = set()
    for token in selection:
        token = token.strip().upper()
        if token in CHECKS:
            chosen.add(token)
        elif token in GROUPS:
            chosen.update(c for c in CHECKS if c.startswith(token + "_"))
        else:
            raise UnknownCheckError("unknown check {0!r}".format(token))
    return [c for c in CHECKS if c in chosen]


class SuiteContext(object):
    """Shared, lazily computed inputs of the checks for one configured domain."""

    def __init__(self, built, seed=settings.DEFAULT_SEED, r_grid=None, workers=None):
        self.built = built
        self.config = built.config
        self.domain = built.domain
        self.o = built.o
        self.phi_p = built.phi_p
        self.seed = seed
        self.r_grid = radius_grid() if r_grid is None else np.asarray(r_grid, dtype=float)
        self.workers = workers

    def rng(self, check_id):
        return stream(self.seed, check_id)

    @cached_property
    def frame(self):
        return sphere_frame(self.domain, self.o, self.phi_p)

    @cached_property
    def normalization(self):
        return normalize(self.domain, self.o, self.phi_p)

    @cached_property
    def normalized_jet(self):
        return normalized_jet(self.normalization[1])

    @cached_property
    def sweep(self):
        return curvature_sweep(self.domain, self.frame, self.r_grid, 0.0, self.workers)

    @cached_property
    def angle_sweeps(self):
        window = np.linspace(settings.FIT_WINDOW[0], settings.FIT_WINDOW[1], 4)
        angles = 2.0 * np.pi * np.arange(settings.UNIFORMITY_ANGLES) / settings.UNIFORMITY_ANGLES
        return [
            curvature_sweep(self.domain, self.frame, window, phi, self.workers) for phi in angles
        ]

    def samples(self, check_id, n):
        rng = self.rng(check_id)
        return interior_points(self.domain, rng, n), unit_vectors(rng, n)


def _ok(flag):
    return PASS if flag else FAIL


# geometry


@check("GEOM_CONVEXITY")
def _geom_convexity(ctx):
    jets = ctx.domain.sample_boundary()
    k = cross2(jets[1], jets[2]) / np.linalg.norm(jets[1], axis=-1) ** 3
    k_min = float(np.min(k))
    return CheckRecord("GEOM_CONVEXITY", _ok(k_min > 0), k_min, "> 0", 0.0,
                       detail={"k_max": float(np.max(k))})


@check("GEOM_RAY_RESIDUAL")
def _geom_ray_residual(ctx):
    points, dirs = ctx.samples("GEOM_RAY_RESIDUAL", 100)
    worst = 0.0
    for x, y in zip(points, dirs):
        hit = ray_exit(ctx.domain, x, y).exit
        base = ctx.domain.base_point
        omega = float(ctx.domain.radial(ctx.domain.angle_of(hit))[0])
        worst = max(worst, abs(float(np.linalg.norm(hit - base)) - omega))
    return assertion("GEOM_RAY_RESIDUAL", worst, settings.RAY_RESIDUAL_TOL)


@check("GEOM_ANGLE_BOUND")
def _geom_angle_bound(ctx):
    rep = angle_cosine_bound(ctx.domain, ctx.o)
    return CheckRecord("GEOM_ANGLE_BOUND", _ok(rep.holds), rep.min_cos, rep.bound, 1e-8,
                       detail={"omega0": rep.omega0, "k_min": rep.k_min,
                               "phi_at_min": rep.phi_at_min})


# normalization


@check("NORM_JETS")
def _norm_jets(ctx):
    rep = ctx.normalization[2]
    measured = max(abs(rep.f1_normalized), abs(rep.f2_normalized - 0.5))
    return assertion("NORM_JETS", measured, 1e-8, message="f(0)=f'(0)=0, f''(0)=1/2",
                     f2=rep.f2_normalized)


@check("NORM_FIXED_POINT")
def _norm_fixed_point(ctx):
    return assertion("NORM_FIXED_POINT", ctx.normalization[2].fixed_point_error, 1e-10)


@check("NORM_OPPOSITE_TANGENT")
def _norm_opposite_tangent(ctx):
    return assertion("NORM_OPPOSITE_TANGENT", ctx.normalization[2].opposite_tangent_angle, 1e-8)


@check("NORM_STEP2_CURVATURE")
def _norm_step2_curvature(ctx):
    rep = ctx.normalization[2]
    return assertion("NORM_STEP2_CURVATURE", abs(rep.kbar0 - rep.ktilde0), 1e-8,
                     kbar0=rep.kbar0, ktilde0=rep.ktilde0)


@check("NORM_TAN_BETA_BOUND")
def _norm_tan_beta_bound(ctx):
    rep = ctx.normalization[2]
    return assertion("NORM_TAN_BETA_BOUND", abs(rep.tan_beta), rep.tan_beta_bound + 1e-8,
                     k_tilde_min=rep.k_tilde_min, omega_tilde0=rep.omega_tilde0)


@check("NORM_CURVATURE_BOUNDS")
def _norm_curvature_bounds(ctx):
    rep = ctx.normalization[2]
    ok = rep.curvature_min > 0 and np.isfinite(rep.curvature_max)
    return CheckRecord("NORM_CURVATURE_BOUNDS", _ok(ok), rep.curvature_max, None, None,
                       "curvature of the normalized boundary",
                       {"curvature_min": rep.curvature_min})


@check("NORM_F3_FINITE")
def _norm_f3_finite(ctx):
    rep = ctx.normalization[2]
    ok = np.isfinite(rep.f3_normalized) and np.isfinite(rep.f4_normalized)
    return CheckRecord("NORM_F3_FINITE", _ok(ok), rep.f3_normalized, None, None,
                       detail={"f4": rep.f4_normalized})


@check("NORM_OMEGA_HAT0")
def _norm_omega_hat0(ctx):
    rep = ctx.normalization[2]
    return diagnostic("NORM_OMEGA_HAT0", rep.omega_hat0, 1.0,
                      "distance from P(o) to the origin, not forced to 1",
                      formula=1.0 / (2.0 * rep.omega_u * rep.kbar0))


@check("NORM_THIRD_DERIVATIVE_SHIFT")
def _norm_third_derivative_shift(ctx):
    rep = ctx.normalization[2]
    return diagnostic("NORM_THIRD_DERIVATIVE_SHIFT", rep.f3_bar, rep.f3_bar_shift,
                      "step 2 output third derivative vs shift formula",
                      f3_tilde=rep.f3_tilde, tan_beta=rep.tan_beta, H=rep.H)


@check("NORM_INVARIANCE")
def _norm_invariance(ctx):
    P, image, _ = ctx.normalization
    a, b = interior_pairs(ctx.domain, ctx.rng("NORM_INVARIANCE"), settings.INVARIANCE_PAIRS)
    worst = 0.0
    for x, y in zip(a, b):
        before = hilbert_distance(ctx.domain, x, y)
        after = hilbert_distance(image, P.apply(x), P.apply(y))
        worst = max(worst, abs(before - after))
    return assertion("NORM_INVARIANCE", worst, 1e-8)


# metric


@check("METRIC_HOMOGENEITY")
def _metric_homogeneity(ctx):
    points, dirs = ctx.samples("METRIC_HOMOGENEITY", 100)
    scales = ctx.rng("METRIC_HOMOGENEITY/scale").uniform(0.1, 10.0, size=len(points))
    worst = 0.0
    for x, y, lam in zip(points, dirs, scales):
        F = hilbert_norm(ctx.domain, x, y)
        worst = max(worst, abs(hilbert_norm(ctx.domain, x, lam * y) - lam * F) / (lam * F))
    return assertion("METRIC_HOMOGENEITY", worst, 1e-12)


@check("METRIC_REVERSIBILITY")
def _metric_reversibility(ctx):
    points, dirs = ctx.samples("METRIC_REVERSIBILITY", 100)
    worst = max(
        abs(hilbert_norm(ctx.domain, x, y) - hilbert_norm(ctx.domain, x, -y))
        for x, y in zip(points, dirs)
    )
    return assertion("METRIC_REVERSIBILITY", worst, 0.0)


@check("METRIC_OKADA")
def _metric_okada(ctx):
    points, dirs = ctx.samples("METRIC_OKADA", settings.OKADA_SAMPLES)
    worst = max(
        float(np.max(np.abs(okada_residual(ctx.domain, x, y)))) for x, y in zip(points, dirs)
    )
    return assertion("METRIC_OKADA", worst, 1e-6, samples=len(points))


def _tensor_samples(ctx, check_id):
    points, dirs = ctx.samples(check_id, settings.TENSOR_SAMPLES)
    return [(x, y, fundamental_tensor(ctx.domain, x, y)) for x, y in zip(points, dirs)]


@check("METRIC_TENSOR_FD")
def _metric_tensor_fd(ctx):
    samples = _tensor_samples(ctx, "METRIC_TENSOR_FD")
    worst = 0.0
    for x, y, g in samples:
        exact = g.as_array()
        approx = fundamental_tensor_fd(ctx.domain, x, y).as_array()
        worst = max(worst, float(np.max(np.abs(exact - approx)) / np.max(np.abs(exact))))
    return assertion("METRIC_TENSOR_FD", worst, 1e-6, samples=len(samples))


@check("METRIC_EULER")
def _metric_euler(ctx):
    worst = 0.0
    for x, y, g in _tensor_samples(ctx, "METRIC_EULER"):
        F2 = hilbert_norm(ctx.domain, x, y) ** 2
        worst = max(worst, abs(g.form(y, y) - F2) / F2)
    return assertion("METRIC_EULER", worst, 1e-8)


@check("METRIC_POSITIVE")
def _metric_positive(ctx):
    least = min(
        float(np.min(g.eigenvalues())) for _, _, g in _tensor_samples(ctx, "METRIC_POSITIVE")
    )
    return CheckRecord("METRIC_POSITIVE", _ok(least > 0), least, "> 0", 0.0)


@check("METRIC_DISTANCE_QUADRATURE")
def _metric_distance_quadrature(ctx):
    a, b = interior_pairs(ctx.domain, ctx.rng("METRIC_DISTANCE_QUADRATURE"), 20)
    worst = max(
        abs(hilbert_distance(ctx.domain, x, y) - distance_by_quadrature(ctx.domain, x, y))
        for x, y in zip(a, b)
    )
    return assertion("METRIC_DISTANCE_QUADRATURE", worst, 1e-6)


@check("METRIC_KLEIN")
def _metric_klein(ctx):
    center = ctx.domain.base_point
    if ctx.config.kind != "disk":
        return CheckRecord("METRIC_KLEIN", SKIPPED, message="Klein oracle needs a disk")
    radius = ctx.config.params.get("radius", 1.0)
    worst = 0.0
    for rho in np.arange(1, 10) / 10.0:
        b = center + np.array([rho * radius, 0.0])
        worst = max(worst, abs(hilbert_distance(ctx.domain, center, b) - np.arctanh(rho)))
    return assertion("METRIC_KLEIN", worst, 1e-9, message="d = artanh(rho) from the center")


# connection


@check("CONN_GEODESIC")
def _conn_geodesic(ctx):
    points, dirs = ctx.samples("CONN_GEODESIC", 30)
    worst = max(
        rund_curvature(ctx.domain, CurveJet(x, y, np.zeros(2))) for x, y in zip(points, dirs)
    )
    return assertion("CONN_GEODESIC", worst, 1e-8)


@check("CONN_ORTHOGONALITY")
def _conn_orthogonality(ctx):
    points, dirs = ctx.samples("CONN_ORTHOGONALITY", 30)
    accels = ctx.rng("CONN_ORTHOGONALITY/accel").normal(size=(len(points), 2))
    worst = 0.0
    for x, y, c2 in zip(points, dirs, accels):
        D = arclength_accel(ctx.domain, CurveJet(x, y, c2))
        g = fundamental_tensor(ctx.domain, x, y)
        scale = np.sqrt(g.form(D, D) * g.form(y, y))
        if scale > 0:
            worst = max(worst, abs(g.form(D, y)) / scale)
    return assertion("CONN_ORTHOGONALITY", worst, 1e-8)


@check("CONN_NORMAL")
def _conn_normal(ctx):
    points, dirs = ctx.samples("CONN_NORMAL", 30)
    worst = 0.0
    for x, y in zip(points, dirs):
        n = unit_normal(ctx.domain, x, y)
        worst = max(worst, abs(n.residual), abs(hilbert_norm(ctx.domain, x, n.n) - 1.0))
    return assertion("CONN_NORMAL", worst, 1e-8)


@check("CONN_REPARAM")
def _conn_reparam(ctx):
    jet = circle_jet(ctx.domain, ctx.frame, 2.0, 0.0)
    worst = 0.0
    for scale in (0.4, 2.5):
        other = jet.reparametrized(scale)
        for curvature in (rund_curvature, finsler_curvature):
            k0, k1 = curvature(ctx.domain, jet), curvature(ctx.domain, other)
            worst = max(worst, abs(k1 - k0) / max(1.0, abs(k0)))
        n0 = unit_normal(ctx.domain, jet.c, jet.c1, center=ctx.frame.o)
        n1 = unit_normal(ctx.domain, other.c, other.c1, center=ctx.frame.o)
        k0, k1 = normal_curvature(ctx.domain, jet, n0), normal_curvature(ctx.domain, other, n1)
        worst = max(worst, abs(k1 - k0) / max(1.0, abs(k0)))
    return assertion("CONN_REPARAM", worst, 1e-10)


# spheres


@check("SPHERE_CONSISTENCY")
def _sphere_consistency(ctx):
    frame = ctx.frame
    phi = 2.0 * np.pi * np.arange(settings.UNIFORMITY_ANGLES) / settings.UNIFORMITY_ANGLES
    worst = 0.0
    for r in settings.SPHERE_RADII:
        rho = sphere_radial(ctx.domain, frame, r, phi)
        for point in frame.o + rho[:, None] * frame.direction(phi):
            worst = max(worst, abs(hilbert_distance(ctx.domain, frame.o, point) - r))
    return assertion("SPHERE_CONSISTENCY", worst, 1e-8)


def _sweep_window(table):
    r = table.radii
    mask = (r >= settings.FIT_WINDOW[0] - 1e-12) & (r <= settings.FIT_WINDOW[1] + 1e-12)
    return mask


@check("SPHERE_COTH")
def _sphere_coth(ctx):
    if ctx.config.kind not in RIEMANNIAN_KINDS:
        return CheckRecord("SPHERE_COTH", SKIPPED, message="no hyperbolic oracle for this kind")
    table = ctx.sweep
    coth = 1.0 / np.tanh(table.radii)
    errors = [np.max(np.abs(table.column(c) / coth - 1.0)) for c in CURVATURE_COLUMNS]
    spread = float(np.max(np.abs(table.column("k_R") - table.column("k_F"))))
    measured = float(max(errors))
    ok = measured <= COTH_RTOL and spread <= RIEMANN_TOL
    return CheckRecord("SPHERE_COTH", _ok(ok), measured, "coth(r)", COTH_RTOL,
                       "relative error of k_n, k_R, k_F against coth(r)",
                       {"k_R_minus_k_F": spread, "riemann_tol": RIEMANN_TOL})


@check("SPHERE_GAP_LAW")
def _sphere_gap_law(ctx):
    table = ctx.sweep
    target = ctx.frame.gap_coefficient
    scaled = table.column("x2") * np.exp(2.0 * table.radii)
    deviation = np.abs(scaled - target)
    ok = bool(np.all(np.isfinite(deviation)) and np.all(np.diff(deviation) <= 1e-15))
    return CheckRecord("SPHERE_GAP_LAW", _ok(ok), float(scaled[-1]), target, None,
                       "x2*e^(2r) approaches omega(0)*(omega(0)/omega(pi)+1)",
                       {"deviation": deviation, "C": ctx.frame.C})


@check("SPHERE_MONOTONE")
def _sphere_monotone(ctx):
    table = ctx.sweep
    mask = _sweep_window(table)
    worst = -np.inf if np.count_nonzero(mask) > 1 else np.inf
    for c in CURVATURE_COLUMNS:
        steps = np.diff(np.abs(table.column(c)[mask] - 1.0))
        if not np.all(np.isfinite(steps)):
            worst = np.inf
        elif len(steps):
            worst = max(worst, float(np.max(steps)))
    return CheckRecord("SPHERE_MONOTONE", _ok(worst < 0), worst, "< 0", 0.0,
                       "largest step of |k(r) - 1| on the fit window")


def _rate_check(ctx, check_id, column):
    fit = fit_exponential_approach(ctx.sweep, column)
    return assertion(check_id, abs(fit.rate - RATE_TARGET), RATE_TOL, RATE_TARGET,
                     rate=fit.rate, coefficient=fit.coefficient, rms=fit.rms)


@check("SPHERE_RATE_K_N")
def _sphere_rate_k_n(ctx):
    return _rate_check(ctx, "SPHERE_RATE_K_N", "k_n")


@check("SPHERE_RATE_K_R")
def _sphere_rate_k_r(ctx):
    return _rate_check(ctx, "SPHERE_RATE_K_R", "k_R")


@check("SPHERE_RATE_K_F")
def _sphere_rate_k_f(ctx):
    return _rate_check(ctx, "SPHERE_RATE_K_F", "k_F")


@check("SPHERE_LIMIT_UNIFORM")
def _sphere_limit_uniform(ctx):
    worst = 0.0
    for table in ctx.angle_sweeps:
        last = table.rows[-1]
        worst = max(worst, max(abs(getattr(last, c) - 1.0) for c in CURVATURE_COLUMNS))
    return assertion("SPHERE_LIMIT_UNIFORM", worst, LIMIT_TOL, 1.0,
                     "max |k(r_max) - 1| over the sampled angles")


@check("SPHERE_RATE_UNIFORM")
def _sphere_rate_uniform(ctx):
    rates = {}
    for table in ctx.angle_sweeps:
        try:
            rates[format(table.phi, ".6f")] = fit_exponential_approach(table, "k_n").rate
        except HilbertLabError as e:
            rates[format(table.phi, ".6f")] = str(e)
    finite = dict((phi, v) for phi, v in rates.items() if isinstance(v, float))
    worst = max((abs(v - RATE_TARGET) for v in finite.values()), default=float("nan"))
    outliers = sorted(phi for phi, v in finite.items() if abs(v - RATE_TARGET) > RATE_TOL)
    message = "max |rate - 2| of k_n over angles"
    if outliers:
        message += "; outside 2 +/- {0} at {1}".format(
            RATE_TOL,
            ", ".join("phi={0} rate={1:.3f}".format(phi, finite[phi]) for phi in outliers),
        )
    return diagnostic("SPHERE_RATE_UNIFORM", worst, 0.0, message, rates=rates,
                      outliers=outliers)


@check("SPHERE_PREDICTIONS")
def _sphere_predictions(ctx):
    _, image, _ = ctx.normalization
    frame = sphere_frame(image, image.base_point, 0.0)
    pred = predicted_coefficients(image, frame)
    detail = {"C": pred.C, "H": pred.H, "L_chord": pred.L_chord, "f3": pred.f3, "f4": pred.f4}
    for column in FIT_COLUMNS:
        fit = fit_exponential_approach(ctx.sweep, column)
        detail[column] = {"fitted": fit.coefficient, "predicted": pred.for_column(column)}
    return diagnostic("SPHERE_PREDICTIONS", detail["k_n"]["fitted"], pred.A_normal,
                      "fitted e^(-2r) coefficients vs predicted", **detail)


def _tangent_basis(normal):
    normal = normal / np.linalg.norm(normal)
    seed = np.eye(3)[int(np.argmin(np.abs(normal)))]
    t1 = np.cross(normal, seed)
    t1 /= np.linalg.norm(t1)
    return t1, np.cross(normal, t1)


@check("SPHERE_SECTIONS")
def _sphere_sections(ctx):
    body = ctx.built.body
    if body is None or body.quadric is None:
        return CheckRecord("SPHERE_SECTIONS", SKIPPED, message="needs a spatial quadric body")
    o3, E = ctx.domain.embedding
    p3 = o3 + E @ ctx.domain.boundary_point(ctx.phi_p)
    M, center = body.quadric
    t1, t2 = _tangent_basis(M @ (p3 - center))
    window = np.linspace(settings.FIT_WINDOW[0], settings.FIT_WINDOW[1], 4)
    results, worst, ok = [], 0.0, True
    for k in range(settings.SECTION_DIRECTIONS):
        angle = np.pi * k / settings.SECTION_DIRECTIONS
        tau = np.cos(angle) * t1 + np.sin(angle) * t2
        section = planar_section(body, o3, p3 - o3, tau)
        table = curvature_sweep(section, sphere_frame(section, np.zeros(2), 0.0), window)
        fit = fit_exponential_approach(table, "k_n")
        limit_err = abs(table.rows[-1].k_n - 1.0)
        rate_err = abs(fit.rate - RATE_TARGET)
        ok = ok and limit_err <= LIMIT_TOL and rate_err <= RATE_TOL
        worst = max(worst, rate_err)
        results.append({"direction": tau, "k_n_last": table.rows[-1].k_n, "rate": fit.rate})
    return CheckRecord("SPHERE_SECTIONS", _ok(ok), worst, 0.0, RATE_TOL,
                       "worst |rate - 2| of k_n over tangent directions at p",
                       {"sections": results})


# expansions


def _expansion(check_id):
    name = check_id[len("EXP_"):]

    def run(ctx):
        res = expansion_check(ctx.normalization[1], name, jet=ctx.normalized_jet)
        measured = res.residual if name.endswith("_EXACT") else res.limit
        return CheckRecord(check_id, res.status, measured, res.expected, res.tolerance,
                           detail=dict(res.detail, x2=res.x2, values=res.values,
                                       order=res.order))

    return run


for _name in EXPANSION_CHECKS:
    check("EXP_" + _name)(_expansion("EXP_" + _name))


def run_check(ctx, check_id):
    try:
        record = CHECKS[check_id](ctx)
    except (HilbertLabError, ArithmeticError) as e:
        log.warning("check %s raised: %s", check_id, e)
        record = CheckRecord(check_id, FAIL, message="{0}: {1}".format(type(e).__name__, e))
    log.info("%s: %s", check_id, record.status)
    return record


def run_suite(config, checks=None, out_dir=None, seed=settings.DEFAULT_SEED, r_grid=None,
              workers=None):
    """Run the selected checks on ``config`` and return the report.

    With ``out_dir`` set, writes ``report.txt``, ``report.jsonl`` and, when the radius sweep
    was needed, ``sweep.csv``.
    """
    built = config.build() if isinstance(config, DomainConfig) else config
    selected = select_checks(checks)
    ctx = SuiteContext(built, seed, r_grid, workers)
    report = VerificationReport(seed=seed, preset=built.config.kind)
    for check_id in selected:
        report.add(run_check(ctx, check_id))

    if out_dir:
        os.makedirs(out_dir, exist_ok=True)
        path = os.path.join(out_dir, "report.txt")
        with open(path, "w") as f:
            f.write(report.render_text())
        report.files.append(path)
        path = os.path.join(out_dir, "report.jsonl")
        with open(path, "w") as f:
            report.write_jsonl(f)
        report.files.append(path)
        if "sweep" in ctx.__dict__:
            path = os.path.join(out_dir, "sweep.csv")
            with open(path, "w", newline="") as f:
                ctx.sweep.write_csv(f)
            report.files.append(path)
    return report
