"""Metric circles about an interior point, radius sweeps of their curvatures and fits.

A circle of Hilbert radius ``r`` about ``o`` has the polar function

    rho_r(phi) = a*b*(e^{2r} - 1) / (a + b*e^{2r}),   a = omega(phi), b = omega(phi + pi)

where ``omega`` is the radial function about ``o`` and ``phi`` is measured from the direction
``o -> p`` of the distinguished boundary point ``p``.
"""
from __future__ import annotations

import csv
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy.optimize import curve_fit
from scipy.stats import linregress

from hilbert_lab.module_utils import settings
from hilbert_lab.module_utils.connection import (
    CurveJet,
    finsler_curvature,
    normal_curvature,
    rund_curvature,
    unit_normal,
)
from hilbert_lab.module_utils.convex_geometry import (
    chord_through_boundary_point,
    graph_jet_at,
    recenter,
    rot90,
)
from hilbert_lab.module_utils.errors import (
    FitError,
    HilbertLabError,
    InputError,
    NormalizationError,
)
from hilbert_lab.module_utils.finsler import hilbert_distance

log = logging.getLogger(__name__)

CSV_HEADER = ("r", "x2", "k_n", "k_R", "k_F", "gap_err")
FIT_COLUMNS = ("k_n", "k_R", "k_F", "k_R_sq", "k_F_sq")


@dataclass(frozen=True)
class SphereFrame:
    domain: object
    o: np.ndarray
    phi0: float
    e_par: np.ndarray
    e_perp: np.ndarray
    centered: object = field(repr=False)

    @property
    def p(self):
        return self.o + self.omega0 * self.e_par

    @property
    def omega0(self):
        return float(self.centered.radial(0.0)[0])

    @property
    def omega_pi(self):
        return float(self.centered.radial(np.pi)[0])

    @property
    def C(self):
        return (1.0 + self.omega_pi) / self.omega_pi

    @property
    def gap_coefficient(self):
        """Limit of ``x2 * e^{2r}`` at ``phi = 0``."""
        return self.omega0 * (self.omega0 / self.omega_pi + 1.0)

    def direction(self, phi):
        phi = np.asarray(phi, dtype=float)
        return np.cos(phi)[..., None] * self.e_par + np.sin(phi)[..., None] * self.e_perp


def sphere_frame(domain, o, phi_p=0.0):
    o = np.asarray(o, dtype=float)
    p = domain.boundary_point(phi_p)
    e_par = (p - o) / np.linalg.norm(p - o)
    centered = recenter(domain, o, float(np.arctan2(e_par[1], e_par[0])))
    return SphereFrame(domain, o, float(phi_p), e_par, rot90(e_par), centered)


def _check_radius(r):
    r = np.asarray(r, dtype=float)
    if np.any(~(r > 0)):
        raise InputError("sphere radius must be positive")
    return r


def sphere_radial(domain, frame, r, phi):
    r = _check_radius(r)
    phi = np.asarray(phi, dtype=float)
    a = frame.centered.radial(phi)[0]
    b = frame.centered.radial(phi + np.pi)[0]
    E = np.exp(2.0 * r)
    rho = a * b * np.expm1(2.0 * r) / (a + b * E)
    return float(rho) if np.ndim(rho) == 0 else rho


def circle_jet(domain, frame, r, phi):
    """Point, first and second ``phi``-derivatives of the circle of radius ``r``."""
    r = float(_check_radius(r))
    a = frame.centered.radial(phi, order=2)
    b = frame.centered.radial(phi + np.pi, order=2)
    E = np.exp(2.0 * r)
    Em1 = np.expm1(2.0 * r)
    D = a[0] + b[0] * E
    D1 = a[1] + b[1] * E
    D2 = a[2] + b[2] * E
    rho = a[0] * b[0] * Em1 / D
    N1 = (a[1] * b[0] + a[0] * b[1]) * Em1
    N2 = (a[2] * b[0] + 2 * a[1] * b[1] + a[0] * b[2]) * Em1
    rho1 = (N1 - rho * D1) / D
    rho2 = (N2 - 2 * rho1 * D1 - rho * D2) / D
    d = frame.direction(phi)
    d_perp = rot90(d)
    return CurveJet(
        frame.o + rho * d,
        rho1 * d + rho * d_perp,
        rho2 * d + 2 * rho1 * d_perp - rho * d,
    )


class SweepRow(NamedTuple):
    r: float
    x2: float
    k_n: float
    k_R: float
    k_F: float
    gap_err: float


@dataclass
class SweepTable:
    rows: list
    phi: float = 0.0
    errors: dict = field(default_factory=dict)

    def column(self, name):
        if name in ("k_R_sq", "k_F_sq"):
            return self.column(name[:-3]) ** 2
        if name not in SweepRow._fields:
            raise InputError("unknown sweep column {0!r}".format(name))
        return np.array([getattr(row, name) for row in self.rows], dtype=float)

    @property
    def radii(self):
        return self.column("r")

    def write_csv(self, stream):
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for row in self.rows:
            writer.writerow([format(float(v), ".17g") for v in row])


def radius_grid(r_min=settings.DEFAULT_R_MIN, r_max=settings.DEFAULT_R_MAX,
                steps=settings.DEFAULT_STEPS):
    if not (0 < r_min <= r_max) or steps < 1:
        raise InputError("radius grid needs 0 < r_min <= r_max and steps >= 1")
    if steps == 1:
        return np.array([float(r_min)])
    return np.linspace(r_min, r_max, int(steps))


def _sweep_row(domain, frame, r, phi):
    jet = circle_jet(domain, frame, r, phi)
    x2 = float(frame.centered.radial(phi)[0] - sphere_radial(domain, frame, r, phi))
    normal = unit_normal(domain, jet.c, jet.c1, center=frame.o)
    return SweepRow(
        float(r),
        x2,
        normal_curvature(domain, jet, normal),
        rund_curvature(domain, jet),
        finsler_curvature(domain, jet),
        abs(hilbert_distance(domain, frame.o, jet.c) - r),
    )


def curvature_sweep(domain, frame, r_grid, phi=0.0, workers=None):
    r_grid = np.asarray(r_grid, dtype=float)
    if r_grid.ndim != 1 or len(r_grid) == 0:
        raise InputError("radius grid must be a nonempty sequence")
    if np.any(np.diff(r_grid) <= 0) or np.any(r_grid <= 0):
        raise InputError("radius grid must be positive and strictly increasing")

    errors = {}

    def evaluate(r):
        try:
            return _sweep_row(domain, frame, r, phi)
        except HilbertLabError as e:
            log.warning("sweep row r=%g phi=%g failed: %s", r, phi, e)
            errors[float(r)] = str(e)
            nan = float("nan")
            return SweepRow(float(r), nan, nan, nan, nan, nan)

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(evaluate, r_grid))
    else:
        rows = [evaluate(r) for r in r_grid]
    log.info("swept %d radii at phi=%g (%d failed)", len(rows), phi, len(errors))
    return SweepTable(rows, float(phi), errors)


@dataclass(frozen=True)
class AsymptoticFit:
    column: str
    limit: float
    coefficient: float
    rate: float
    rms: float
    window: tuple
    points: int
    free_limit: bool = False


def _exp_model(r, L, A, rho):
    return L + A * np.exp(-rho * r)


def fit_exponential_approach(table, column, window=settings.FIT_WINDOW, limit=1.0,
                             free_limit=False):
    """Fit ``k(r) = L + A*exp(-rho*r)`` on ``window`` by regressing ``log|k - L|`` on ``r``."""
    if column not in FIT_COLUMNS:
        raise InputError("cannot fit column {0!r}".format(column))
    r = table.radii
    k = table.column(column)
    mask = (r >= window[0] - 1e-12) & (r <= window[1] + 1e-12) & np.isfinite(k)
    r, k = r[mask], k[mask]
    if len(r) < settings.FIT_MIN_POINTS:
        raise FitError(
            "fit window {0} holds {1} usable rows, need {2}".format(
                tuple(window), len(r), settings.FIT_MIN_POINTS
            )
        )
    dev = k - limit
    if np.any(np.abs(dev) <= 10 * settings.FIT_NOISE_FLOOR):
        raise FitError("deviation from the limit is at the noise floor in {0}".format(column))
    sign = 1.0 if np.median(dev) > 0 else -1.0
    reg = linregress(r, np.log(np.abs(dev)))
    L, A, rho = float(limit), sign * float(np.exp(reg.intercept)), -float(reg.slope)
    if free_limit:
        (L, A, rho), _ = curve_fit(_exp_model, r, k, p0=(L, A, rho), maxfev=10000)
    rms = float(np.sqrt(np.mean((k - _exp_model(r, L, A, rho)) ** 2)))
    return AsymptoticFit(column, float(L), float(A), float(rho), rms, tuple(window), len(r),
                         free_limit)


@dataclass(frozen=True)
class Predictions:
    C: float
    H: float
    L_chord: float
    f3: float
    f4: float
    A_normal: float
    A_rund_sq: float
    A_finsler_sq: float

    def for_column(self, column):
        return {"k_n": self.A_normal, "k_R_sq": self.A_rund_sq, "k_F_sq": self.A_finsler_sq}.get(
            column
        )


def predicted_coefficients(domain_normalized, frame):
    p = frame.p
    jet = graph_jet_at(domain_normalized, p)
    if abs(jet.f2 - 0.5) > 1e-8:
        raise NormalizationError(
            "boundary curvature at p is {0:.12g}, expected 0.5".format(jet.f2)
        )
    H = frame.omega0 + frame.omega_pi
    entering = -(jet.f3 * jet.tangent - 0.5 * jet.normal)
    L = chord_through_boundary_point(domain_normalized, p, entering)
    C = frame.C
    common = -8.0 * jet.f3 ** 2 / 9.0
    return Predictions(
        C=C,
        H=H,
        L_chord=L,
        f3=jet.f3,
        f4=jet.f4,
        A_normal=C * (1.0 / H + common),
        A_rund_sq=C * (2.0 / L + common),
        A_finsler_sq=C * (common + 4.0 * jet.f4),
    )
