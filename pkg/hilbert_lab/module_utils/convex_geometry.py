"""Smooth strictly convex planar domains and their boundary queries.

A domain is described by its radial function omega about an interior base point. Angles
``phi`` are measured counterclockwise from the reference direction; the profile itself is a
function of the absolute angle ``theta = reference_angle + phi``.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from math import comb
from typing import NamedTuple

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from hilbert_lab.module_utils import settings
from hilbert_lab.module_utils.errors import (
    DomainError,
    HilbertLabError,
    InputError,
    NonConvexDomainError,
    SolverError,
)
from hilbert_lab.module_utils.profiles import CallableProfile, ConicShape, quadric_radial

log = logging.getLogger(__name__)

TWO_PI = 2.0 * np.pi


def unit(angle):
    angle = np.asarray(angle, dtype=float)
    return np.stack([np.cos(angle), np.sin(angle)], axis=-1)


def rot90(v):
    v = np.asarray(v, dtype=float)
    return np.stack([-v[..., 1], v[..., 0]], axis=-1)


def cross2(a, b):
    return a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]


@dataclass(frozen=True)
class BoundaryJet:
    """Graph derivatives of the boundary in the (tangent, inward normal) frame at ``point``."""

    point: np.ndarray
    tangent: np.ndarray
    normal: np.ndarray
    f1: float
    f2: float
    f3: float
    f4: float

    @property
    def kappa(self):
        return self.f2


@dataclass(frozen=True)
class ChordInfo:
    x_plus: np.ndarray
    x_minus: np.ndarray
    r_plus: float
    r_minus: float

    @property
    def length(self):
        return self.r_plus + self.r_minus


class RayExit(NamedTuple):
    t_plus: float
    exit: np.ndarray


@dataclass(frozen=True)
class AngleBoundReport:
    min_cos: float
    phi_at_min: float
    omega0: float
    k_min: float

    @property
    def bound(self):
        return self.omega0 * self.k_min

    @property
    def holds(self):
        return self.min_cos >= self.bound - 1e-8


class ConvexDomain2(object):
    """Planar domain ``{base + s*omega(phi)*d(phi) : 0 <= s < 1}``."""

    def __init__(
        self,
        base_point,
        profile,
        reference_angle=0.0,
        preset_tag="custom",
        validate=True,
        samples=settings.CONVEXITY_SAMPLES,
    ):
        self.base_point = np.array(base_point, dtype=float)
        self.base_point.setflags(write=False)
        self.profile = profile
        self.reference_angle = float(reference_angle)
        self.preset_tag = preset_tag
        self._samples = samples
        self._setup(validate)

    def _setup(self, validate):
        phi = np.linspace(0.0, TWO_PI, self._samples, endpoint=False)
        w = self.radial(phi, order=2)
        if validate:
            self._check_radial_convexity(phi, w)
        self._extent = 1.01 * float(np.max(w[0]))
        points = self.base_point + w[0][:, None] * self.direction(phi)
        self.diameter = float(np.linalg.norm(np.ptp(points, axis=0)))

    def _check_radial_convexity(self, phi, w):
        if np.any(w[0] <= 0):
            bad = float(phi[np.argmin(w[0])])
            raise NonConvexDomainError(
                "radial function is not positive at phi={0:.6f}".format(bad), bad
            )
        numerator = w[0] ** 2 + 2 * w[1] ** 2 - w[0] * w[2]
        i = int(np.argmin(numerator))
        step = phi[1] - phi[0]

        def convexity(p):
            v = self.radial(p, order=2)
            return float(v[0] ** 2 + 2 * v[1] ** 2 - v[0] * v[2])

        res = minimize_scalar(
            convexity, bounds=(phi[i] - step, phi[i] + step), method="bounded",
            options={"xatol": 1e-10},
        )
        worst, at = min((numerator[i], float(phi[i])), (res.fun, float(res.x)))
        if worst <= 0:
            raise NonConvexDomainError(
                "boundary curvature is not positive at phi={0:.6f}".format(at % TWO_PI),
                at % TWO_PI,
            )

    def direction(self, phi):
        return unit(self.reference_angle + np.asarray(phi, dtype=float))

    def radial(self, phi, order=0):
        return self.profile(self.reference_angle + np.asarray(phi, dtype=float), order)

    def angle_of(self, point):
        r = np.asarray(point, dtype=float) - self.base_point
        return float(np.arctan2(r[1], r[0])) - self.reference_angle

    def boundary_point(self, phi):
        return self.base_point + self.radial(phi)[0][..., None] * self.direction(phi)

    def curve_jet(self, phi, order=4):
        """Derivatives of ``phi -> boundary_point(phi)``, shape ``(order+1, ..., 2)``."""
        phi = np.asarray(phi, dtype=float)
        w = self.radial(phi, order)
        out = np.zeros((order + 1,) + phi.shape + (2,))
        for n in range(order + 1):
            for k in range(n + 1):
                out[n] += comb(n, k) * w[n - k][..., None] * self.direction(phi + k * np.pi / 2)
        out[0] += self.base_point
        return out

    def boundary_jet(self, phi, order=4):
        return self.curve_jet(phi, order)

    def curve_jet_at(self, point, order=4):
        return self.curve_jet(self.angle_of(point), order)

    def sample_boundary(self, n=settings.CONVEXITY_SAMPLES, order=2):
        return self.curve_jet(np.linspace(0.0, TWO_PI, n, endpoint=False), order)

    def contains(self, x):
        r = np.asarray(x, dtype=float) - self.base_point
        dist = float(np.hypot(r[0], r[1]))
        if dist == 0.0:
            return True
        return dist < float(self.profile(np.arctan2(r[1], r[0]))[0])

    def exit_parameter(self, x, y):
        """Smallest ``t > 0`` with ``x + t*y`` on the boundary."""
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        b = self.base_point

        def g(t):
            r = x + t * y - b
            return float(np.hypot(r[0], r[1]) - self.profile(np.arctan2(r[1], r[0]))[0])

        if not g(0.0) < 0:
            raise DomainError("point {0} is not strictly interior".format(x.tolist()))
        t_hi = (float(np.linalg.norm(x - b)) + self._extent) / float(np.linalg.norm(y))
        lo, hi = 0.0, None
        for t in np.linspace(0.0, t_hi, settings.RAY_SCAN_SAMPLES + 1)[1:]:
            if g(t) > 0:
                hi = float(t)
                break
            lo = float(t)
        if hi is None:
            raise SolverError("ray does not leave the domain", bracket=(0.0, t_hi))
        try:
            return brentq(
                g, lo, hi, xtol=settings.ROOT_XTOL_SCALE * t_hi, rtol=settings.ROOT_RTOL,
                maxiter=200,
            )
        except (RuntimeError, ValueError) as err:
            raise SolverError("ray exit did not converge: {0}".format(err), bracket=(lo, hi))

    def rebased(self, reference_angle):
        return ConvexDomain2(
            self.base_point, self.profile, reference_angle, self.preset_tag, validate=False,
            samples=self._samples,
        )

    def __repr__(self):
        return "{0}(tag={1!r}, base={2}, reference_angle={3:.6f})".format(
            type(self).__name__, self.preset_tag, self.base_point.tolist(), self.reference_angle
        )


class DerivedDomain2(ConvexDomain2):
    """A domain expressed through another one.

    Ray exits and boundary jets are computed on ``parent`` and carried over; the radial
    function about the new base point is evaluated by ray exits and differenced. The identity
    carry-over implements recentering; subclasses override the three ``_`` hooks.
    """

    orientation = 1

    def __init__(self, parent, base_point, reference_angle=0.0, preset_tag=None):
        self.parent = parent
        profile = CallableProfile(self._radial_values)
        super(DerivedDomain2, self).__init__(
            base_point,
            profile,
            reference_angle,
            preset_tag or parent.preset_tag,
            validate=True,
            samples=parent._samples,
        )

    def _to_parent(self, x, y=None):
        x = np.asarray(x, dtype=float)
        return (x, None if y is None else np.asarray(y, dtype=float))

    def _from_parent(self, points):
        return np.asarray(points, dtype=float)

    def _push_jet(self, jet):
        return jet

    def _setup(self, validate):
        jets = self.sample_boundary(self._samples)
        if validate:
            curvature = cross2(jets[1], jets[2])
            if np.any(curvature <= 0):
                i = int(np.argmin(curvature))
                raise NonConvexDomainError(
                    "mapped boundary is not strictly convex", self.angle_of(jets[0][i])
                )
        if not self.contains(self.base_point):
            raise DomainError("base point {0} is not interior".format(self.base_point.tolist()))
        self.diameter = float(np.linalg.norm(np.ptp(jets[0], axis=0)))
        self._extent = self.diameter

    def _radial_values(self, theta):
        theta = np.asarray(theta, dtype=float)
        flat = theta.reshape(-1)
        values = np.array([self.exit_parameter(self.base_point, unit(th)) for th in flat])
        return values.reshape(theta.shape)

    def _orient(self, jet):
        if self.orientation < 0:
            jet = jet.copy()
            jet[1::2] *= -1
        return jet

    def contains(self, x):
        try:
            xp, _ = self._to_parent(x)
        except HilbertLabError:
            return False
        return self.parent.contains(xp)

    def exit_parameter(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        xp, yp = self._to_parent(x, y)
        tp = self.parent.exit_parameter(xp, yp)
        exit_point = self._from_parent(xp + tp * yp)
        return float(np.dot(exit_point - x, y) / np.dot(y, y))

    def curve_jet_at(self, point, order=4):
        xp, _ = self._to_parent(point)
        return self._orient(self._push_jet(self.parent.curve_jet_at(xp, order)))

    def boundary_jet(self, phi, order=4):
        return self.curve_jet_at(self.boundary_point(phi), order)

    def sample_boundary(self, n=settings.CONVEXITY_SAMPLES, order=2):
        return self._orient(self._push_jet(self.parent.sample_boundary(n, order)))

    def rebased(self, reference_angle):
        return DerivedDomain2(self, self.base_point, reference_angle)


def _require_direction(y):
    y = np.asarray(y, dtype=float)
    if y.shape != (2,) or not np.all(np.isfinite(y)) or not np.any(y):
        raise InputError("direction must be a finite nonzero planar vector")
    return y


def boundary_point(domain, phi):
    return domain.boundary_point(phi)


def boundary_curvature(domain, phi):
    w = domain.radial(phi, order=2)
    value = (w[0] ** 2 + 2 * w[1] ** 2 - w[0] * w[2]) / (w[0] ** 2 + w[1] ** 2) ** 1.5
    if np.any(value <= 0):
        raise NonConvexDomainError("boundary curvature is not positive", phi)
    return float(value) if np.ndim(value) == 0 else value


def ray_exit(domain, x, y):
    y = _require_direction(y)
    x = np.asarray(x, dtype=float)
    t = domain.exit_parameter(x, y)
    return RayExit(t, x + t * y)


def chord(domain, x, y):
    y = _require_direction(y)
    x = np.asarray(x, dtype=float)
    forward = ray_exit(domain, x, y)
    backward = ray_exit(domain, x, -y)
    return ChordInfo(
        x_plus=forward.exit,
        x_minus=backward.exit,
        r_plus=float(np.linalg.norm(forward.exit - x)),
        r_minus=float(np.linalg.norm(backward.exit - x)),
    )


def graph_jet_from_curve(jet):
    """Graph derivatives of a counterclockwise boundary curve given its parameter jet."""
    jet = np.asarray(jet, dtype=float)
    e1 = jet[1] / np.linalg.norm(jet[1])
    e2 = rot90(e1)
    X = [float(np.dot(v, e1)) for v in jet]
    Y = [float(np.dot(v, e2)) for v in jet]
    nan = float("nan")
    f2 = Y[2] / X[1] ** 2
    f3 = (Y[3] - 3 * f2 * X[1] * X[2]) / X[1] ** 3 if len(jet) > 3 else nan
    f4 = nan
    if len(jet) > 4:
        f4 = (Y[4] - 6 * f3 * X[1] ** 2 * X[2] - f2 * (3 * X[2] ** 2 + 4 * X[1] * X[3])) / X[1] ** 4
    return BoundaryJet(point=jet[0], tangent=e1, normal=e2, f1=0.0, f2=f2, f3=f3, f4=f4)


def graph_jet(domain, phi):
    return graph_jet_from_curve(domain.boundary_jet(phi))


def graph_jet_at(domain, point):
    return graph_jet_from_curve(domain.curve_jet_at(point))


def outward_normals(jets):
    tangent = jets[1] / np.linalg.norm(jets[1], axis=-1, keepdims=True)
    return -rot90(tangent)


def angle_cosine_bound(domain, o):
    o = np.asarray(o, dtype=float)
    if not domain.contains(o):
        raise DomainError("point {0} is not strictly interior".format(o.tolist()))
    jets = domain.sample_boundary()
    radial = jets[0] - o
    dist = np.linalg.norm(radial, axis=-1)
    cosines = np.einsum("ij,ij->i", radial, outward_normals(jets)) / dist
    k_min = float(np.min(cross2(jets[1], jets[2]) / np.linalg.norm(jets[1], axis=-1) ** 3))

    i = int(np.argmin(dist))
    phi_star = domain.angle_of(jets[0][i])
    step = TWO_PI / len(dist)
    res = minimize_scalar(
        lambda p: float(np.linalg.norm(domain.boundary_point(p) - o)),
        bounds=(phi_star - 2 * step, phi_star + 2 * step),
        method="bounded",
        options={"xatol": 1e-10},
    )
    omega0 = min(float(dist[i]), float(res.fun))
    j = int(np.argmin(cosines))
    report = AngleBoundReport(
        min_cos=float(cosines[j]),
        phi_at_min=domain.angle_of(jets[0][j]) % TWO_PI,
        omega0=omega0,
        k_min=k_min,
    )
    if not report.holds:
        log.warning(
            "angle bound violated at phi=%.6f: %.12g < %.12g",
            report.phi_at_min, report.min_cos, report.bound,
        )
    return report


def recenter(domain, o, reference_angle):
    """The same domain described by its radial function about ``o``."""
    o = np.asarray(o, dtype=float)
    if not domain.contains(o):
        raise DomainError("point {0} is not strictly interior".format(o.tolist()))
    if np.allclose(o, domain.base_point, rtol=0.0, atol=1e-15):
        return domain.rebased(reference_angle)
    shape = getattr(domain.profile, "shape", None)
    if shape is not None and type(domain) is ConvexDomain2:
        profile = shape.profile_about(o)
        if profile is not None:
            return ConvexDomain2(o, profile, reference_angle, domain.preset_tag)
    return DerivedDomain2(domain, o, reference_angle)


def chord_through_boundary_point(domain, p, v):
    """Length of the chord through boundary point ``p`` entering along ``v``."""
    p = np.asarray(p, dtype=float)
    v = _require_direction(v)
    s = 0.5 * domain.diameter / float(np.linalg.norm(v))
    for _ in range(60):
        x = p + s * v
        if domain.contains(x):
            return chord(domain, x, v).length
        s *= 0.5
    raise SolverError("direction does not enter the domain at {0}".format(p.tolist()))


class ConvexBody3(object):
    """Spatial convex body given by its radial function about ``base_point``.

    ``radial`` maps unit direction vectors (shape ``(..., 3)``) to distances; quadric bodies
    also carry ``quadric = (M, center)`` so planar sections stay in closed form.
    """

    def __init__(self, base_point, radial, quadric=None, preset_tag="body"):
        self.base_point = np.array(base_point, dtype=float)
        self.radial = radial
        self.quadric = quadric
        self.preset_tag = preset_tag
        u = _fibonacci_sphere(512)
        values = np.asarray(radial(u), dtype=float)
        if np.any(values <= 0):
            raise DomainError("radial function of the body is not positive")
        self._extent = 1.01 * float(np.max(values))

    @staticmethod
    def direction(theta, phi):
        theta = np.asarray(theta, dtype=float)
        phi = np.asarray(phi, dtype=float)
        return np.stack(
            [np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)], axis=-1
        )

    def contains(self, x):
        r = np.asarray(x, dtype=float) - self.base_point
        dist = float(np.linalg.norm(r))
        return dist == 0.0 or dist < float(self.radial(r / dist))

    def exit_parameter(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        b = self.base_point

        def g(t):
            r = x + t * y - b
            dist = float(np.linalg.norm(r))
            if dist == 0.0:
                return -float(self._extent)
            return dist - float(self.radial(r / dist))

        if not g(0.0) < 0:
            raise DomainError("point {0} is not strictly interior".format(x.tolist()))
        t_hi = (float(np.linalg.norm(x - b)) + self._extent) / float(np.linalg.norm(y))
        lo, hi = 0.0, None
        for t in np.linspace(0.0, t_hi, settings.RAY_SCAN_SAMPLES + 1)[1:]:
            if g(t) > 0:
                hi = float(t)
                break
            lo = float(t)
        if hi is None:
            raise SolverError("ray does not leave the body", bracket=(0.0, t_hi))
        return brentq(
            g, lo, hi, xtol=settings.ROOT_XTOL_SCALE * t_hi, rtol=settings.ROOT_RTOL, maxiter=200
        )


def _fibonacci_sphere(n):
    i = np.arange(n) + 0.5
    z = 1.0 - 2.0 * i / n
    azimuth = np.pi * (1.0 + 5 ** 0.5) * i
    s = np.sqrt(1.0 - z * z)
    return np.column_stack([s * np.cos(azimuth), s * np.sin(azimuth), z])


def planar_section(body, o, span_u, span_v):
    """Section of ``body`` by the plane ``o + span(u, v)`` as a domain about ``o``.

    Plane coordinates use the orthonormalized frame ``(e1, e2)``; ``o`` maps to the origin.
    The returned domain carries ``embedding = (o, E)`` with ``E`` the 3x2 frame matrix.
    """
    o = np.asarray(o, dtype=float)
    u = np.asarray(span_u, dtype=float)
    v = np.asarray(span_v, dtype=float)
    nu, nv = np.linalg.norm(u), np.linalg.norm(v)
    if nu == 0 or nv == 0 or np.linalg.norm(np.cross(u, v)) < 1e-12 * nu * nv:
        raise InputError("section plane is degenerate: span vectors are dependent")
    e1 = u / nu
    w = v - np.dot(v, e1) * e1
    e2 = w / np.linalg.norm(w)
    E = np.column_stack([e1, e2])
    if not body.contains(o):
        raise DomainError("point {0} is not interior to the body".format(o.tolist()))

    if body.quadric is not None:
        M, center = (np.asarray(a, dtype=float) for a in body.quadric)
        A = E.T @ M @ E
        c2 = np.linalg.solve(A, -E.T @ M @ (o - center))
        X = o + E @ c2
        k = float((X - center) @ M @ (X - center)) - 1.0
        shape = ConicShape(A / (-k), c2)
        section = ConvexDomain2((0.0, 0.0), shape.profile_about((0.0, 0.0)), preset_tag="section")
    else:

        def omega(theta):
            theta = np.asarray(theta, dtype=float)
            dirs = np.cos(theta)[..., None] * e1 + np.sin(theta)[..., None] * e2
            flat = dirs.reshape(-1, 3)
            values = [body.exit_parameter(o, d) for d in flat]
            return np.array(values).reshape(theta.shape)

        section = ConvexDomain2(
            (0.0, 0.0), CallableProfile(omega), preset_tag="section", samples=256
        )
    section.embedding = (o, E)
    return section


def quadric_body(matrix, center, base_point=None, preset_tag="quadric"):
    base = np.asarray(center if base_point is None else base_point, dtype=float)

    def radial(directions):
        return quadric_radial(matrix, center, base, directions)

    return ConvexBody3(base, radial, quadric=(np.asarray(matrix, float), np.asarray(center, float)),
                       preset_tag=preset_tag)
