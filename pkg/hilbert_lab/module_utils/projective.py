"""Projective maps of the plane and the three-step normalization at a boundary point.

After normalization the distinguished point p sits at the origin, the x1 axis is tangent to
the boundary there, x2 points inside, the segment p -> o lies on the x2 axis, the tangent at
the opposite end of that chord is horizontal and the boundary curvature at p equals 1/2.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import comb

import numpy as np

from hilbert_lab.module_utils.convex_geometry import (
    DerivedDomain2,
    cross2,
    graph_jet_at,
    graph_jet_from_curve,
)
from hilbert_lab.module_utils.errors import (
    DomainError,
    HorizonError,
    InputError,
    NormalizationError,
)

log = logging.getLogger(__name__)

HORIZON_TOL = 1e-14


@dataclass(frozen=True)
class ProjectiveMap2:
    """Homogeneous 3x3 matrix acting on ``(x1, x2, 1)``."""

    matrix: np.ndarray
    inverse: np.ndarray

    @classmethod
    def from_matrix(cls, matrix, inverse=None):
        matrix = np.array(matrix, dtype=float)
        if inverse is None:
            inverse = np.linalg.inv(matrix)
        return cls(matrix, np.array(inverse, dtype=float))

    @classmethod
    def identity(cls):
        return cls(np.eye(3), np.eye(3))

    def _act(self, m, x):
        x = np.asarray(x, dtype=float)
        v = x @ m[:2, :2].T + m[:2, 2]
        w = x @ m[2, :2] + m[2, 2]
        scale = np.maximum(1.0, np.max(np.abs(v), axis=-1))
        if np.any(np.abs(w) <= HORIZON_TOL * scale):
            raise HorizonError("projective denominator vanishes at {0}".format(x.tolist()))
        return v / np.asarray(w)[..., None]

    def apply(self, x):
        return self._act(self.matrix, x)

    def apply_inverse(self, x):
        return self._act(self.inverse, x)

    def inverted(self):
        return ProjectiveMap2(self.inverse, self.matrix)

    def compose(self, other):
        """``self`` after ``other``."""
        return ProjectiveMap2(self.matrix @ other.matrix, other.inverse @ self.inverse)

    def denominator(self, x):
        return np.asarray(x, dtype=float) @ self.matrix[2, :2] + self.matrix[2, 2]

    def jacobian(self, x):
        x = np.asarray(x, dtype=float)
        m = self.matrix
        v = m[:2, :2] @ x + m[:2, 2]
        w = float(m[2, :2] @ x + m[2, 2])
        return (m[:2, :2] * w - np.outer(v, m[2, :2])) / w ** 2

    def push_curve_jet(self, jet):
        """Parameter derivatives of ``P(c(s))`` from those of ``c``; shape ``(k+1, ..., 2)``."""
        jet = np.asarray(jet, dtype=float)
        m = self.matrix
        numer = [jet[j] @ m[:2, :2].T for j in range(len(jet))]
        denom = [jet[j] @ m[2, :2] for j in range(len(jet))]
        numer[0] = numer[0] + m[:2, 2]
        denom[0] = denom[0] + m[2, 2]
        out = []
        for n in range(len(jet)):
            acc = numer[n]
            for j in range(n):
                acc = acc - comb(n, j) * out[j] * denom[n - j][..., None]
            out.append(acc / denom[0][..., None])
        return np.stack(out)


def apply_map(pmap, x):
    return pmap.apply(x)


def step1_shear(alpha):
    alpha = float(alpha)
    if not abs(alpha) < np.pi / 2:
        raise InputError("shear angle must satisfy |alpha| < pi/2, got {0}".format(alpha))
    t = np.tan(alpha)
    c = np.cos(alpha)
    matrix = np.array([[1.0, -t, 0.0], [0.0, 1.0 / c, 0.0], [0.0, 0.0, 1.0]])
    inverse = np.array([[1.0, t * c, 0.0], [0.0, c, 0.0], [0.0, 0.0, 1.0]])
    return ProjectiveMap2(matrix, inverse)


def step2_projective(tan_beta, H):
    tan_beta, H = float(tan_beta), float(H)
    if not H > 0:
        raise InputError("chord length H must be positive, got {0}".format(H))
    matrix = np.array([[H, 0.0, 0.0], [0.0, H, 0.0], [-tan_beta, 0.0, H]])
    inverse = np.array([[H, 0.0, 0.0], [0.0, H, 0.0], [tan_beta, 0.0, H]]) / H ** 2
    return ProjectiveMap2(matrix, inverse)


def step3_scale(omega_u, kbar0):
    omega_u, kbar0 = float(omega_u), float(kbar0)
    if not (omega_u > 0 and kbar0 > 0):
        raise InputError("step 3 needs positive omega_u and curvature")
    sy = 1.0 / (2.0 * omega_u ** 2 * kbar0)
    matrix = np.diag([1.0 / omega_u, sy, 1.0])
    inverse = np.diag([omega_u, 1.0 / sy, 1.0])
    return ProjectiveMap2(matrix, inverse)


def euclidean_frame(origin, e1, e2):
    """Rigid map sending ``origin`` to 0 and ``(e1, e2)`` to the coordinate axes."""
    R = np.array([e1, e2], dtype=float)
    matrix = np.eye(3)
    matrix[:2, :2] = R
    matrix[:2, 2] = -R @ np.asarray(origin, dtype=float)
    inverse = np.eye(3)
    inverse[:2, :2] = R.T
    inverse[:2, 2] = np.asarray(origin, dtype=float)
    return ProjectiveMap2(matrix, inverse)


def third_derivative_shift(f3, k0, tan_beta, H):
    if not H > 0:
        raise InputError("chord length H must be positive, got {0}".format(H))
    return f3 - tan_beta * k0 / H


class ProjectiveImageDomain(DerivedDomain2):
    """Image ``P(U)`` of a domain; queries are pulled back to ``U`` and pushed forward."""

    def __init__(self, parent, pmap, base_point, reference_angle=0.0, preset_tag=None):
        self.map = pmap
        w = pmap.denominator(parent.sample_boundary(order=0)[0])
        if not (np.all(w > 0) or np.all(w < 0)):
            raise HorizonError("projective horizon line crosses the domain")
        det = np.linalg.det(pmap.jacobian(parent.base_point))
        self.orientation = 1 if det > 0 else -1
        super(ProjectiveImageDomain, self).__init__(
            parent, base_point, reference_angle, preset_tag or parent.preset_tag
        )

    def _to_parent(self, x, y=None):
        xp = self.map.apply_inverse(x)
        if y is None:
            return xp, None
        return xp, self.map.inverted().jacobian(x) @ np.asarray(y, dtype=float)

    def _from_parent(self, points):
        return self.map.apply(points)

    def _push_jet(self, jet):
        return self.map.push_curve_jet(jet)


@dataclass(frozen=True)
class NormalizationReport:
    alpha: float
    tan_beta: float
    omega_u: float
    H: float
    kbar0: float
    ktilde0: float
    curvature_max: float
    curvature_min: float
    f1_normalized: float
    f2_normalized: float
    f3_normalized: float
    f4_normalized: float
    f3_tilde: float
    f3_bar: float
    f3_bar_shift: float
    k_tilde_min: float
    omega_tilde0: float
    tan_beta_bound: float
    omega_hat0: float
    opposite_tangent_angle: float
    fixed_point_error: float
    steps: dict = field(default_factory=dict, compare=False, repr=False)

    def as_dict(self):
        out = dict((k, v) for k, v in self.__dict__.items() if k != "steps")
        out["steps"] = dict((k, v.matrix.tolist()) for k, v in self.steps.items())
        return out


def _curvatures(jets):
    return cross2(jets[1], jets[2]) / np.linalg.norm(jets[1], axis=-1) ** 3


def normalize(domain, o, phi_p):
    """Compose the normalization P at ``p = boundary_point(domain, phi_p)`` seen from ``o``.

    Returns ``(P, normalized_domain, report)``; coordinates after P are the p-centered frame.
    """
    o = np.asarray(o, dtype=float)
    if not domain.contains(o):
        raise DomainError("point {0} is not strictly interior".format(o.tolist()))
    p = domain.boundary_point(phi_p)
    jet_p = domain.boundary_jet(phi_p)
    at_p = graph_jet_from_curve(jet_p)
    frame = euclidean_frame(p, at_p.tangent, at_p.normal)

    o_frame = frame.apply(o)
    alpha = float(np.arctan2(o_frame[0], o_frame[1]))
    omega_u = float(np.linalg.norm(o_frame))
    S1 = step1_shear(alpha)
    T1 = S1.compose(frame)

    u = o - p
    q = o + domain.exit_parameter(o, u) * u
    H = float(np.linalg.norm(q - p))
    jet_q = domain.curve_jet_at(q)
    tangent_q = T1.push_curve_jet(jet_q)[1]
    tan_beta = float(-tangent_q[1] / tangent_q[0])

    boundary = domain.sample_boundary()
    tilde = T1.push_curve_jet(boundary)
    if np.any(H - tan_beta * tilde[0][:, 0] <= 0):
        raise HorizonError("step 2 horizon line meets the domain (tan_beta={0})".format(tan_beta))
    at_p_tilde = graph_jet_from_curve(T1.push_curve_jet(jet_p))
    k_tilde_min = float(np.min(_curvatures(tilde)))
    omega_tilde0 = float(np.min(np.linalg.norm(tilde[0] - np.array([0.0, omega_u]), axis=-1)))
    product = k_tilde_min * omega_tilde0
    tan_beta_bound = float(np.sqrt(max(1.0 / product ** 2 - 1.0, 0.0)))

    S2 = step2_projective(tan_beta, H)
    T2 = S2.compose(T1)
    at_p_bar = graph_jet_from_curve(T2.push_curve_jet(jet_p))
    kbar0 = at_p_bar.f2
    S3 = step3_scale(omega_u, kbar0)
    P = S3.compose(T2)

    o_hat = P.apply(o)
    image = ProjectiveImageDomain(
        domain,
        P,
        base_point=o_hat,
        reference_angle=float(np.arctan2(-o_hat[1], -o_hat[0])),
        preset_tag="{0}/normalized".format(domain.preset_tag),
    )
    origin = P.apply(p)
    at_origin = graph_jet_at(image, origin)
    tangent_hat_q = P.push_curve_jet(jet_q)[1]
    curvature = _curvatures(image.sample_boundary())

    report = NormalizationReport(
        alpha=alpha,
        tan_beta=tan_beta,
        omega_u=omega_u,
        H=H,
        kbar0=kbar0,
        ktilde0=at_p_tilde.f2,
        curvature_max=float(np.max(curvature)),
        curvature_min=float(np.min(curvature)),
        f1_normalized=float(at_origin.tangent[1] / at_origin.tangent[0]),
        f2_normalized=at_origin.f2,
        f3_normalized=at_origin.f3,
        f4_normalized=at_origin.f4,
        f3_tilde=at_p_tilde.f3,
        f3_bar=at_p_bar.f3,
        f3_bar_shift=third_derivative_shift(at_p_tilde.f3, at_p_tilde.f2, tan_beta, H),
        k_tilde_min=k_tilde_min,
        omega_tilde0=omega_tilde0,
        tan_beta_bound=tan_beta_bound,
        omega_hat0=float(np.linalg.norm(o_hat - origin)),
        opposite_tangent_angle=float(
            abs(np.arctan2(tangent_hat_q[1], abs(tangent_hat_q[0])))
        ),
        fixed_point_error=float(np.linalg.norm(origin)),
        steps={"frame": frame, "step1": S1, "step2": S2, "step3": S3, "composed": P},
    )
    log.debug("normalization at phi_p=%s: %s", phi_p, report)
    if report.fixed_point_error > 1e-10:
        raise NormalizationError("P(p) = {0} is not the origin".format(origin.tolist()))
    if abs(report.f1_normalized) > 1e-8 or abs(report.f2_normalized - 0.5) > 1e-8:
        raise NormalizationError(
            "normalized jet check failed: f'={0:.3e}, f''={1:.12g}".format(
                report.f1_normalized, report.f2_normalized
            )
        )
    return P, image, report
