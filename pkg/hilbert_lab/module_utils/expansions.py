"""Small-x2 behaviour of the metric at ``(0, x2)`` on a normalized domain.

A normalized domain has the distinguished boundary point at the origin, boundary tangent
along x1, the interior above it and boundary curvature 1/2 there. Each check evaluates a
scaled quantity along a decreasing sequence of heights ``x2`` and extrapolates its limit.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from hilbert_lab.module_utils import settings
from hilbert_lab.module_utils.convex_geometry import chord_through_boundary_point, graph_jet_at
from hilbert_lab.module_utils.errors import InputError, NormalizationError, UnknownCheckError
from hilbert_lab.module_utils.finsler import fundamental_tensor, funk, hilbert_norm
from hilbert_lab.module_utils.report import DIAGNOSTIC, FAIL, PASS, SKIPPED

log = logging.getLogger(__name__)

LEADING_TOL = 0.01
COEFFICIENT_RTOL = 0.02
COEFFICIENT_ATOL = 1e-4
# extrapolated coefficients keep a remainder of order sqrt(x2) at the last height
COEFFICIENT_REMAINDER = 0.05
EXACT_TOL = 1e-9

HORIZONTAL = np.array([1.0, 0.0])
VERTICAL = np.array([0.0, 1.0])


@dataclass(frozen=True)
class NormalizedJet:
    H: float
    f3: float
    f4: float


@dataclass(frozen=True)
class ExpansionResult:
    check_id: str
    x2: tuple
    values: tuple
    expected: float
    limit: float
    order: float
    residual: float
    tolerance: float
    status: str
    detail: dict = field(default_factory=dict)

    @property
    def passed(self):
        return self.status != FAIL


def normalized_jet(domain):
    origin = np.zeros(2)
    jet = graph_jet_at(domain, origin)
    if np.linalg.norm(jet.point) > 1e-10:
        raise NormalizationError("origin is not on the boundary")
    if abs(jet.tangent[1]) > 1e-8 or jet.tangent[0] <= 0 or abs(jet.f2 - 0.5) > 1e-8:
        raise NormalizationError(
            "domain is not normalized at the origin (tangent={0}, f''={1:.12g})".format(
                jet.tangent.tolist(), jet.f2
            )
        )
    H = chord_through_boundary_point(domain, origin, VERTICAL)
    return NormalizedJet(H, jet.f3, jet.f4)


def extrapolate(values):
    """Aitken limit of a sequence sampled at geometrically shrinking heights.

    Returns ``(limit, order)`` with ``order`` the empirical decay exponent per decade.
    """
    values = np.asarray(values, dtype=float)
    if len(values) < 3:
        return float(values[-1]), float("nan")
    d1 = values[-2] - values[-3]
    d2 = values[-1] - values[-2]
    if abs(d2) <= 1e-14 * max(1.0, abs(values[-1])) or abs(d1 - d2) <= 1e-300:
        return float(values[-1]), float("nan")
    ratio = d1 / d2
    order = float(np.log10(abs(ratio))) if ratio > 0 else float("nan")
    return float(values[-1] - d2 ** 2 / (d2 - d1)), order


def _point(x2):
    return np.array([0.0, x2])


def _t_plus(domain, x2):
    return 1.0 / funk(domain, _point(x2), HORIZONTAL)


def _t_lead(domain, jet, x2):
    return _t_plus(domain, x2) / (2.0 * np.sqrt(x2))


def _t_x2coef(domain, jet, x2):
    return (_t_plus(domain, x2) - 2.0 * np.sqrt(x2)) / x2


def _f_lead(domain, jet, x2):
    return 2.0 * np.sqrt(x2) * hilbert_norm(domain, _point(x2), HORIZONTAL)


def _f_sqrt_coef(domain, jet, x2):
    u = np.sqrt(x2)
    return (hilbert_norm(domain, _point(x2), HORIZONTAL) - 0.5 / u) / u


def _thrazn(domain, jet, x2):
    x = _point(x2)
    return funk(domain, x, HORIZONTAL) - funk(domain, x, -HORIZONTAL)


def _g11_lead(domain, jet, x2):
    return 4.0 * x2 * fundamental_tensor(domain, _point(x2), HORIZONTAL).g11


def _g12_lead(domain, jet, x2):
    return 6.0 * x2 * fundamental_tensor(domain, _point(x2), HORIZONTAL).g12 / jet.f3


def _g22_lead(domain, jet, x2):
    return 4.0 * x2 ** 2 * fundamental_tensor(domain, _point(x2), HORIZONTAL).g22


def _vertical_norm(jet, x2):
    return 0.5 * (1.0 / (jet.H - x2) + 1.0 / x2)


def _f2_exact(domain, jet, x2):
    exact = _vertical_norm(jet, x2)
    return abs(hilbert_norm(domain, _point(x2), VERTICAL) - exact) / exact


def _garb_exact(domain, jet, x2):
    g = fundamental_tensor(domain, _point(x2), VERTICAL)
    exact = _vertical_norm(jet, x2) ** 2
    return max(abs(g.g22 - exact), abs(g.g12)) / exact


def _fl_lead(domain, jet, x2):
    return 4.0 * x2 * hilbert_norm(domain, _point(x2), np.array([-jet.f3, 0.5]))


# check id -> (evaluator, kind, expected value from the normalized jet)
EXPANSION_CHECKS = {
    "T_LEAD": (_t_lead, "leading", lambda j: 1.0),
    "T_X2COEF": (_t_x2coef, "coefficient", lambda j: -4.0 * j.f3 / 3.0),
    "F_LEAD": (_f_lead, "leading", lambda j: 1.0),
    "F_SQRT_COEF": (_f_sqrt_coef, "diagnostic", lambda j: 2.0 * j.f3 ** 2 / 9.0),
    "THRAZN": (_thrazn, "coefficient", lambda j: 2.0 * j.f3 / 3.0),
    "G11_LEAD": (_g11_lead, "leading", lambda j: 1.0),
    "G12_LEAD": (_g12_lead, "leading", lambda j: 1.0),
    "G22_LEAD": (_g22_lead, "leading", lambda j: 1.0),
    "F2_EXACT": (_f2_exact, "exact", lambda j: 0.0),
    "GARB_EXACT": (_garb_exact, "exact", lambda j: 0.0),
    "FL_LEAD": (_fl_lead, "leading", lambda j: 1.0),
}


def _check_sequence(x2_sequence):
    x2 = tuple(float(v) for v in x2_sequence)
    if not x2:
        raise InputError("x2 sequence is empty")
    if any(not (0 < v <= settings.EXPANSION_SAFE_MAX) for v in x2):
        raise InputError(
            "x2 values must lie in (0, {0}]".format(settings.EXPANSION_SAFE_MAX)
        )
    if any(b >= a for a, b in zip(x2, x2[1:])):
        raise InputError("x2 values must be strictly decreasing")
    return x2


def expansion_check(domain_normalized, check_id, x2_sequence=settings.EXPANSION_X2, jet=None):
    if check_id not in EXPANSION_CHECKS:
        raise UnknownCheckError("unknown expansion check {0!r}".format(check_id))
    x2 = _check_sequence(x2_sequence)
    if jet is None:
        jet = normalized_jet(domain_normalized)
    evaluate, kind, expected_of = EXPANSION_CHECKS[check_id]
    expected = float(expected_of(jet))
    detail = {"f3": jet.f3, "f4": jet.f4, "H": jet.H}

    if check_id == "G12_LEAD" and abs(jet.f3) < 1e-8:
        nan = float("nan")
        return ExpansionResult(check_id, x2, (), expected, nan, nan, nan, nan, SKIPPED,
                               dict(detail, reason="f''' vanishes at the origin"))

    values = tuple(float(evaluate(domain_normalized, jet, v)) for v in x2)
    if kind == "exact":
        limit, order = max(values), float("nan")
        tolerance = EXACT_TOL
        residual = limit
    else:
        limit, order = extrapolate(values)
        residual = abs(limit - expected)
        tolerance = LEADING_TOL
        if kind != "leading":
            tolerance = (
                COEFFICIENT_RTOL * abs(expected)
                + COEFFICIENT_ATOL
                + COEFFICIENT_REMAINDER * np.sqrt(x2[-1])
            )
    if kind == "diagnostic":
        status = DIAGNOSTIC
        detail["derived"] = -jet.f3 ** 2 / 3.0 + jet.f4 / 6.0
    else:
        status = PASS if residual <= tolerance else FAIL
    log.debug("%s: values=%s limit=%.12g expected=%.12g status=%s",
              check_id, values, limit, expected, status)
    return ExpansionResult(check_id, x2, values, expected, limit, order, residual, tolerance,
                           status, detail)
