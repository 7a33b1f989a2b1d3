"""Funk and Hilbert metrics of a convex planar domain.

``Theta(x, y) = |y| / |x - x_plus|`` with ``x_plus`` the exit of the ray ``x + t*y``; the
Hilbert metric is ``F = (Theta(x, y) + Theta(x, -y)) / 2``. Writing ``t(x, y)`` for the exit
parameter, ``Theta = 1/t`` and every derivative below comes from implicit differentiation of
``x + t*y in boundary`` in the tangent/inward-normal frame at the exit point.
"""
from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import IntegrationWarning, quad

from hilbert_lab.module_utils import settings
from hilbert_lab.module_utils.convex_geometry import _require_direction, graph_jet_at
from hilbert_lab.module_utils.errors import ConditioningError, DomainError, SolverError
from hilbert_lab.module_utils.numdiff import hessian

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class FunkJet:
    theta: float
    d_theta: np.ndarray
    dd_theta: np.ndarray
    t_plus: float
    d_t: np.ndarray
    dd_t: np.ndarray


@dataclass(frozen=True)
class SymMatrix2:
    g11: float
    g12: float
    g22: float

    @classmethod
    def from_array(cls, a):
        a = np.asarray(a, dtype=float)
        return cls(float(a[0, 0]), float(0.5 * (a[0, 1] + a[1, 0])), float(a[1, 1]))

    def as_array(self):
        return np.array([[self.g11, self.g12], [self.g12, self.g22]])

    def form(self, u, v):
        return float(np.asarray(u, dtype=float) @ self.as_array() @ np.asarray(v, dtype=float))

    @property
    def det(self):
        return self.g11 * self.g22 - self.g12 ** 2

    def eigenvalues(self):
        return np.linalg.eigvalsh(self.as_array())

    def is_positive_definite(self):
        return self.g11 > 0 and self.det > 0


def exit_parameter_derivatives(f1, f2, eta):
    """First and second derivatives of the exit parameter in a boundary graph frame.

    The boundary is ``xi2 = f(xi1)`` near the exit, ``f1``/``f2`` its slope and second
    derivative there and ``eta`` the ray direction in the same frame.
    """
    e1, e2 = float(eta[0]), float(eta[1])
    den = e2 - e1 * f1
    if abs(den) < settings.TANGENCY_FLOOR * float(np.hypot(e1, e2)):
        raise ConditioningError("ray is tangent to the boundary at its exit point")
    t1 = f1 / den
    t2 = -1.0 / den
    grad = np.array([t1, t2])
    a = 1.0 + e1 * t1
    b = e1 * t2
    hess = f2 / den * np.array([[a * a, a * b], [a * b, b * b]])
    return grad, hess


def _check_floor(domain, x, r_plus, r_minus):
    floor = settings.NEAR_BOUNDARY_FLOOR * domain.diameter
    if min(r_plus, r_minus) < floor:
        raise ConditioningError(
            "point {0} is within {1:.3g} of the boundary along the chord".format(
                np.asarray(x).tolist(), min(r_plus, r_minus)
            )
        )


def _interior(domain, x):
    x = np.asarray(x, dtype=float)
    if not domain.contains(x):
        raise DomainError("point {0} is not strictly interior".format(x.tolist()))
    return x


def funk(domain, x, y):
    y = _require_direction(y)
    x = _interior(domain, x)
    return 1.0 / domain.exit_parameter(x, y)


def hilbert_norm(domain, x, y):
    y = _require_direction(y)
    x = _interior(domain, x)
    return 0.5 * (1.0 / domain.exit_parameter(x, y) + 1.0 / domain.exit_parameter(x, -y))


def _exit_derivatives(domain, x, y, t):
    """Gradient and Hessian in ``x`` of the exit parameter ``t(x, y)``."""
    jet = graph_jet_at(domain, x + t * y)
    R = np.column_stack([jet.tangent, jet.normal])
    grad, hess = exit_parameter_derivatives(0.0, jet.f2, R.T @ y)
    return R @ grad, R @ hess @ R.T


def funk_jet(domain, x, y):
    y = _require_direction(y)
    x = _interior(domain, x)
    norm = float(np.linalg.norm(y))
    t = domain.exit_parameter(x, y)
    t_back = domain.exit_parameter(x, -y)
    _check_floor(domain, x, t * norm, t_back * norm)
    d_t, dd_t = _exit_derivatives(domain, x, y, t)
    theta = 1.0 / t
    d_theta = -d_t / t ** 2
    dd_theta = (2.0 * np.outer(d_t, d_t) - t * dd_t) / t ** 3
    return FunkJet(theta, d_theta, 0.5 * (dd_theta + dd_theta.T), t, d_t, dd_t)


def okada_residual(domain, x, y):
    """``Theta_x - Theta*Theta_y``, scaled by ``max(1, |Theta_x|)``."""
    y = _require_direction(y)
    jet = funk_jet(domain, x, y)
    h = settings.EPS ** (1.0 / 3.0) * float(np.linalg.norm(y))
    d_y = np.array(
        [(funk(domain, x, y + h * e) - funk(domain, x, y - h * e)) / (2 * h) for e in np.eye(2)]
    )
    residual = jet.d_theta - jet.theta * d_y
    return residual / max(1.0, float(np.linalg.norm(jet.d_theta)))


def fundamental_tensor(domain, x, y):
    y = _require_direction(y)
    x = _interior(domain, x)
    norm = float(np.linalg.norm(y))
    t_plus = domain.exit_parameter(x, y)
    t_minus = domain.exit_parameter(x, -y)
    _check_floor(domain, x, t_plus * norm, t_minus * norm)
    dp, hp = _exit_derivatives(domain, x, y, t_plus)
    dm, hm = _exit_derivatives(domain, x, -y, t_minus)
    F = 0.5 * (1.0 / t_plus + 1.0 / t_minus)
    grad_F = 0.5 * (dm / t_minus - dp / t_plus)
    g = -0.5 * F * (hp + hm) + np.outer(grad_F, grad_F)
    return SymMatrix2.from_array(g)


def fundamental_tensor_fd(domain, x, y):
    """Hessian in ``y`` of ``F^2/2`` by central differences."""
    y = _require_direction(y)
    x = _interior(domain, x)
    h = 2.0 * settings.EPS ** 0.25 * float(np.linalg.norm(y))

    def energy(v):
        return 0.5 * hilbert_norm(domain, x, v) ** 2

    return SymMatrix2.from_array(hessian(energy, y, h))


def hilbert_distance(domain, a, b):
    a = _interior(domain, a)
    b = _interior(domain, b)
    y = b - a
    if not np.any(y):
        return 0.0
    t_plus = domain.exit_parameter(a, y)
    t_minus = domain.exit_parameter(a, -y)
    return 0.5 * (np.log1p(1.0 / t_minus) + np.log1p(1.0 / (t_plus - 1.0)))


def distance_by_quadrature(domain, a, b):
    a = _interior(domain, a)
    b = _interior(domain, b)
    y = b - a
    if not np.any(y):
        return 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("error", IntegrationWarning)
        try:
            value, abserr = quad(
                lambda s: hilbert_norm(domain, a + s * y, y),
                0.0,
                1.0,
                epsabs=settings.QUADRATURE_EPSABS,
                epsrel=settings.QUADRATURE_EPSREL,
                limit=200,
            )
        except IntegrationWarning as err:
            raise SolverError("distance quadrature did not converge: {0}".format(err))
    log.debug("quadrature distance %s -> %s: %.15g (+- %.2g)", a, b, value, abserr)
    return value
