"""Chern-Rund covariant derivative along planar curves and three curvatures of a curve.

``covariant_accel`` is the derivative in the curve's own parameter; ``arclength_accel`` is
the same quantity for the Finsler arc-length parametrization. Curvatures:

* normal: ``g_n(D, n)`` for a unit normal ``n``,
* Rund: ``F(c, D)``, i.e. the norm taken with reference vector ``D`` itself,
* Finsler: ``sqrt(g_v(D, D))`` with reference vector the unit velocity ``v``,

where ``D`` is the arc-length acceleration.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from hilbert_lab.module_utils import settings
from hilbert_lab.module_utils.convex_geometry import _require_direction, unit
from hilbert_lab.module_utils.errors import InputError, SolverError
from hilbert_lab.module_utils.finsler import fundamental_tensor, funk, hilbert_norm

log = logging.getLogger(__name__)

ARBITRARY = "arbitrary"
ARC_LENGTH = "arc_length"


@dataclass(frozen=True)
class CurveJet:
    c: np.ndarray
    c1: np.ndarray
    c2: np.ndarray
    parameter_tag: str = ARBITRARY

    def __post_init__(self):
        for name in ("c", "c1", "c2"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float))
        if not np.any(self.c1):
            raise InputError("curve velocity must be nonzero")

    def reparametrized(self, scale):
        """Jet of ``t -> c(scale * t)``."""
        return CurveJet(self.c, scale * self.c1, scale ** 2 * self.c2, ARBITRARY)


@dataclass(frozen=True)
class NormalVector:
    n: np.ndarray
    outward: bool = False
    residual: float = 0.0


def covariant_accel(domain, jet):
    drift = funk(domain, jet.c, jet.c1) - funk(domain, jet.c, -jet.c1)
    return jet.c2 + drift * jet.c1


def arclength_accel(domain, jet):
    accel = covariant_accel(domain, jet)
    F2 = hilbert_norm(domain, jet.c, jet.c1) ** 2
    g = fundamental_tensor(domain, jet.c, jet.c1)
    return (accel - g.form(accel, jet.c1) / F2 * jet.c1) / F2


def rund_curvature(domain, jet):
    accel = arclength_accel(domain, jet)
    if np.linalg.norm(accel) < settings.ZERO_ACCEL:
        return 0.0
    return hilbert_norm(domain, jet.c, accel)


def finsler_curvature(domain, jet):
    accel = arclength_accel(domain, jet)
    if np.linalg.norm(accel) < settings.ZERO_ACCEL:
        return 0.0
    g = fundamental_tensor(domain, jet.c, jet.c1)
    return float(np.sqrt(max(g.form(accel, accel), 0.0)))


def unit_normal(domain, x, y_tangent, center=None):
    """Unit vector ``n`` with ``g_n(y, n) = 0``.

    Without ``center`` the solution with ``(y, n)`` positively oriented is returned; with a
    center the one pointing away from it, flagged ``outward``.
    """
    x = np.asarray(x, dtype=float)
    y = _require_direction(y_tangent)
    base = float(np.arctan2(y[1], y[0]))

    def orthogonality(psi):
        v = unit(psi)
        return fundamental_tensor(domain, x, v).form(y, v)

    try:
        psi = brentq(orthogonality, base, base + np.pi, xtol=settings.NORMAL_XTOL, maxiter=200)
    except (RuntimeError, ValueError) as err:
        raise SolverError(
            "unit normal did not converge: {0}".format(err), bracket=(base, base + np.pi)
        )
    v = unit(psi)
    n = v / hilbert_norm(domain, x, v)
    outward = False
    if center is not None:
        outward = True
        if np.dot(n, x - np.asarray(center, dtype=float)) < 0:
            n = -n
    residual = fundamental_tensor(domain, x, n).form(y, n) / float(np.linalg.norm(y))
    return NormalVector(n, outward, float(residual))


def raw_normal_curvature(domain, jet, normal):
    accel = arclength_accel(domain, jet)
    return fundamental_tensor(domain, jet.c, normal.n).form(accel, normal.n)


def normal_curvature(domain, jet, normal):
    """Normal curvature, positive for spheres measured against their outward normal."""
    raw = raw_normal_curvature(domain, jet, normal)
    return -raw if normal.outward else raw
