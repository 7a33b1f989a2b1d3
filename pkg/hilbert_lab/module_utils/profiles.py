"""Radial boundary functions.

A profile maps an absolute angle ``theta`` (about the domain's base point) to the stack
``[omega, omega', ..., omega^(order)]``. Presets build their profiles symbolically with sympy
and evaluate lambdified derivatives; everything else goes through central differences.
"""
import logging

import numpy as np
import sympy as sp

from hilbert_lab.module_utils.numdiff import derivative_stack

log = logging.getLogger(__name__)

THETA = sp.Symbol("theta", real=True)
MAX_ORDER = 4


class SymbolicProfile(object):
    """omega(theta) given as a sympy expression in ``THETA``."""

    def __init__(self, expr, shape=None, max_order=MAX_ORDER):
        self.expr = expr
        self.shape = shape
        self.max_order = max_order
        derivatives = [expr]
        for _ in range(max_order):
            derivatives.append(sp.diff(derivatives[-1], THETA))
        self._functions = [
            sp.lambdify(THETA, d, modules="numpy", cse=True) for d in derivatives
        ]

    def __call__(self, theta, order=0):
        if order > self.max_order:
            raise ValueError("derivatives above order {0} unavailable".format(self.max_order))
        theta = np.asarray(theta, dtype=float)
        out = np.empty((order + 1,) + theta.shape)
        for k in range(order + 1):
            out[k] = self._functions[k](theta)
        return out


class CallableProfile(object):
    """omega(theta) from a vectorized callable; derivatives by Richardson differences."""

    shape = None

    def __init__(self, func, max_order=MAX_ORDER):
        self.func = func
        self.max_order = max_order

    def __call__(self, theta, order=0):
        if order > self.max_order:
            raise ValueError("derivatives above order {0} unavailable".format(self.max_order))
        return derivative_stack(self.func, theta, order)


def _float_matrix(values):
    return sp.Matrix([[sp.Float(float(v)) for v in row] for row in values])


class ConicShape(object):
    """Ellipse ``(x - c)^T M (x - c) < 1``."""

    def __init__(self, matrix, center):
        self.matrix = np.array(matrix, dtype=float)
        self.center = np.array(center, dtype=float)
        if np.any(np.linalg.eigvalsh(self.matrix) <= 0):
            raise ValueError("conic matrix must be positive definite")

    def value(self, x):
        delta = np.asarray(x, dtype=float) - self.center
        return float(delta @ self.matrix @ delta) - 1.0

    def contains(self, x):
        return self.value(x) < 0

    def profile_about(self, base):
        """Closed-form radial function about an interior ``base``."""
        base = np.asarray(base, dtype=float)
        delta = base - self.center
        d = sp.Matrix([sp.cos(THETA), sp.sin(THETA)])
        M = _float_matrix(self.matrix)
        a = (d.T * M * d)[0]
        if np.allclose(delta, 0.0, rtol=0.0, atol=1e-15):
            expr = 1 / sp.sqrt(a)
        else:
            e = self.value(base)
            if e >= 0:
                raise ValueError("base point {0} is not interior".format(base.tolist()))
            b = (_float_matrix([delta]) * M * d)[0]
            expr = (-b + sp.sqrt(b ** 2 - a * sp.Float(e))) / a
        log.debug("conic profile about %s: %s", base.tolist(), expr)
        return SymbolicProfile(expr, shape=self)


class FourierShape(object):
    """omega(theta) = a0 + sum a_n cos(n theta) + b_n sin(n theta) about ``center``."""

    def __init__(self, a0, cos_terms=None, sin_terms=None, center=(0.0, 0.0)):
        self.a0 = float(a0)
        self.cos_terms = dict((int(n), float(a)) for n, a in (cos_terms or {}).items())
        self.sin_terms = dict((int(n), float(b)) for n, b in (sin_terms or {}).items())
        self.center = np.array(center, dtype=float)

    def expression(self):
        expr = sp.Float(self.a0)
        for n, a in sorted(self.cos_terms.items()):
            expr += sp.Float(a) * sp.cos(n * THETA)
        for n, b in sorted(self.sin_terms.items()):
            expr += sp.Float(b) * sp.sin(n * THETA)
        return expr

    def profile_about(self, base):
        if not np.allclose(np.asarray(base, dtype=float), self.center, rtol=0.0, atol=1e-15):
            return None
        return SymbolicProfile(self.expression(), shape=self)


def quadric_radial(matrix, center, base, directions):
    """Distance from ``base`` to the quadric ``(x-c)^T M (x-c) = 1`` along unit ``directions``."""
    M = np.asarray(matrix, dtype=float)
    delta = np.asarray(base, dtype=float) - np.asarray(center, dtype=float)
    u = np.asarray(directions, dtype=float)
    a = np.einsum("...i,ij,...j->...", u, M, u)
    b = np.einsum("i,ij,...j->...", delta, M, u)
    e = float(delta @ M @ delta) - 1.0
    return (-b + np.sqrt(b * b - a * e)) / a
