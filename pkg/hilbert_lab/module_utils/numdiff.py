"""Central finite differences used where no closed form is available."""
import numpy as np

from hilbert_lab.module_utils.settings import EPS

# second order central stencils, offsets in units of the step
CENTRAL_STENCILS = {
    1: ((-1, 1), (-0.5, 0.5)),
    2: ((-1, 0, 1), (1.0, -2.0, 1.0)),
    3: ((-2, -1, 1, 2), (-0.5, 1.0, -1.0, 0.5)),
    4: ((-2, -1, 0, 1, 2), (1.0, -4.0, 6.0, -4.0, 1.0)),
}


def default_step(order, scale=1.0):
    """Step balancing truncation and rounding for one Richardson level."""
    return max(1e-4, EPS ** (1.0 / (order + 4))) * scale


def central_derivative(f, x, order, h=None, scale=1.0, richardson=True):
    """Derivative of ``f`` at ``x`` (scalar or array, ``f`` vectorized) of order 1..4."""
    if order not in CENTRAL_STENCILS:
        raise ValueError("unsupported derivative order {0}".format(order))
    offsets, weights = CENTRAL_STENCILS[order]
    x = np.asarray(x, dtype=float)
    if h is None:
        h = default_step(order, scale)

    def estimate(step):
        total = 0.0
        for k, w in zip(offsets, weights):
            total = total + w * np.asarray(f(x + k * step), dtype=float)
        return total / step ** order

    coarse = estimate(h)
    if not richardson:
        return coarse
    fine = estimate(h / 2.0)
    return (4.0 * fine - coarse) / 3.0


def derivative_stack(f, x, max_order, scale=1.0):
    """Array ``[f, f', ..., f^(max_order)]`` stacked along the first axis."""
    x = np.asarray(x, dtype=float)
    values = [np.asarray(f(x), dtype=float)]
    for order in range(1, max_order + 1):
        values.append(central_derivative(f, x, order, scale=scale))
    return np.stack([np.broadcast_to(v, np.shape(values[0])) for v in values])


def hessian(f, x0, h):
    """Second order central-difference Hessian of a scalar function."""
    x0 = np.asarray(x0, dtype=float)
    dim = len(x0)
    E = (h / 2.0) * np.eye(dim)
    f0 = f(x0)
    hess = np.zeros((dim, dim))
    for ii in range(dim):
        for jj in range(ii, dim):
            if ii == jj:
                pij = f(x0 + 2 * E[ii]) - 2 * f0 + f(x0 - 2 * E[ii])
            else:
                pij = f(x0 + E[ii] + E[jj])
                pij -= f(x0 + E[ii] - E[jj])
                pij -= f(x0 - E[ii] + E[jj])
                pij += f(x0 - E[ii] - E[jj])
            hess[ii, jj] = hess[jj, ii] = pij / h / h
    return hess
