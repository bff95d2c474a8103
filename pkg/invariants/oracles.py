"""
Finite-difference cross-checks for the jet-based A3 entries on the flat tube.

In polarized variables L-bar only moves (zeta, omega). On the flat tube its
flow is a rotation of (a, b) = (z - zeta, w - omega) by t/2, so
L-bar**k g(p) is the k-th t-derivative of g along that flow at t = 0.
"""

import math

import numpy as np

from .models import A3_SIZE


def _generators(a, b):
    rho_z, rho_w = -a / 2, -b / 2
    return (
        rho_w**3,
        rho_z * rho_w**2,
        rho_z**2 * rho_w,
        rho_z**3,
        -(a**2 + b**2) / 8,
    )


def flat_tube_flow(point, t):
    """(a, b) after flowing for time t along L-bar from the real point (z, w)."""
    z, w = point
    a0 = complex(z) - complex(z).conjugate()
    b0 = complex(w) - complex(w).conjugate()
    cos, sin = math.cos(t / 2), math.sin(t / 2)
    return a0 * cos + b0 * sin, -a0 * sin + b0 * cos


# Central difference stencils (offsets in units of h, weights, power of h).
STENCILS = {
    1: ((-1, 1), (-0.5, 0.5), 1),
    2: ((-1, 0, 1), (1.0, -2.0, 1.0), 2),
    3: ((-2, -1, 1, 2), (-0.5, 1.0, -1.0, 0.5), 3),
    4: ((-2, -1, 0, 1, 2), (1.0, -4.0, 6.0, -4.0, 1.0), 4),
}


def central_derivative(func, order, step, levels=2):
    """
    d^order/dt^order func at 0 by central differences at steps
    step, step/2, ..., refined with `levels` rounds of Richardson extrapolation.
    """
    if order == 0:
        return func(0.0)
    offsets, weights, power = STENCILS[order]

    def difference(h):
        return sum(wt * func(k * h) for k, wt in zip(offsets, weights)) / h**power

    table = [difference(step / 2**i) for i in range(levels + 1)]
    for level in range(1, levels + 1):
        factor = 4**level
        table = [(factor * fine - coarse) / (factor - 1) for coarse, fine in zip(table, table[1:])]
    return table[0]


def flow_derivatives_flat_tube(point, generator, orders=range(A3_SIZE), step=0.1, levels=2):
    """L-bar**k of one A3 generator (row index 0..4) at `point`, for each k in `orders`."""

    def along(t):
        return _generators(*flat_tube_flow(point, t))[generator]

    return [central_derivative(along, k, step, levels) for k in orders]


def finite_difference_a3(point, step=0.1, levels=2):
    return np.array(
        [flow_derivatives_flat_tube(point, row, step=step, levels=levels) for row in range(A3_SIZE)]
    )


def entrywise_disagreement(jet_entries, oracle_entries):
    """Largest entry difference, relative to the largest entry of its row."""
    jet_entries = np.asarray(jet_entries)
    scale = np.maximum(np.abs(jet_entries).max(axis=1, keepdims=True), np.finfo(float).tiny)
    return float((np.abs(jet_entries - oracle_entries) / scale).max())
