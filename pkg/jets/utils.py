from functools import lru_cache
from math import comb, factorial

import numpy as np

NUM_VARIABLES = 4

# Variable order of the polarized coordinates.
Z, W, ZETA, OMEGA = range(NUM_VARIABLES)
VARIABLE_NAMES = ("z", "w", "zeta", "omega")


def jet_size(degree):
    """Number of monomials of total degree <= degree in four variables."""
    return comb(degree + NUM_VARIABLES, NUM_VARIABLES)


@lru_cache(maxsize=None)
def multi_indices(degree):
    """
    Graded ordering of the exponent tuples (a, b, c, d) with a+b+c+d <= degree.

    Because the ordering is graded, the table for a lower degree is a prefix of
    the table for a higher one, so truncation is a slice.
    """
    rows = []
    for total in range(degree + 1):
        for a in range(total, -1, -1):
            for b in range(total - a, -1, -1):
                for c in range(total - a - b, -1, -1):
                    rows.append((a, b, c, total - a - b - c))
    table = np.array(rows, dtype=np.int64).reshape(-1, NUM_VARIABLES)
    table.setflags(write=False)
    return table


@lru_cache(maxsize=None)
def rank_lookup(degree):
    return {tuple(int(e) for e in row): pos for pos, row in enumerate(multi_indices(degree))}


@lru_cache(maxsize=None)
def product_table(degree):
    """
    Index triples (i, j, k) with multi_indices[i] + multi_indices[j] ==
    multi_indices[k] and total degree <= degree.
    """
    table = multi_indices(degree)
    lookup = rank_lookup(degree)
    totals = table.sum(axis=1)
    left, right, target = [], [], []
    for i, alpha in enumerate(table):
        for j in np.nonzero(totals <= degree - totals[i])[0]:
            left.append(i)
            right.append(j)
            target.append(lookup[tuple(int(e) for e in alpha + table[j])])
    arrays = tuple(np.array(values, dtype=np.int64) for values in (left, right, target))
    for array in arrays:
        array.setflags(write=False)
    return arrays


@lru_cache(maxsize=None)
def derivative_table(degree, index):
    """
    Source positions (in the degree table) and exponent factors producing the
    partial derivative in variable `index`, laid out in the degree-1 table.
    """
    lookup = rank_lookup(degree)
    source, factor = [], []
    for beta in multi_indices(degree - 1):
        alpha = tuple(int(e) + (1 if v == index else 0) for v, e in enumerate(beta))
        source.append(lookup[alpha])
        factor.append(alpha[index])
    source = np.array(source, dtype=np.int64)
    factor = np.array(factor, dtype=np.float64)
    source.setflags(write=False)
    factor.setflags(write=False)
    return source, factor


@lru_cache(maxsize=None)
def factorial_weights(degree):
    """alpha! for every multi-index, turning coefficients into derivatives."""
    weights = np.array(
        [np.prod([factorial(int(e)) for e in alpha]) for alpha in multi_indices(degree)],
        dtype=np.float64,
    )
    weights.setflags(write=False)
    return weights


def normalize_multi_index(multi_index):
    alpha = tuple(int(e) for e in multi_index)
    if len(alpha) != NUM_VARIABLES or any(e < 0 for e in alpha):
        raise ValueError(f"multi-index must be four non-negative integers, got {multi_index!r}")
    return alpha
