"""Shared helpers for the test suite: small oracles and generators."""

import math
import random

from latref import make_decomposition
from latref.exact import IntMatrix, RankError
from latref.knapsack import ValidationError


def representable_sieve(a, limit):
    """Boolean reachability table; intentionally not the residue method."""
    table = [False] * (limit + 1)
    table[0] = True
    for v in range(1, limit + 1):
        table[v] = any(v >= ai and table[v - ai] for ai in a)
    return table


def random_decomposition(rng, n=None):
    """Random valid decomposition with positive entries bounded by 60."""
    while True:
        k = n or rng.choice((3, 4, 5))
        p1 = tuple(rng.randint(-3, 4) for _ in range(k))
        p2 = tuple(rng.randint(-3, 4) for _ in range(k))
        m1 = rng.randint(1, 6)
        m2 = rng.randint(1, 4)
        a = tuple(m1 * u + m2 * v for u, v in zip(p1, p2))
        if not all(1 <= x <= 60 for x in a):
            continue
        if math.gcd(*a) != 1:
            continue
        try:
            return make_decomposition(a, p1, p2, m1, m2)
        except (ValidationError, RankError):
            continue


def hnf_oracle(a):
    """Column-style HNF by plain Euclidean elimination, kept deliberately
    different from the library routine: pivot by repeated subtraction."""
    m, n = a.rows, a.cols
    cols = [list(c) for c in a.col_list()]
    row = 0
    piv = 0
    while row < m and piv < n:
        live = [j for j in range(piv, n) if cols[j][row] != 0]
        if not live:
            row += 1
            continue
        while len(live) > 1:
            live.sort(key=lambda j: abs(cols[j][row]))
            j0 = live[0]
            for j in live[1:]:
                q = cols[j][row] // cols[j0][row]
                for i in range(m):
                    cols[j][i] -= q * cols[j0][i]
            live = [j for j in live if cols[j][row] != 0]
        j0 = live[0]
        cols[piv], cols[j0] = cols[j0], cols[piv]
        if cols[piv][row] < 0:
            cols[piv] = [-x for x in cols[piv]]
        for j in range(piv):
            q = cols[j][row] // cols[piv][row]
            for i in range(m):
                cols[j][i] -= q * cols[piv][i]
        row += 1
        piv += 1
    return IntMatrix.from_cols(cols, rows=m)
