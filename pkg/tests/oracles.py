"""Independent reference computations used to cross-check the package.

Nothing here goes through the alpha-basis valuation rule, the group algebra
module or the integer d/w tables; each oracle recomputes its answer from
first principles (dict convolution, full Galois norms, brute force).
"""

from __future__ import annotations

import math

from galscaffold.series import LaurentSeries


def naive_mul(p: int, a: dict[int, int], b: dict[int, int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            out[e1 + e2] = (out.get(e1 + e2, 0) + c1 * c2) % p
    return {e: c for e, c in out.items() if c}


def all_galois_images(x, tower):
    """Every g(x), g in G, by repeated substitution (p^2 images)."""
    p = tower.p
    imgs = []
    row = x
    for _ in range(p):
        col = row
        for _ in range(p):
            imgs.append(col)
            col = tower.sigma2(col)
        row = tower.sigma1(row)
    return imgs


def norm_to_k0(x, tower) -> LaurentSeries:
    """N_{K_2/K_0}(x) as a series; it must have no x_1 or x_2 component."""
    prod = tower.one
    for img in all_galois_images(x, tower):
        prod = prod * img
    grid = prod.grid()
    for i, row in enumerate(grid):
        for j, c in enumerate(row):
            if (i, j) != (0, 0) and not c.is_zero():
                raise AssertionError("norm is not in K_0")
    return grid[0][0]


def valuation_by_norm(x, tower) -> int:
    """v_2(x) = v_0(N_{K_2/K_0}(x)) for a totally ramified extension."""
    v = norm_to_k0(x, tower).valuation()
    if v == math.inf:
        raise ValueError("zero element")
    return int(v)


def lower_break(sigma, pi, tower) -> int:
    """v_2(sigma(pi) - pi) - 1 for a uniformizer pi."""
    return valuation_by_norm(sigma(pi) - pi, tower) - 1


def brute_binomial_mod_p(n: int, k: int, p: int) -> int:
    return math.comb(n, k) % p


def free_by_minima(b1: int, b2: int, p: int) -> bool:
    """Cyclic reference: every difference d_{j+a} - d_a is at least d_j - d_0."""
    q = p * p

    def bb(a):
        a1, a0 = divmod(a, p)
        return (1 + a1) * b2 + a0 * p * b1

    d = [bb(a) // q for a in range(q)]
    return all(d[j + a] - d[a] >= d[j] - d[0] for j in range(q) for a in range(q - j))
