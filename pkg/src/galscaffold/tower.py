"""Two-step Artin-Schreier towers over an arbitrary coefficient ring.

The tower is K_1 = R[x1]/(x1^p - x1 - beta1) and K_2 = K_1[y]/(y^p - y - P)
with P in K_1.  The top generator ``y`` is x_2 for the numeric extensions
and X_2 for the symbolic certifications; both only need

    sigma_1: x1 -> x1 + 1, y -> y + A     (A in K_1)
    sigma_2: x1 -> x1,     y -> y + 1.

Coefficients can be any commutative ring element supporting ``+``, ``-``,
``*`` and multiplication by Python ints, with characteristic p.
"""

from __future__ import annotations

import math
from functools import cached_property
from typing import Sequence


def _binom_table(p: int) -> list[list[int]]:
    return [[math.comb(i, k) % p for k in range(p)] for i in range(p)]


class K1Element:
    __slots__ = ("tower", "c")

    def __init__(self, tower: "ASTower", coeffs: Sequence):
        self.tower = tower
        self.c = tuple(coeffs)
        if len(self.c) != tower.p:
            raise ValueError("K1 element needs exactly p coefficients")

    def __add__(self, other):
        if isinstance(other, K1Element):
            return K1Element(self.tower, [a + b for a, b in zip(self.c, other.c)])
        return self + self.tower.k1_scalar(other)

    __radd__ = __add__

    def __neg__(self):
        return K1Element(self.tower, [-a for a in self.c])

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, K1Element):
            return self.tower.k1_mul(self, other)
        if isinstance(other, K2Element):
            return NotImplemented
        return K1Element(self.tower, [a * other for a in self.c])

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = self.tower.k1_one
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, K1Element):
            return NotImplemented
        return self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        return f"K1({list(self.c)!r})"


class K2Element:
    __slots__ = ("tower", "c")

    def __init__(self, tower: "ASTower", coeffs: Sequence[K1Element]):
        self.tower = tower
        self.c = tuple(coeffs)
        if len(self.c) != tower.p:
            raise ValueError("K2 element needs exactly p K1 coefficients")

    def coeff(self, i: int, j: int):
        """Coefficient of y^i x1^j."""
        return self.c[i].c[j]

    def grid(self) -> list[list]:
        return [list(k1.c) for k1 in self.c]

    def __add__(self, other):
        if isinstance(other, K2Element):
            return K2Element(self.tower, [a + b for a, b in zip(self.c, other.c)])
        return self + self.tower.lift(other)

    __radd__ = __add__

    def __neg__(self):
        return K2Element(self.tower, [-a for a in self.c])

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, K2Element):
            return self.tower.k2_mul(self, other)
        if isinstance(other, K1Element):
            return self.tower.k2_mul(self, self.tower.lift(other))
        return K2Element(self.tower, [a * other for a in self.c])

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = self.tower.one
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, K2Element):
            return NotImplemented
        return self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        return f"K2({[list(k.c) for k in self.c]!r})"


class ASTower:
    """Arithmetic and Galois action on a two-step Artin-Schreier tower."""

    def __init__(self, p: int, ring_one, beta1, top_wp: Sequence, sigma1_shift: Sequence | None):
        self.p = p
        self.ring_one = ring_one
        self.ring_zero = ring_one * 0
        self.beta1 = beta1
        self._binom = _binom_table(p)
        self.top_wp = K1Element(self, top_wp)
        self.sigma1_shift = None if sigma1_shift is None else K1Element(self, sigma1_shift)

    # -- constructors ---------------------------------------------------
    def k1_scalar(self, r) -> K1Element:
        z = self.ring_zero
        return K1Element(self, [self.ring_one * r if isinstance(r, int) else r] + [z] * (self.p - 1))

    def k1(self, coeffs: Sequence) -> K1Element:
        return K1Element(self, coeffs)

    def lift(self, a) -> K2Element:
        if isinstance(a, K2Element):
            return a
        if not isinstance(a, K1Element):
            a = self.k1_scalar(a)
        zero = self.k1_zero
        return K2Element(self, [a] + [zero] * (self.p - 1))

    def k2(self, grid: Sequence[Sequence]) -> K2Element:
        """Element sum grid[i][j] y^i x1^j."""
        return K2Element(self, [K1Element(self, row) for row in grid])

    @cached_property
    def k1_zero(self) -> K1Element:
        return K1Element(self, [self.ring_zero] * self.p)

    @cached_property
    def k1_one(self) -> K1Element:
        return self.k1_scalar(self.ring_one)

    @cached_property
    def zero(self) -> K2Element:
        return self.lift(self.k1_zero)

    @cached_property
    def one(self) -> K2Element:
        return self.lift(self.k1_one)

    @cached_property
    def x1_k1(self) -> K1Element:
        z, o = self.ring_zero, self.ring_one
        return K1Element(self, [z, o] + [z] * (self.p - 2))

    @cached_property
    def x1(self) -> K2Element:
        return self.lift(self.x1_k1)

    @cached_property
    def top(self) -> K2Element:
        zero = self.k1_zero
        return K2Element(self, [zero, self.k1_one] + [zero] * (self.p - 2))

    # -- multiplication -------------------------------------------------
    def k1_mul(self, a: K1Element, b: K1Element) -> K1Element:
        p = self.p
        prod = [None] * (2 * p - 1)
        for i, ai in enumerate(a.c):
            for j, bj in enumerate(b.c):
                term = ai * bj
                k = i + j
                prod[k] = term if prod[k] is None else prod[k] + term
        # x1^(p+k) = x1^(k+1) + beta1 x1^k
        for d in range(2 * p - 2, p - 1, -1):
            cd = prod[d]
            prod[d - p + 1] = prod[d - p + 1] + cd
            prod[d - p] = prod[d - p] + cd * self.beta1
        return K1Element(self, prod[:p])

    def k2_mul(self, a: K2Element, b: K2Element) -> K2Element:
        p = self.p
        prod: list = [None] * (2 * p - 1)
        for i, ai in enumerate(a.c):
            for j, bj in enumerate(b.c):
                term = self.k1_mul(ai, bj)
                k = i + j
                prod[k] = term if prod[k] is None else prod[k] + term
        # y^(p+k) = y^(k+1) + P y^k
        for d in range(2 * p - 2, p - 1, -1):
            cd = prod[d]
            prod[d - p + 1] = prod[d - p + 1] + cd
            prod[d - p] = prod[d - p] + self.k1_mul(cd, self.top_wp)
        return K2Element(self, prod[:p])

    # -- substitutions --------------------------------------------------
    def _shift_x1(self, a: K1Element) -> K1Element:
        """c(x1) -> c(x1 + 1)."""
        p, B = self.p, self._binom
        out = []
        for l in range(p):
            acc = self.ring_zero
            for j in range(l, p):
                if B[j][l]:
                    acc = acc + a.c[j] * B[j][l]
            out.append(acc)
        return K1Element(self, out)

    def shift_top(self, a: K2Element, shift: K1Element) -> K2Element:
        """sum c_i y^i -> sum c_i (y + shift)^i, reduced."""
        p, B = self.p, self._binom
        powers = [self.k1_one]
        for _ in range(p - 1):
            powers.append(self.k1_mul(powers[-1], shift))
        out = []
        for k in range(p):
            acc = self.k1_zero
            for i in range(k, p):
                if B[i][k]:
                    term = a.c[i] if i == k else self.k1_mul(a.c[i], powers[i - k])
                    acc = acc + term * B[i][k]
            out.append(acc)
        return K2Element(self, out)

    def _shift_top_by_one(self, a: K2Element) -> K2Element:
        p, B = self.p, self._binom
        out = []
        for k in range(p):
            acc = self.k1_zero
            for i in range(k, p):
                if B[i][k]:
                    acc = acc + a.c[i] * B[i][k]
            out.append(acc)
        return K2Element(self, out)

    def sigma1(self, a: K2Element) -> K2Element:
        shifted = K2Element(self, [self._shift_x1(c) for c in a.c])
        if self.sigma1_shift is None:
            return shifted
        return self.shift_top(shifted, self.sigma1_shift)

    def sigma1_k1(self, a: K1Element) -> K1Element:
        return self._shift_x1(a)

    def sigma2(self, a: K2Element) -> K2Element:
        return self._shift_top_by_one(a)

    def delta1(self, a: K2Element) -> K2Element:
        """(sigma_1 - 1) a."""
        return self.sigma1(a) - a

    def delta2(self, a: K2Element) -> K2Element:
        """(sigma_2 - 1) a."""
        return self.sigma2(a) - a

    def binomial(self, a: K2Element, i: int) -> K2Element:
        """binom(a, i) for 0 <= i < p."""
        out = self.one
        for k in range(i):
            out = out * (a - self.lift(self.ring_one * k))
        inv = pow(math.factorial(i) % self.p, self.p - 2, self.p)
        return out * inv

    def norm_to_k1(self, a: K2Element) -> K2Element:
        """prod_k sigma_2^k(a); lies in K_1."""
        out = a
        cur = a
        for _ in range(self.p - 1):
            cur = self.sigma2(cur)
            out = out * cur
        return out
