"""The group algebra K_0[G] for G = C_p x C_p or C_{p^2}, and the scaffold Psi_1, Psi_2.

Elements are stored on group elements sigma_2^a sigma_1^b, index n = a p + b.
For the cyclic group sigma_2 = sigma_1^p, so the same index is sigma_1^n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import HypothesisViolated
from .extension import ExtensionData, ExtensionKind
from .series import LaurentSeries, series_binomial
from .tower import K2Element


class GroupAlgebraElement:
    __slots__ = ("p", "kind", "coeffs")

    def __init__(self, p: int, kind: ExtensionKind, coeffs):
        self.p = p
        self.kind = ExtensionKind(kind)
        self.coeffs = tuple(coeffs)
        if len(self.coeffs) != p * p:
            raise ValueError("need p^2 coefficients")

    # -- constructors ---------------------------------------------------
    @classmethod
    def zero(cls, p, kind):
        z = LaurentSeries.zero(p)
        return cls(p, kind, [z] * (p * p))

    @classmethod
    def group_element(cls, p, kind, a: int, b: int, coeff=None):
        """coeff * sigma_2^a sigma_1^b."""
        kind = ExtensionKind(kind)
        if kind is ExtensionKind.CYCLIC:
            n = (a * p + b) % (p * p)
        else:
            n = (a % p) * p + (b % p)
        z = LaurentSeries.zero(p)
        c = [z] * (p * p)
        c[n] = LaurentSeries.one(p) if coeff is None else coeff
        return cls(p, kind, c)

    @classmethod
    def identity(cls, p, kind):
        return cls.group_element(p, kind, 0, 0)

    @classmethod
    def scalar(cls, p, kind, s: LaurentSeries):
        return cls.group_element(p, kind, 0, 0, s)

    @classmethod
    def sigma1(cls, p, kind):
        return cls.group_element(p, kind, 0, 1)

    @classmethod
    def sigma2(cls, p, kind):
        return cls.group_element(p, kind, 1, 0)

    # -- arithmetic -----------------------------------------------------
    def _check(self, other):
        if other.p != self.p or other.kind is not self.kind:
            raise ValueError("group algebra elements of different groups")

    def __add__(self, other):
        if not isinstance(other, GroupAlgebraElement):
            other = GroupAlgebraElement.scalar(self.p, self.kind, _as_series(self.p, other))
        self._check(other)
        return GroupAlgebraElement(self.p, self.kind, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return GroupAlgebraElement(self.p, self.kind, [-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, GroupAlgebraElement):
            return GroupAlgebraElement(self.p, self.kind, [a * other for a in self.coeffs])
        return ga_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = GroupAlgebraElement.identity(self.p, self.kind)
        for _ in range(n):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return self.p == other.p and self.kind is other.kind and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.p, self.kind, self.coeffs))

    def augmentation(self) -> LaurentSeries:
        """Image under the coefficient-sum map K_0[G] -> K_0."""
        total = LaurentSeries.zero(self.p)
        for c in self.coeffs:
            total = total + c
        return total

    def to_augmentation_basis(self) -> list[list[LaurentSeries]]:
        """Coefficients c[i][j] of (sigma_2 - 1)^i (sigma_1 - 1)^j.

        sigma_2^a sigma_1^b = sum binom(a, i) binom(b, j) (sigma_2-1)^i (sigma_1-1)^j;
        in the cyclic case this is Lucas' theorem applied to (1 + x)^(a p + b).
        """
        p = self.p
        zero = LaurentSeries.zero(p)
        out = [[zero] * p for _ in range(p)]
        for n, c in enumerate(self.coeffs):
            if c.is_zero() and c.is_exact:
                continue
            a, b = divmod(n, p)
            for i in range(a + 1):
                for j in range(b + 1):
                    k = math.comb(a, i) * math.comb(b, j) % p
                    if k:
                        out[i][j] = out[i][j] + c * k
        return out

    @classmethod
    def from_augmentation_basis(cls, p, kind, grid):
        zero = LaurentSeries.zero(p)
        coeffs = [zero] * (p * p)
        for i in range(p):
            for j in range(p):
                c = grid[i][j]
                if c.is_zero() and c.is_exact:
                    continue
                for a in range(i + 1):
                    for b in range(j + 1):
                        k = (-1) ** (i - a + j - b) * math.comb(i, a) * math.comb(j, b)
                        if k % p:
                            coeffs[a * p + b] = coeffs[a * p + b] + c * k
        return cls(p, kind, coeffs)

    def render(self) -> list[dict]:
        """Nonzero terms in the (sigma_2-1)^i (sigma_1-1)^j basis."""
        grid = self.to_augmentation_basis()
        return [
            {"i": i, "j": j, "coeff": grid[i][j].to_pairs()}
            for i in range(self.p)
            for j in range(self.p)
            if not grid[i][j].is_zero()
        ]

    def __repr__(self):
        return f"GroupAlgebraElement({self.render()!r})"


def _as_series(p, s):
    if isinstance(s, LaurentSeries):
        return s
    return LaurentSeries.constant(p, s)


def ga_mul(a: GroupAlgebraElement, b: GroupAlgebraElement) -> GroupAlgebraElement:
    a._check(b)
    p = a.p
    q = p * p
    out = [LaurentSeries.zero(p)] * q
    nz_b = [(n, c) for n, c in enumerate(b.coeffs) if not (c.is_zero() and c.is_exact)]
    for n1, c1 in enumerate(a.coeffs):
        if c1.is_zero() and c1.is_exact:
            continue
        a1, b1 = divmod(n1, p)
        for n2, c2 in nz_b:
            if a.kind is ExtensionKind.CYCLIC:
                n = (n1 + n2) % q
            else:
                a2, b2 = divmod(n2, p)
                n = ((a1 + a2) % p) * p + (b1 + b2) % p
            out[n] = out[n] + c1 * c2
    return GroupAlgebraElement(p, a.kind, out)


def ga_add(a, b):
    return a + b


def ga_scale(a: GroupAlgebraElement, s) -> GroupAlgebraElement:
    return a * s


def galois_orbit(x: K2Element, ext: ExtensionData) -> list[K2Element]:
    """[g(x)] indexed like group algebra coefficients (sigma_2^a sigma_1^b at a p + b)."""
    T, p = ext.tower, ext.p
    row = [x]
    for _ in range(p - 1):
        row.append(T.sigma1(row[-1]))
    out = [None] * (p * p)
    for b, img in enumerate(row):
        for a in range(p):
            if a:
                img = T.sigma2(img)
            out[a * p + b] = img
    return out


def apply_on_orbit(a: GroupAlgebraElement, orbit: list[K2Element], ext: ExtensionData) -> K2Element:
    result = ext.tower.zero
    for c, img in zip(a.coeffs, orbit):
        if not (c.is_zero() and c.is_exact):
            result = result + img * c
    return result


def ga_apply(a: GroupAlgebraElement, x: K2Element, ext: ExtensionData) -> K2Element:
    """sum_g coeff_g g(x), with g = sigma_2^a sigma_1^b computed by Galois substitution."""
    if a.p != ext.p or a.kind is not ext.kind:
        raise ValueError("group algebra element does not match the extension")
    T, p = ext.tower, ext.p
    s1_pows = [x]
    result = T.zero
    for n, c in enumerate(a.coeffs):
        if c.is_zero() and c.is_exact:
            continue
        ai, bi = divmod(n, p)
        while len(s1_pows) <= bi:
            s1_pows.append(T.sigma1(s1_pows[-1]))
        img = s1_pows[bi]
        for _ in range(ai):
            img = T.sigma2(img)
        result = result + img * c
    return result


def truncated_exp(base: GroupAlgebraElement, mu: LaurentSeries) -> GroupAlgebraElement:
    """base^[mu] = sum_{i<p} binom(mu, i) (base - 1)^i."""
    p = base.p
    one = GroupAlgebraElement.identity(p, base.kind)
    step = base - one
    power = one
    out = GroupAlgebraElement.zero(p, base.kind)
    for i in range(p):
        out = out + power * series_binomial(mu, i)
        power = power * step
    return out


@dataclass(frozen=True)
class Scaffold:
    psi1: GroupAlgebraElement
    psi2: GroupAlgebraElement
    b1: int
    b2: int
    p: int
    kind: ExtensionKind
    mu: LaurentSeries


def build_scaffold(ext: ExtensionData, force: bool = False) -> Scaffold:
    """Psi_1 = sigma_1 sigma_2^[mu] - 1 and Psi_2 = sigma_2 - 1.

    ``force`` skips the hypothesis check (the algebraic relations are still
    verified); used to study the construction where it is not expected to work.
    """
    if not force and not ext.hypotheses_hold:
        raise HypothesisViolated("the scaffold hypotheses fail for this extension")
    p, kind = ext.p, ext.kind
    one = GroupAlgebraElement.identity(p, kind)
    s1 = GroupAlgebraElement.sigma1(p, kind)
    s2 = GroupAlgebraElement.sigma2(p, kind)
    psi1 = s1 * truncated_exp(s2, ext.mu) - one
    psi2 = s2 - one
    sc = Scaffold(psi1, psi2, ext.b1, ext.b2, p, kind, ext.mu)
    problems = scaffold_invariant_failures(sc)
    if problems:
        raise HypothesisViolated("scaffold invariants fail: " + ", ".join(problems))
    return sc


def scaffold_invariant_failures(sc: Scaffold) -> list[str]:
    p = sc.p
    bad = []
    if not (sc.psi2 ** p).is_zero():
        bad.append("Psi2^p != 0")
    target = sc.psi2 if sc.kind is ExtensionKind.CYCLIC else GroupAlgebraElement.zero(p, sc.kind)
    if sc.psi1 ** p != target:
        bad.append("Psi1^p relation")
    for name, psi in (("Psi1", sc.psi1), ("Psi2", sc.psi2)):
        if not psi.augmentation().is_zero():
            bad.append(f"{name} not in augmentation ideal")
    one = GroupAlgebraElement.identity(p, sc.kind)
    diff = sc.psi1 - (GroupAlgebraElement.sigma1(p, sc.kind) - one)
    if sc.kind is ExtensionKind.ABELIAN:
        # sigma2 - 1 is not in I^2 for C_p x C_p, so the linear term of mu survives
        diff = diff - (GroupAlgebraElement.sigma2(p, sc.kind) - one) * sc.mu
    if not in_augmentation_square(diff):
        bad.append("Psi1 linear term mod I^2")
    return bad


def in_augmentation_square(a: GroupAlgebraElement) -> bool:
    grid = a.to_augmentation_basis()
    # for C_{p^2}, sigma2 - 1 = (sigma1 - 1)^p already lies in I^2
    low = [(0, 0), (0, 1)] if a.kind is ExtensionKind.CYCLIC else [(0, 0), (0, 1), (1, 0)]
    return all(grid[i][j].is_zero() for i, j in low)


def psi_product(sc: Scaffold, a: int) -> GroupAlgebraElement:
    """Psi^(a) = Psi_2^(a_1) Psi_1^(a_0) for a < p^2, else 0."""
    p = sc.p
    if a < 0:
        raise ValueError("a must be nonnegative")
    if a >= p * p:
        return GroupAlgebraElement.zero(p, sc.kind)
    a1, a0 = divmod(a, p)
    return (sc.psi2 ** a1) * (sc.psi1 ** a0)
