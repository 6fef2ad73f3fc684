"""Truncated Laurent series over F_p.

A :class:`LaurentSeries` stores finitely many nonzero coefficients together
with an absolute precision ``prec``: every coefficient at an exponent below
``prec`` is known, nothing is known at or above it.  ``prec = math.inf``
marks an exact Laurent polynomial.  Arithmetic propagates the tightest
cutoff that can be proven from the inputs.
"""

from __future__ import annotations

import math
from typing import Iterable, Mapping

from .errors import PrecisionExhausted

INF = math.inf

SUPPORTED_PRIMES = (2, 3, 5, 7, 11, 13)


def check_prime(p: int) -> int:
    if p not in SUPPORTED_PRIMES:
        raise ValueError(f"unsupported prime p={p}; expected one of {SUPPORTED_PRIMES}")
    return p


def inv_mod(c: int, p: int) -> int:
    c %= p
    if c == 0:
        raise ZeroDivisionError("0 has no inverse mod p")
    return pow(c, p - 2, p)


class LaurentSeries:
    """Element of F_p((t)) known below an absolute exponent cutoff."""

    __slots__ = ("p", "_terms", "prec")

    def __init__(self, p: int, terms: Mapping[int, int] | None = None, prec: float = INF):
        self.p = p
        self.prec = prec
        clean = {}
        if terms:
            for e, c in terms.items():
                c %= p
                if c and e < prec:
                    clean[int(e)] = c
        self._terms = clean

    # -- constructors ---------------------------------------------------
    @classmethod
    def zero(cls, p: int, prec: float = INF) -> "LaurentSeries":
        return cls(p, None, prec)

    @classmethod
    def one(cls, p: int) -> "LaurentSeries":
        return cls(p, {0: 1})

    @classmethod
    def constant(cls, p: int, c: int) -> "LaurentSeries":
        return cls(p, {0: c})

    @classmethod
    def monomial(cls, p: int, exponent: int, coeff: int = 1, prec: float = INF) -> "LaurentSeries":
        return cls(p, {exponent: coeff}, prec)

    @classmethod
    def from_pairs(cls, p: int, pairs: Iterable, prec: float = INF) -> "LaurentSeries":
        """Parse the ``[[exponent, coefficient], ...]`` literal; repeated exponents add."""
        acc: dict[int, int] = {}
        for item in pairs:
            e, c = item
            if int(e) != e or int(c) != c:
                raise ValueError(f"series literal entries must be integers, got {item!r}")
            acc[int(e)] = acc.get(int(e), 0) + int(c)
        return cls(p, acc, prec)

    def to_pairs(self) -> list[list[int]]:
        return [[e, c] for e, c in sorted(self._terms.items())]

    # -- inspection -----------------------------------------------------
    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    @property
    def is_exact(self) -> bool:
        return self.prec == INF

    def coeff(self, e: int) -> int:
        if e >= self.prec:
            raise PrecisionExhausted(f"coefficient of t^{e} lies beyond precision {self.prec}")
        return self._terms.get(e, 0)

    def is_zero(self) -> bool:
        """True when no nonzero coefficient is known (zero to precision)."""
        return not self._terms

    def valuation(self, strict: bool = False) -> float:
        """Least exponent with nonzero coefficient; ``inf`` for zero.

        With ``strict=True`` a series that is only zero up to a finite
        precision raises :class:`PrecisionExhausted` instead.
        """
        if self._terms:
            return min(self._terms)
        if strict and self.prec != INF:
            raise PrecisionExhausted(f"series is zero only up to t^{self.prec}")
        return INF

    def lower_bound(self) -> float:
        """A proven lower bound on the valuation."""
        if self._terms:
            return min(self._terms)
        return self.prec

    def leading_coefficient(self) -> int:
        if not self._terms:
            raise PrecisionExhausted("zero series has no leading coefficient")
        return self._terms[min(self._terms)]

    def is_constant(self) -> bool:
        """True for elements of F_p (exponent 0 only), including 0."""
        return all(e == 0 for e in self._terms) and self.prec > 0

    def max_exponent(self) -> float:
        return max(self._terms) if self._terms else -INF

    # -- arithmetic -----------------------------------------------------
    def _coerce(self, other) -> "LaurentSeries | None":
        if isinstance(other, LaurentSeries):
            if other.p != self.p:
                raise ValueError("series over different primes")
            return other
        if isinstance(other, int):
            return LaurentSeries.constant(self.p, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms = dict(self._terms)
        for e, c in o._terms.items():
            terms[e] = terms.get(e, 0) + c
        return LaurentSeries(self.p, terms, min(self.prec, o.prec))

    __radd__ = __add__

    def __neg__(self):
        p = self.p
        return LaurentSeries(p, {e: p - c for e, c in self._terms.items()}, self.prec)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            c = other % self.p
            if c == 0:
                return LaurentSeries.zero(self.p)
            return LaurentSeries(self.p, {e: v * c for e, v in self._terms.items()}, self.prec)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        o = self._coerce(other)
        va, vb = self.lower_bound(), o.lower_bound()
        prec = min(self.prec + vb, o.prec + va)
        if math.isnan(prec):  # inf + -inf cannot occur, guard anyway
            prec = -INF
        p = self.p
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in o._terms.items():
                e = e1 + e2
                if e < prec:
                    out[e] = (out.get(e, 0) + c1 * c2) % p
        return LaurentSeries(p, out, prec)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not supported")
        result = LaurentSeries.one(self.p)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by t^k."""
        return LaurentSeries(self.p, {e + k: c for e, c in self._terms.items()}, self.prec + k)

    def frobenius(self) -> "LaurentSeries":
        """s^p; the cutoff scales by p."""
        p = self.p
        return LaurentSeries(p, {p * e: c for e, c in self._terms.items()}, p * self.prec)

    def truncate(self, prec: float) -> "LaurentSeries":
        return LaurentSeries(self.p, self._terms, min(self.prec, prec))

    def negative_part(self) -> "LaurentSeries":
        return LaurentSeries(self.p, {e: c for e, c in self._terms.items() if e < 0})

    # -- comparison -----------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentSeries.constant(self.p, other)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return self.p == other.p and self.prec == other.prec and self._terms == other._terms

    def __hash__(self):
        return hash((self.p, self.prec, tuple(sorted(self._terms.items()))))

    def agrees_with(self, other: "LaurentSeries") -> bool:
        """Equality of known coefficients below the common cutoff."""
        cut = min(self.prec, other.prec)
        a = {e: c for e, c in self._terms.items() if e < cut}
        b = {e: c for e, c in other._terms.items() if e < cut}
        return a == b

    def __repr__(self):
        if not self._terms:
            body = "0"
        else:
            parts = []
            for e, c in sorted(self._terms.items()):
                if e == 0:
                    parts.append(f"{c}")
                else:
                    parts.append(f"{c}*t^{e}" if c != 1 else f"t^{e}")
            body = " + ".join(parts)
        if self.prec != INF:
            body += f" + O(t^{self.prec})"
        return body


def series_valuation(s: LaurentSeries, strict: bool = False) -> float:
    return s.valuation(strict=strict)


def wp_apply(s: LaurentSeries) -> LaurentSeries:
    """The Artin-Schreier map s -> s^p - s."""
    return s.frobenius() - s


def series_binomial(mu: LaurentSeries, i: int) -> LaurentSeries:
    """binom(mu, i) = mu (mu - 1) ... (mu - i + 1) / i! for 0 <= i < p."""
    p = mu.p
    if not 0 <= i < p:
        raise ValueError(f"binomial index must satisfy 0 <= i < p, got i={i}")
    out = LaurentSeries.one(p)
    for k in range(i):
        out = out * (mu - k)
    return out * inv_mod(math.factorial(i), p)


def binom_p_over_p(p: int, i: int) -> int:
    """binom(p, i) / p computed over the integers, reduced mod p."""
    if not 1 <= i <= p - 1:
        raise ValueError("need 1 <= i <= p-1")
    return (math.comb(p, i) // p) % p


def default_precision(p: int, beta2_valuation: float) -> int:
    v = 0 if beta2_valuation in (INF, -INF) else abs(int(beta2_valuation))
    return 4 * (p * p + v * p) + 32


def wp_preimage_positive(tail: LaurentSeries, prec: float) -> LaurentSeries:
    """Solve y^p - y = tail for tail of positive valuation, to absolute precision ``prec``.

    Fixed point of y <- y^p - tail, i.e. y = -(tail + tail^p + tail^(p^2) + ...).
    """
    p = tail.p
    if tail.lower_bound() <= 0:
        raise ValueError("tail must have positive valuation")
    cut = min(prec, tail.prec)
    if cut == INF:
        raise ValueError("a finite precision is required for the preimage")
    y = LaurentSeries.zero(p, cut)
    while True:
        nxt = (y.frobenius() - tail).truncate(cut)
        if nxt == y:
            return y
        y = nxt


def as_reduce_k0(beta: LaurentSeries, prec: float | None = None) -> tuple[LaurentSeries, LaurentSeries]:
    """Reduce ``beta`` modulo wp(K_0) to its canonical representative.

    Returns ``(beta_red, y)`` with ``beta_red + wp(y) == beta`` below the
    common cutoff.  ``beta_red`` keeps only the nonpositive part, has no
    negative exponent divisible by p, and is exact whenever ``beta`` is
    known up to some positive exponent.
    """
    p = beta.p
    if beta.prec <= 0:
        raise PrecisionExhausted("reduction needs every coefficient of nonpositive exponent")
    if prec is None:
        prec = default_precision(p, beta.valuation())
    prec = min(prec, beta.prec)
    work = {e: c for e, c in beta._terms.items() if e <= 0}
    y_terms: dict[int, int] = {}
    while True:
        divisible = [e for e in work if e < 0 and e % p == 0]
        if not divisible:
            break
        e = min(divisible)
        c = work.pop(e)
        # wp(c t^(e/p)) = c t^e - c t^(e/p), and c^(1/p) = c in F_p
        k = e // p
        work[k] = (work.get(k, 0) + c) % p
        if work[k] == 0:
            del work[k]
        y_terms[k] = (y_terms.get(k, 0) + c) % p
    beta_red = LaurentSeries(p, work)
    y = LaurentSeries(p, y_terms)
    tail = LaurentSeries(p, {e: c for e, c in beta._terms.items() if e > 0}, beta.prec)
    if tail.is_zero() and tail.prec == INF:
        return beta_red, y
    y = y + wp_preimage_positive(tail if not tail.is_zero() else LaurentSeries.zero(p, prec), prec)
    return beta_red, y.truncate(prec)
