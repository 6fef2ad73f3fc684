"""Sparse multivariate polynomials over F_p, used as symbolic coefficients."""

from __future__ import annotations

from typing import Mapping, Sequence


class PolyRing:
    def __init__(self, p: int, names: Sequence[str]):
        self.p = p
        self.names = tuple(names)
        self.nvars = len(self.names)
        self._zero_exp = (0,) * self.nvars

    def __call__(self, c: int = 0) -> "MPoly":
        return MPoly(self, {self._zero_exp: c})

    def zero(self) -> "MPoly":
        return MPoly(self, {})

    def one(self) -> "MPoly":
        return self(1)

    def gen(self, name: str) -> "MPoly":
        i = self.names.index(name)
        e = [0] * self.nvars
        e[i] = 1
        return MPoly(self, {tuple(e): 1})

    def gens(self) -> tuple["MPoly", ...]:
        return tuple(self.gen(n) for n in self.names)

    def __repr__(self):
        return f"F_{self.p}[{', '.join(self.names)}]"


class MPoly:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: Mapping[tuple, int]):
        self.ring = ring
        p = ring.p
        self.terms = {e: c % p for e, c in terms.items() if c % p}

    def _coerce(self, other):
        if isinstance(other, MPoly):
            return other
        if isinstance(other, int):
            return self.ring(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        t = dict(self.terms)
        for e, c in o.terms.items():
            t[e] = t.get(e, 0) + c
        return MPoly(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.ring, {e: -c for e, c in self.terms.items()})

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
            return MPoly(self.ring, {e: c * other for e, c in self.terms.items()})
        if not isinstance(other, MPoly):
            return NotImplemented
        p = self.ring.p
        out: dict[tuple, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = (out.get(e, 0) + c1 * c2) % p
        return MPoly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = self.ring.one()
        for _ in range(n):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def subs(self, values: Mapping[str, object], one):
        """Evaluate at ring elements; ``one`` is the target ring's unit."""
        out = one * 0
        vals = [values[n] for n in self.ring.names]
        for e, c in self.terms.items():
            term = one * c
            for v, k in zip(vals, e):
                if k:
                    term = term * (v ** k)
            out = out + term
        return out

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(self.ring.names, e) if k
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts)
