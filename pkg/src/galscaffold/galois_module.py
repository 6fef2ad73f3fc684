"""Associated order of the ring of integers and the freeness criterion.

The integer side (b, d, w, r) is pure integer arithmetic so that it can be
swept over wide parameter ranges.  The field side rebuilds the same data
from valuations in a concrete extension and tests membership directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import HypothesisViolated
from .extension import (
    ExtensionData,
    ExtensionKind,
    k2_is_integral,
    k2_valuation,
    sample_with_valuation,
    scale_to_valuation,
)
from .group_algebra import (
    GroupAlgebraElement,
    Scaffold,
    apply_on_orbit,
    ga_apply,
    galois_orbit,
    psi_product,
)
from .series import INF, LaurentSeries


# ---------------------------------------------------------------------------
# integer side


def b_of(a: int, b1: int, b2: int, p: int) -> float:
    """(1 + a_1) b2 + a_0 p b1 for a < p^2, infinity otherwise."""
    if a < 0:
        raise ValueError("a must be nonnegative")
    if a >= p * p:
        return INF
    a1, a0 = divmod(a, p)
    return (1 + a1) * b2 + a0 * p * b1


def _validate(b1: int, b2: int, p: int) -> None:
    if b1 <= 0 or b2 <= 0:
        raise ValueError("breaks must be positive")
    if b1 % p == 0:
        raise ValueError(f"p={p} divides b1={b1}")
    if (b2 - b1) % (p * p):
        raise ValueError(f"b2={b2} is not congruent to b1={b1} mod p^2")


def no_carry(x: int, y: int, p: int) -> bool:
    """True when x + y has no base-p carry in either digit (and stays below p^2)."""
    return x % p + y % p < p and x // p + y // p < p


def dw_tables(b1: int, b2: int, p: int, kind: ExtensionKind | str = ExtensionKind.CYCLIC):
    """d_a = floor(b(a) / p^2) and w_j = min_a (d_{j+a} - d_a).

    For the abelian kind Psi^(j) Psi^(a) vanishes when j + a carries, so those
    a drop out of the minimum.
    """
    _validate(b1, b2, p)
    kind = ExtensionKind(kind)
    q = p * p
    d = [int(b_of(a, b1, b2, p)) // q for a in range(q)]
    w = []
    for j in range(q):
        cands = [
            d[j + a] - d[a]
            for a in range(q - j)
            if kind is ExtensionKind.CYCLIC or no_carry(j, a, p)
        ]
        w.append(min(cands))
    return d, w


def residue_r(b2: int, p: int) -> int:
    return b2 % (p * p)


def freeness_by_w(b1: int, b2: int, p: int, kind: ExtensionKind | str = ExtensionKind.CYCLIC) -> bool:
    d, w = dw_tables(b1, b2, p, kind)
    return all(w[j] == d[j] - d[0] for j in range(p * p))


def freeness_by_r(b2: int, p: int) -> bool:
    r = residue_r(b2, p)
    return r != 0 and (p * p - 1) % r == 0


def cond_2_6_check(b1: int, b2: int, p: int) -> bool:
    """d_{x+y} + d_0 >= d_x + d_y for all 0 <= y <= x <= x + y < p^2."""
    d, _ = dw_tables(b1, b2, p)
    q = p * p
    return all(d[x + y] + d[0] >= d[x] + d[y] for x in range(q) for y in range(x + 1) if x + y < q)


def survey_rows(p: int, b1_min: int = 1, b1_max: int = 50, m_max: int = 200,
                require_spread: bool = True) -> list[dict]:
    """Rows (p, b1, b2, r, free_by_r, free_by_w, cond, agree) with b2 = b1 + p^2 m."""
    rows = []
    q = p * p
    for b1 in range(max(1, b1_min), b1_max + 1):
        if b1 % p == 0:
            continue
        for m in range(1, m_max + 1):
            b2 = b1 + q * m
            if require_spread and b2 <= q * b1:
                continue
            fr = freeness_by_r(b2, p)
            fw = freeness_by_w(b1, b2, p)
            c6 = cond_2_6_check(b1, b2, p)
            rows.append({
                "p": p, "b1": b1, "b2": b2, "r": residue_r(b2, p),
                "free_by_r": fr, "free_by_w": fw, "cond_2_6": c6,
                "agree": fr == fw == c6,
            })
    return rows


def floor_superadditive(a: int, b: int, c: int) -> bool:
    return (a + b) // c >= a // c + b // c


# ---------------------------------------------------------------------------
# field side


@dataclass
class OrderReport:
    p: int
    b1: int
    b2: int
    kind: str
    b_table: list[int]
    d: list[int]
    w: list[int]
    r: int
    free_by_w: bool
    free_by_r: bool
    route: str
    basis: list[tuple[int, int]] = field(default_factory=list)
    d_field: list[int] | None = None
    oracle_agrees: bool | None = None
    oracle_failures: list[dict] = field(default_factory=list)
    generator_ok: bool | None = None
    generator_valuations: list[int] | None = None

    @property
    def free(self) -> bool:
        return self.free_by_w

    def to_dict(self) -> dict:
        return {
            "p": self.p, "b1": self.b1, "b2": self.b2, "kind": self.kind,
            "b": self.b_table, "d": self.d, "w": self.w, "r": self.r,
            "free_by_w": self.free_by_w, "free_by_r": self.free_by_r,
            "route": self.route,
            "basis": [{"j": j, "t_exponent": -wj} for j, wj in self.basis],
            "d_field": self.d_field,
            "oracle_agrees": self.oracle_agrees,
            "oracle_failures": self.oracle_failures,
            "generator_ok": self.generator_ok,
            "generator_valuations": self.generator_valuations,
        }


@dataclass
class IntegralBasis:
    rho: object  # v_2(rho) = b2
    rho_star: object  # v_2(rho_star) = r(b2)
    elements: list  # rho_a = t^{-d_a} Psi^(a) rho
    d: list[int]
    orbits: list = field(default_factory=list, repr=False)


_BASIS_CACHE: dict[tuple, IntegralBasis] = {}


def integral_basis(ext: ExtensionData, sc: Scaffold, seed: int = 0) -> IntegralBasis:
    """The O_0-basis rho_a of O_2, with d_a read off the field valuations."""
    key = (id(ext), id(sc), seed)
    hit = _BASIS_CACHE.get(key)
    if hit is not None:
        return hit
    p, q = ext.p, ext.p * ext.p
    rho = scale_to_valuation(sample_with_valuation(ext, ext.b2 % q, seed), ext.b2, ext)
    d0 = ext.b2 // q
    rho_star = rho * LaurentSeries.monomial(p, -d0)
    elements, d = [], []
    for a in range(q):
        img = ga_apply(psi_product(sc, a), rho, ext)
        da = k2_valuation(img, ext) // q
        d.append(da)
        elements.append(img * LaurentSeries.monomial(p, -da))
    orbits = [galois_orbit(x, ext) for x in elements]
    basis = IntegralBasis(rho, rho_star, elements, d, orbits)
    if len(_BASIS_CACHE) > 64:
        _BASIS_CACHE.clear()
    _BASIS_CACHE[key] = basis
    return basis


def order_membership_oracle(alpha: GroupAlgebraElement, ext: ExtensionData, sc: Scaffold,
                            seed: int = 0) -> bool:
    """alpha O_2 within O_2, decided on the basis rho_a by field arithmetic."""
    basis = integral_basis(ext, sc, seed)
    return all(k2_is_integral(apply_on_orbit(alpha, orb, ext), ext) for orb in basis.orbits)


def order_basis_element(sc: Scaffold, j: int, exponent: int) -> GroupAlgebraElement:
    """t^exponent Psi^(j)."""
    return psi_product(sc, j) * LaurentSeries.monomial(sc.p, exponent)


def associated_order_basis(ext: ExtensionData, sc: Scaffold, seed: int = 0,
                           run_oracle: bool = True) -> OrderReport:
    p, q = ext.p, ext.p * ext.p
    d, w = dw_tables(ext.b1, ext.b2, p, ext.kind)
    route = "integer tables (full carry)" if ext.kind is ExtensionKind.CYCLIC else "integer tables (no-carry products)"
    rep = OrderReport(
        p=p, b1=ext.b1, b2=ext.b2, kind=ext.kind.value,
        b_table=[int(b_of(a, ext.b1, ext.b2, p)) for a in range(q)],
        d=d, w=w, r=residue_r(ext.b2, p),
        free_by_w=all(w[j] == d[j] - d[0] for j in range(q)),
        free_by_r=freeness_by_r(ext.b2, p),
        route=route,
        basis=[(j, w[j]) for j in range(q)],
    )
    if run_oracle:
        basis = integral_basis(ext, sc, seed)
        rep.d_field = list(basis.d)
        failures = []
        for j in range(q):
            inside = order_membership_oracle(order_basis_element(sc, j, -w[j]), ext, sc, seed)
            outside = order_membership_oracle(order_basis_element(sc, j, -w[j] - 1), ext, sc, seed)
            if not inside or outside:
                failures.append({"j": j, "member_at_w": inside, "member_at_w_plus_1": outside})
        rep.oracle_failures = failures
        rep.oracle_agrees = not failures and rep.d_field == d
        rep.route += "; field oracle run"
        if rep.free_by_w:
            cert = generator_certificate(ext, sc, basis.rho_star, w)
            rep.generator_ok = cert["ok"]
            rep.generator_valuations = cert["valuations"]
    return rep


def generator_certificate(ext: ExtensionData, sc: Scaffold, rho_star, w: list[int] | None = None) -> dict:
    """Apply t^{-w_j} Psi^(j) to rho_star; an O_0-basis of O_2 needs valuations exactly {0..p^2-1}."""
    q = ext.p * ext.p
    if w is None:
        _, w = dw_tables(ext.b1, ext.b2, ext.p, ext.kind)
    vals = [k2_valuation(ga_apply(order_basis_element(sc, j, -w[j]), rho_star, ext), ext) for j in range(q)]
    return {"valuations": vals, "ok": sorted(vals) == list(range(q))}


def generator_check(ext: ExtensionData, sc: Scaffold, seed: int = 0) -> bool:
    if not freeness_by_w(ext.b1, ext.b2, ext.p, ext.kind):
        raise HypothesisViolated("O_2 is not free over its associated order; no generator to certify")
    basis = integral_basis(ext, sc, seed)
    return generator_certificate(ext, sc, basis.rho_star)["ok"]
