"""Fully ramified degree-p^2 extensions of F_p((t)) and arithmetic inside them.

An extension is given by reduced Artin-Schreier data (beta1, beta2):

* abelian:  K_2 = K_0(x1, x2) with wp(x1) = beta1, wp(x2) = beta2;
* cyclic:   K_2 = K_0(x2) with wp(x1) = beta1 and wp(x2) = D1 + beta2.

Elements of K_2 live in the monomial basis x2^i x1^j.  Valuations are read
off the binomial basis alpha_{i,j} = binom(X2, i) binom(x1, j) with
X2 = x2 - mu x1, whose valuations -i b2 - j p b1 are distinct mod p^2.
"""

from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import (
    DecompositionStall,
    DegenerateData,
    HypothesisViolated,
    NotFullyRamified,
    PrecisionExhausted,
)
from .series import (
    INF,
    LaurentSeries,
    as_reduce_k0,
    binom_p_over_p,
    check_prime,
    default_precision,
    inv_mod,
)
from .tower import ASTower, K1Element, K2Element


class ExtensionKind(str, enum.Enum):
    ABELIAN = "abelian"
    CYCLIC = "cyclic"


@dataclass(frozen=True)
class ExtensionData:
    p: int
    kind: ExtensionKind
    beta1: LaurentSeries
    beta2: LaurentSeries
    b1: int
    b2: int
    u1: int
    u2: int
    u2_star: int | None
    mu: LaurentSeries
    eps: LaurentSeries
    m: float
    e: float
    hyp_2_3: bool | None
    hyp_2_4: bool
    precision: int
    components: tuple[LaurentSeries, ...]
    x2_ok: bool = False
    tower: ASTower = field(default=None, compare=False, repr=False)

    @property
    def hypotheses_hold(self) -> bool:
        return self.hyp_2_4 and self.hyp_2_3 is not False

    @property
    def top_wp(self) -> K1Element:
        return self.tower.top_wp

    def summary(self) -> dict:
        def marker(v):
            return v if v not in (INF, -INF) else ("inf" if v > 0 else "-inf")

        return {
            "p": self.p,
            "kind": self.kind.value,
            "beta1": self.beta1.to_pairs(),
            "beta2": self.beta2.to_pairs(),
            "b1": self.b1,
            "b2": self.b2,
            "u1": self.u1,
            "u2": self.u2,
            "u2_star": self.u2_star,
            "mu": self.mu.to_pairs(),
            "eps": self.eps.to_pairs(),
            "m": marker(self.m),
            "e": marker(self.e),
            "hyp_2_3": self.hyp_2_3,
            "hyp_2_4": self.hyp_2_4,
            "precision": self.precision,
        }


# ---------------------------------------------------------------------------
# construction


def _power_components(beta1: LaurentSeries, beta2: LaurentSeries) -> tuple[list[LaurentSeries], int]:
    """Write beta2 = sum_t mu_t^p beta1^t + k modulo wp(K_0) by leading-term elimination."""
    p = beta1.p
    b1 = -beta1.valuation()
    if b1 <= 0 or b1 % p == 0:
        raise ValueError("beta1 must be reduced with p not dividing its negative valuation")
    lc_inv = inv_mod(beta1.leading_coefficient(), p)
    b1_inv = inv_mod(b1, p)
    beta1_pows = [LaurentSeries.one(p)]
    for _ in range(p - 1):
        beta1_pows.append(beta1_pows[-1] * beta1)
    mus = {t: {} for t in range(p)}
    const = 0
    rest = beta2.negative_part() + LaurentSeries.constant(p, beta2.coeff(0) if beta2.prec > 0 else 0)
    budget = 4 * (abs(int(rest.lower_bound())) + 1) if rest.terms else 0
    steps = 0
    while rest.terms:
        steps += 1
        if steps > budget + 8:
            raise DecompositionStall("leading-term elimination is not terminating")
        e = min(rest.terms)
        c = rest.terms[e]
        if e > 0:
            break
        if e == 0:
            const = (const + c) % p
            rest = rest - c
            continue
        n = -e
        t = (n * b1_inv) % p
        if t == 0:
            # c t^(-n) = c t^(-n/p) modulo wp(K_0)
            rest = rest - LaurentSeries.monomial(p, e, c) + LaurentSeries.monomial(p, e // p, c)
            continue
        k, r = divmod(-n + t * b1, p)
        if r:
            raise DecompositionStall(f"no admissible exponent for leading term t^{e}")
        coeff = c * pow(lc_inv, t, p) % p
        mus[t][k] = (mus[t].get(k, 0) + coeff) % p
        term = LaurentSeries.monomial(p, k, coeff)
        rest = rest - term.frobenius() * beta1_pows[t]
        rest = LaurentSeries(p, {x: y for x, y in rest.terms.items() if x <= 0})
    return [LaurentSeries(p, mus[t]) for t in range(p)], const


def decompose_beta2(beta1: LaurentSeries, beta2: LaurentSeries) -> tuple[LaurentSeries, LaurentSeries]:
    """Split beta2 = mu^p beta1 + eps modulo wp(K_0)."""
    p = beta1.p
    mus, const = _power_components(beta1, beta2)
    eps = LaurentSeries.constant(p, const)
    pw = LaurentSeries.one(p)
    for t in range(p):
        if t >= 1:
            pw = pw * beta1
        if t >= 2 and not mus[t].is_zero():
            eps = eps + mus[t].frobenius() * pw
    eps, _ = as_reduce_k0(eps)
    return mus[1], eps


def binomial_components(ext: "ExtensionData") -> tuple[LaurentSeries, ...]:
    """Coefficients nu_t with beta2 = sum_t nu_t^p binom(beta1, t) + k modulo wp(K_0).

    nu_1, nu_2 are the mu_1, mu_2 of the explicit p = 3 computations; they
    differ from the power-basis components whenever nu_2 != 0.
    """
    p = ext.p
    # binom(X, t) = sum_s S[t][s] X^s over F_p; invert the unitriangular map
    S = _binomial_to_power(p)
    lam = list(ext.components)
    nu = [LaurentSeries.zero(p) for _ in range(p)]
    for t in range(p - 1, 0, -1):
        # lambda_s = sum_{t >= s} nu_t S[t][s]   (Frobenius fixes F_p scalars)
        acc = lam[t]
        for u in range(t + 1, p):
            acc = acc - nu[u] * S[u][t]
        nu[t] = acc * inv_mod(S[t][t], p)
    return tuple(nu)


@lru_cache(maxsize=None)
def _binomial_to_power(p: int) -> tuple[tuple[int, ...], ...]:
    """Row t: coefficients of binom(X, t) in powers of X, mod p."""
    rows = []
    for t in range(p):
        poly = [1]
        for k in range(t):
            nxt = [0] * (len(poly) + 1)
            for i, c in enumerate(poly):
                nxt[i + 1] += c
                nxt[i] -= k * c
            poly = nxt
        inv = inv_mod(math.factorial(t), p)
        row = [(c * inv) % p for c in poly] + [0] * (p - len(poly))
        rows.append(tuple(row[:p]))
    return tuple(rows)


@lru_cache(maxsize=None)
def _power_to_binomial(p: int) -> tuple[tuple[int, ...], ...]:
    """Row i: coefficients of X^i in the basis binom(X, k), i.e. S2(i, k) k! mod p."""
    S2 = [[0] * p for _ in range(p)]
    S2[0][0] = 1
    for i in range(1, p):
        for k in range(1, i + 1):
            S2[i][k] = k * S2[i - 1][k] + S2[i - 1][k - 1]
    return tuple(tuple((S2[i][k] * math.factorial(k)) % p for k in range(p)) for i in range(p))


def _wp_classes_abelian(b1r: LaurentSeries, b2r: LaurentSeries) -> tuple[LaurentSeries, LaurentSeries]:
    p = b1r.p
    if b2r.is_zero():
        raise DegenerateData("beta2 lies in wp(K_0)")
    while True:
        if b1r.is_zero():
            raise DegenerateData("beta1 and beta2 are dependent modulo wp(K_0)")
        v1, v2 = b1r.valuation(), b2r.valuation()
        if v2 > v1:
            b1r, b2r = b2r, b1r
            continue
        if v2 == v1:
            c = b2r.leading_coefficient() * inv_mod(b1r.leading_coefficient(), p)
            b2r, _ = as_reduce_k0(b2r - b1r * c)
            if b2r.is_zero():
                raise DegenerateData("beta2 lies in F_p beta1 + wp(K_0)")
            continue
        return b1r, b2r


def build_extension(
    p: int,
    kind: ExtensionKind | str,
    beta1_raw: LaurentSeries,
    beta2_raw: LaurentSeries,
    precision: int | None = None,
) -> ExtensionData:
    check_prime(p)
    kind = ExtensionKind(kind)
    if precision is None:
        precision = default_precision(p, beta2_raw.valuation())
    b1r, _ = as_reduce_k0(beta1_raw, precision)
    b2r, _ = as_reduce_k0(beta2_raw, precision)
    if kind is ExtensionKind.ABELIAN:
        b1r, b2r = _wp_classes_abelian(b1r, b2r)
        if b1r.valuation() >= 0 or b2r.valuation() >= 0:
            raise NotFullyRamified("reduced beta has nonnegative valuation")
    elif b1r.valuation() >= 0:
        raise NotFullyRamified("reduced beta1 has nonnegative valuation")

    b1 = -int(b1r.valuation())
    u1 = b1
    if kind is ExtensionKind.ABELIAN:
        u2 = -int(b2r.valuation())
        u2_star = None
        b2 = u1 + p * (u2 - u1)
    else:
        v2 = b2r.valuation()
        u2_star = -int(v2) if v2 < 0 else 0
        b2 = max((p * p - p + 1) * b1, p * u2_star - (p - 1) * b1)
        u2 = max(p * b1, u2_star)

    mus, const = _power_components(b1r, b2r)
    mu, eps = decompose_beta2(b1r, b2r)
    m = -mu.valuation() if not mu.is_zero() else -INF
    e = -eps.valuation() if not eps.is_constant() else -INF
    hyp_2_4 = eps.is_constant() or b2 > p * e
    hyp_2_3 = (b2 > p * p * b1) if kind is ExtensionKind.CYCLIC else None

    tower = _make_tower(p, kind, b1r, b2r)
    ext = ExtensionData(
        p=p, kind=kind, beta1=b1r, beta2=b2r, b1=b1, b2=b2, u1=u1, u2=u2, u2_star=u2_star,
        mu=mu, eps=eps, m=m, e=e, hyp_2_3=hyp_2_3, hyp_2_4=hyp_2_4, precision=precision,
        components=tuple(mus), tower=tower,
    )
    x2 = x2_tilde(ext, verify=False)
    ok = k1_valuation(norm_to_k1(x2, ext), ext) == -b2
    object.__setattr__(ext, "x2_ok", ok)
    return ext


def _make_tower(p: int, kind: ExtensionKind, beta1: LaurentSeries, beta2: LaurentSeries) -> ASTower:
    one = LaurentSeries.one(p)
    if kind is ExtensionKind.ABELIAN:
        top_wp = [beta2] + [LaurentSeries.zero(p)] * (p - 1)
        return ASTower(p, one, beta1, top_wp, None)
    d1, c1 = _d1_c1_coeffs(p, beta1)
    top_wp = [beta2 + d1[0]] + d1[1:]
    return ASTower(p, one, beta1, top_wp, c1)


def _d1_c1_coeffs(p: int, beta1: LaurentSeries) -> tuple[list[LaurentSeries], list[LaurentSeries]]:
    d1 = [LaurentSeries.zero(p)]
    c1 = [LaurentSeries.zero(p)]
    for i in range(1, p):
        k = -binom_p_over_p(p, i)
        d1.append((beta1 ** (p - i)) * k)
        c1.append(LaurentSeries.constant(p, k))
    return d1, c1


def check_scaffold_hypotheses(ext: ExtensionData) -> tuple[bool, bool | None]:
    return ext.hyp_2_4, ext.hyp_2_3


def d1_element(ext: ExtensionData) -> K1Element:
    if ext.kind is not ExtensionKind.CYCLIC:
        raise ValueError("D1 is only defined for cyclic extensions")
    return ext.tower.k1(_d1_c1_coeffs(ext.p, ext.beta1)[0])


def c1_element(ext: ExtensionData) -> K1Element:
    if ext.kind is not ExtensionKind.CYCLIC:
        raise ValueError("C1 is only defined for cyclic extensions")
    return ext.tower.k1(_d1_c1_coeffs(ext.p, ext.beta1)[1])


# ---------------------------------------------------------------------------
# elements


def series(ext: ExtensionData, pairs, prec: float = INF) -> LaurentSeries:
    return LaurentSeries.from_pairs(ext.p, pairs, prec)


def x1(ext: ExtensionData) -> K2Element:
    return ext.tower.x1


def x2(ext: ExtensionData) -> K2Element:
    return ext.tower.top


def galois_apply(gen: str | int, a: K2Element, ext: ExtensionData) -> K2Element:
    if gen in ("sigma1", 1):
        return ext.tower.sigma1(a)
    if gen in ("sigma2", 2):
        return ext.tower.sigma2(a)
    raise ValueError(f"unknown generator {gen!r}")


def x2_tilde(ext: ExtensionData, verify: bool = True) -> K2Element:
    """X2 = x2 - mu x1, of valuation -b2 under the scaffold hypotheses."""
    T = ext.tower
    X2 = T.top - T.x1 * ext.mu
    if verify and not ext.x2_ok:
        v = k1_valuation(norm_to_k1(X2, ext), ext)
        raise HypothesisViolated(f"v2(X2) = {v}, expected {-ext.b2}")
    return X2


def norm_to_k1(a: K2Element, ext: ExtensionData) -> K1Element:
    n = ext.tower.norm_to_k1(a)
    for k1 in n.c[1:]:
        if any(not s.is_zero() for s in k1.c):
            raise PrecisionExhausted("norm has a nonzero x2-component")
    return n.c[0]


def k1_valuation(a: K1Element, ext: ExtensionData) -> int:
    """v_1 of sum c_j x1^j: min of p v_0(c_j) - j b1 (distinct residues mod p)."""
    p, b1 = ext.p, ext.b1
    best, bound = INF, INF
    for j, cj in enumerate(a.c):
        if cj.terms:
            best = min(best, p * cj.valuation() - j * b1)
        elif cj.prec != INF:
            bound = min(bound, p * cj.prec - j * b1)
    return _settle(best, bound)


def _settle(best: float, bound: float) -> int:
    if best == INF:
        if bound == INF:
            raise ValueError("valuation of zero")
        raise PrecisionExhausted("element is zero to the available precision")
    if bound <= best:
        raise PrecisionExhausted("unknown coefficients could decide the valuation")
    return int(best)


def to_alpha_basis(a: K2Element, ext: ExtensionData) -> list[list[LaurentSeries]]:
    """Coefficients c[i][j] with a = sum c[i][j] binom(X2, i) binom(x1, j)."""
    T, p = ext.tower, ext.p
    shifted = T.shift_top(a, T.x1_k1 * ext.mu)
    M = _power_to_binomial(p)
    zero = LaurentSeries.zero(p)
    mono = shifted.grid()
    # x1 direction, then X2 direction
    tmp = [[_lincomb(mono[i], M, l) for l in range(p)] for i in range(p)]
    out = [[zero] * p for _ in range(p)]
    for l in range(p):
        col = [tmp[i][l] for i in range(p)]
        for k in range(p):
            out[k][l] = _lincomb(col, M, k)
    return out


def from_alpha_basis(grid, ext: ExtensionData) -> K2Element:
    T, p = ext.tower, ext.p
    N = _binomial_to_power(p)
    tmp = [[_lincomb(list(grid[k]), N, j) for j in range(p)] for k in range(p)]
    mono = [[None] * p for _ in range(p)]
    for j in range(p):
        col = [tmp[k][j] for k in range(p)]
        for i in range(p):
            mono[i][j] = _lincomb(col, N, i)
    return T.shift_top(T.k2(mono), T.x1_k1 * (-ext.mu))


def _lincomb(vec, M, col):
    acc = None
    for i, v in enumerate(vec):
        c = M[i][col]
        if c:
            term = v * c
            acc = term if acc is None else acc + term
    if acc is None:
        return vec[0] * 0
    return acc


def alpha(ext: ExtensionData, i: int, j: int) -> K2Element:
    T = ext.tower
    return T.binomial(x2_tilde(ext, verify=False), i) * T.binomial(T.x1, j)


def _require_x2(ext: ExtensionData) -> None:
    if not ext.x2_ok:
        raise HypothesisViolated("X2 = x2 - mu x1 does not have valuation -b2 here")


def _alpha_contributions(a: K2Element, ext: ExtensionData):
    _require_x2(ext)
    p, b1, b2 = ext.p, ext.b1, ext.b2
    grid = to_alpha_basis(a, ext)
    best, bound = INF, INF
    for i in range(p):
        for j in range(p):
            c = grid[i][j]
            shift = -i * b2 - j * p * b1
            if c.terms:
                best = min(best, p * p * c.valuation() + shift)
            elif c.prec != INF:
                bound = min(bound, p * p * c.prec + shift)
    return best, bound


def k2_valuation(a: K2Element, ext: ExtensionData) -> int:
    best, bound = _alpha_contributions(a, ext)
    return _settle(best, bound)


def k2_is_integral(a: K2Element, ext: ExtensionData) -> bool:
    """Decide v_2(a) >= 0, tolerating coefficients known only to precision."""
    best, bound = _alpha_contributions(a, ext)
    if best < 0:
        return False
    if bound >= 0:
        return True
    raise PrecisionExhausted("cannot certify integrality at this precision")


def basis_index_for_residue(ext: ExtensionData, residue: int) -> tuple[int, int]:
    p = ext.p
    q = p * p
    for i in range(p):
        for j in range(p):
            if (-i * ext.b2 - j * p * ext.b1 - residue) % q == 0:
                return i, j
    raise HypothesisViolated("alpha-basis valuations do not cover every residue")


def sample_with_valuation(
    ext: ExtensionData, target_residue: int, seed: int, noise: bool = True
) -> K2Element:
    """Deterministic element with v_2 congruent to ``target_residue`` mod p^2.

    The leading part is t^k alpha_{i,j}; noise terms have strictly larger
    valuation.  Coefficients are truncated at ``ext.precision``.
    """
    _require_x2(ext)
    p, q = ext.p, ext.p * ext.p
    rng = random.Random(seed)
    i0, j0 = basis_index_for_residue(ext, target_residue)
    k0 = rng.randint(-2, 2)
    lead = p * p * k0 - i0 * ext.b2 - j0 * p * ext.b1
    terms = [[{} for _ in range(p)] for _ in range(p)]
    terms[i0][j0][k0] = rng.randrange(1, p) if noise else 1
    if noise:
        for i in range(p):
            for j in range(p):
                shift = -i * ext.b2 - j * p * ext.b1
                kmin = (lead - shift) // q + 1
                for _ in range(rng.randint(0, 2)):
                    k = kmin + rng.randint(0, 3)
                    terms[i][j][k] = (terms[i][j].get(k, 0) + rng.randrange(p)) % p
    prec = ext.precision
    grid = [[LaurentSeries(p, terms[i][j], prec) for j in range(p)] for i in range(p)]
    return from_alpha_basis(grid, ext)


def scale_to_valuation(a: K2Element, target: int, ext: ExtensionData) -> K2Element:
    """Multiply by the power of t that moves v_2(a) to ``target`` (same residue class)."""
    q = ext.p * ext.p
    v = k2_valuation(a, ext)
    k, r = divmod(target - v, q)
    if r:
        raise ValueError("target valuation is in a different residue class")
    return a * LaurentSeries.monomial(ext.p, k)


def uniformizer(ext: ExtensionData) -> K2Element:
    p = ext.p
    i, j = basis_index_for_residue(ext, 1)
    k = (1 + i * ext.b2 + j * p * ext.b1) // (p * p)
    return alpha(ext, i, j) * LaurentSeries.monomial(p, k)
