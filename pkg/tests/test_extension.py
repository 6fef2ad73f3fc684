import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import CASES, S, case, ext_of, k2_random
from oracles import lower_break, valuation_by_norm
from galscaffold.errors import DegenerateData, HypothesisViolated, NotFullyRamified
from galscaffold.extension import (
    ExtensionKind,
    alpha,
    binomial_components,
    build_extension,
    c1_element,
    d1_element,
    decompose_beta2,
    from_alpha_basis,
    galois_apply,
    k1_valuation,
    k2_valuation,
    norm_to_k1,
    sample_with_valuation,
    to_alpha_basis,
    uniformizer,
    x2_tilde,
)
from galscaffold.series import as_reduce_k0


def test_running_example():
    ext = ext_of(3, "cyclic", ((-1, 1),), ((-7, 1),))
    assert (ext.b1, ext.u2_star, ext.b2) == (1, 7, 19)
    assert ext.mu == S(3, [(-2, 1)])
    assert ext.eps.is_zero()
    assert ext.hyp_2_3 is True and ext.hyp_2_4 is True


def test_abelian_breaks():
    ext = ext_of(3, "abelian", ((-1, 1),), ((-7, 1),))
    assert (ext.u1, ext.u2, ext.b1, ext.b2) == (1, 7, 1, 19)
    assert ext.hyp_2_3 is None and ext.hyp_2_4


def test_constant_beta2_cyclic():
    ext = ext_of(3, "cyclic", ((-1, 1),), ((0, 1),))
    assert ext.u2_star == 0 and ext.b2 == 7 and ext.hyp_2_3 is False


def test_small_beta2_cyclic():
    ext = ext_of(3, "cyclic", ((-1, 1),), ((-2, 1),))
    assert ext.b2 == 7 and ext.hyp_2_3 is False


@pytest.mark.parametrize("beta2, mu, eps", [
    ([(-7, 1)], [(-2, 1)], []),
    ([(-5, 1)], [], [(-5, 1)]),
    ([(-4, 1), (-1, 1)], [(-1, 1), (0, 1)], []),
])
def test_decomposition_examples(beta2, mu, eps):
    m, e = decompose_beta2(S(3, [(-1, 1)]), S(3, beta2))
    assert m == S(3, mu)
    assert e == S(3, eps)


def test_decomposition_witness():
    for name in CASES:
        ext = ext_of(*CASES[name])
        rest = ext.beta2 - ext.mu.frobenius() * ext.beta1 - ext.eps
        red, _ = as_reduce_k0(rest)
        assert all(e >= 0 for e in red.terms), name


def test_errors():
    with pytest.raises(NotFullyRamified):
        build_extension(3, "cyclic", S(3, [(2, 1)]), S(3, [(-7, 1)]))
    # t^-3 - t^-1 is wp(t^-1), so beta1 reduces to 0
    with pytest.raises(NotFullyRamified):
        build_extension(3, "cyclic", S(3, [(-3, 1), (-1, -1)]), S(3, [(-7, 1)]))
    with pytest.raises(DegenerateData):
        build_extension(3, "abelian", S(3, [(-1, 1)]), S(3, [(-1, 2), (-3, 1)]))


def test_abelian_normalisation_raises_valuation():
    ext = build_extension(3, "abelian", S(3, [(-7, 1)]), S(3, [(-7, 1), (-2, 1)]))
    # beta2 - beta1 = t^-2, so the classes are ordered with u1 = 2, u2 = 7
    assert (ext.u1, ext.u2) == (2, 7)
    assert ext.b2 == 2 + 3 * 5


@pytest.mark.parametrize("name", sorted(CASES))
def test_breaks_match_ramification_oracle(name):
    ext = ext_of(*CASES[name])
    T = ext.tower
    pi = uniformizer(ext)
    assert valuation_by_norm(pi, T) == 1
    assert lower_break(T.sigma1, pi, T) == ext.b1
    assert lower_break(T.sigma2, pi, T) == ext.b2


def test_d1_c1():
    ext = ext_of(3, "cyclic", ((-1, 1),), ((-7, 1),))
    T = ext.tower
    b1 = ext.beta1
    x1 = T.x1_k1
    assert c1_element(ext) == -(x1 * x1) - x1
    assert d1_element(ext) == -(x1 * x1) * b1 - x1 * (b1 * b1)
    assert k1_valuation(d1_element(ext), ext) == -(9 - 3 + 1) * ext.b1
    assert k1_valuation(c1_element(ext), ext) == -2 * ext.b1
    e2 = ext_of(2, "cyclic", ((-1, 1),), ((-3, 1),))
    assert c1_element(e2) == e2.tower.x1_k1
    assert d1_element(e2) == e2.tower.x1_k1 * e2.beta1
    with pytest.raises(ValueError):
        d1_element(ext_of(*CASES["c3xc3_running"]))


def test_defining_relations():
    ext = ext_of(3, "cyclic", ((-1, 1),), ((-7, 1),))
    T = ext.tower
    assert T.x1 * T.x1 ** 2 == T.x1 + T.lift(ext.beta1)
    x2 = T.top
    assert x2 * x2 ** 2 == x2 + T.lift(d1_element(ext)) + T.lift(ext.beta2)
    assert T.one * x2 == x2
    # prod_k (x2 + k) = wp(x2)
    prod = T.one
    for k in range(3):
        prod = prod * (x2 + k)
    assert prod == x2 ** 3 - x2


def test_generator_actions():
    ext = ext_of(3, "cyclic", ((-1, 1),), ((-7, 1),))
    T = ext.tower
    assert galois_apply("sigma2", T.top, ext) == T.top + 1
    assert galois_apply("sigma1", T.x1, ext) == T.x1 + 1
    assert galois_apply("sigma2", T.x1, ext) == T.x1


@pytest.mark.parametrize("name", ["c9_running", "c3xc3_mu2", "c4_small", "c2xc2", "c25"])
def test_automorphism_laws(name):
    ext = ext_of(*CASES[name])
    T, p = ext.tower, ext.p
    rng = random.Random(7)
    for _ in range(5):
        a, b = k2_random(ext, rng), k2_random(ext, rng)
        for s in (T.sigma1, T.sigma2):
            assert s(a * b) == s(a) * s(b)
            assert s(a + b) == s(a) + s(b)
        assert T.sigma1(T.sigma2(a)) == T.sigma2(T.sigma1(a))
        s1p = a
        for _ in range(p):
            s1p = T.sigma1(s1p)
        s2p = a
        for _ in range(p):
            s2p = T.sigma2(s2p)
        assert s2p == a
        if ext.kind is ExtensionKind.CYCLIC:
            assert s1p == T.sigma2(a)
        else:
            assert s1p == a


def test_sigma1_p_on_x2_adds_one():
    for name in ("c9_running", "c4_small", "c25"):
        ext = ext_of(*CASES[name])
        T = ext.tower
        v = T.top
        for _ in range(ext.p):
            v = T.sigma1(v)
        assert v == T.top + 1


def test_x2_tilde():
    ext = ext_of(3, "cyclic", ((-1, 1),), ((-7, 1),))
    X2 = x2_tilde(ext)
    T = ext.tower
    assert X2 == T.top - T.x1 * S(3, [(-2, 1)])
    assert k2_valuation(X2, ext) == -19
    assert norm_to_k1(X2, ext) == (X2 ** 3 - X2).c[0]
    e2 = ext_of(2, "cyclic", ((-1, 1),), ((-3, 1),))
    assert e2.b2 == 5 and k2_valuation(x2_tilde(e2), e2) == -5
    ab = ext_of(3, "abelian", ((-1, 1),), ((-5, 1),))
    assert ab.mu.is_zero() and x2_tilde(ab, verify=False) == ab.tower.top


def test_x2_tilde_guard():
    ext = ext_of(2, "cyclic", ((-3, 1),), ((-5, 1),))
    if not ext.x2_ok:
        with pytest.raises(HypothesisViolated):
            x2_tilde(ext)


def test_alpha_basis_examples():
    ext = ext_of(3, "cyclic", ((-1, 1),), ((-7, 1),))
    T = ext.tower
    g = to_alpha_basis(T.one, ext)
    assert g[0][0] == 1 and all(g[i][j].is_zero() for i in range(3) for j in range(3) if (i, j) != (0, 0))
    g = to_alpha_basis(T.top, ext)
    assert g[1][0] == 1 and g[0][1] == ext.mu
    g = to_alpha_basis(T.binomial(T.x1, 2), ext)
    assert g[0][2] == 1
    assert k2_valuation(T.x1, ext) == -3
    assert k2_valuation(alpha(ext, 2, 2), ext) == -44


@pytest.mark.parametrize("name", ["c9_running", "c3xc3_mu2", "c4_small", "c25"])
def test_alpha_roundtrip(name):
    ext = ext_of(*CASES[name])
    rng = random.Random(3)
    for _ in range(5):
        a = k2_random(ext, rng)
        assert from_alpha_basis(to_alpha_basis(a, ext), ext) == a


@pytest.mark.parametrize("name", ["c9_running", "c3xc3_running", "c9_mu2", "c4_small", "c2xc2"])
def test_valuation_matches_norm_oracle(name):
    ext = ext_of(*CASES[name])
    rng = random.Random(11)
    for _ in range(8):
        a = k2_random(ext, rng)
        if all(c.is_zero() for row in a.grid() for c in row):
            continue
        assert k2_valuation(a, ext) == valuation_by_norm(a, ext.tower)
        assert k1_valuation(norm_to_k1(a, ext), ext) == k2_valuation(a, ext)


def test_sample_with_valuation():
    ext, _ = case("c9_running")
    for seed in range(5):
        a = sample_with_valuation(ext, 1, seed)
        assert k2_valuation(a, ext) % 9 == 1
    a = sample_with_valuation(ext, 1, 0, noise=False)
    grid = to_alpha_basis(a, ext)
    nz = [(i, j) for i in range(3) for j in range(3) if not grid[i][j].is_zero()]
    assert nz == [(2, 2)] and len(grid[2][2].terms) == 1


def test_binomial_components_p3():
    ext = ext_of(*CASES["c9_mu2"])
    nu = binomial_components(ext)
    b1 = ext.beta1
    recon = nu[1].frobenius() * b1 + nu[2].frobenius() * (b1 * (b1 - 1) * 2)
    red, _ = as_reduce_k0(ext.beta2 - recon)
    assert all(e >= 0 for e in red.terms)


@given(st.integers(1, 12).filter(lambda b: b % 3), st.integers(1, 6))
def test_break_formula_cyclic_integers(b1, k):
    beta1 = S(3, [(-b1, 1)])
    u = 3 * b1 + 3 * k + 1 if (3 * b1 + 3 * k + 1) % 3 else 3 * b1 + 3 * k + 2
    ext = build_extension(3, "cyclic", beta1, S(3, [(-u, 1)]))
    assert ext.b2 == max(7 * b1, 3 * u - 2 * b1)
    if ext.hypotheses_hold:
        assert (ext.b2 - ext.b1) % 9 == 0
