"""Acceptance criteria 1-7, each printing a single PASS/FAIL line."""

import random
import time

import pytest

from conftest import CASES, S, case, ext_of
from oracles import valuation_by_norm
from galscaffold import symbolic as sy
from galscaffold.errors import DegenerateData, NotFullyRamified
from galscaffold.extension import (
    ExtensionKind,
    build_extension,
    k1_valuation,
    k2_valuation,
    norm_to_k1,
)
from galscaffold.galois_module import associated_order_basis, freeness_by_r, freeness_by_w, survey_rows
from galscaffold.group_algebra import build_scaffold, scaffold_invariant_failures
from galscaffold.scaffold_verify import c4_floor_equivalence, verify_valuation_law
from galscaffold.series import LaurentSeries, as_reduce_k0, series_binomial, wp_apply


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\nCRITERION {n}: {'PASS' if ok else 'FAIL'} - {detail}")
        return ok
    return emit


def test_criterion_1_running_example(report):
    t0 = time.perf_counter()
    ext = build_extension(3, "cyclic", S(3, [(-1, 1)]), S(3, [(-7, 1)]))
    sc = build_scaffold(ext)
    law = verify_valuation_law(ext, sc, trials=50, seed=0)
    shifts = {(i, j): s for i, j, s in law.law_checked}
    order = associated_order_basis(ext, sc, seed=0)
    elapsed = time.perf_counter() - t0
    checks = {
        "breaks": (ext.b1, ext.u2_star, ext.b2) == (1, 7, 19),
        "mu/eps": ext.mu == S(3, [(-2, 1)]) and ext.eps.is_zero(),
        "hypotheses": ext.hyp_2_3 is True and ext.hyp_2_4 is True,
        "law": law.verdict and law.trials >= 50 and shifts[(0, 1)] == 3 and shifts[(1, 0)] == 19,
        "d": order.d == [2, 2, 2, 4, 4, 4, 6, 6, 7],
        "w": order.w == [0, 0, 0, 2, 2, 2, 4, 4, 5],
        "free": order.r == 1 and order.free_by_w and order.free_by_r,
        "generator": bool(order.generator_ok),
        "time": elapsed < 10,
    }
    ok = all(checks.values())
    report(1, ok, f"running example, failed={[k for k, v in checks.items() if not v]}, {elapsed:.2f}s")
    assert ok


def test_criterion_2_equivalence_sweep(report):
    t0 = time.perf_counter()
    rows = bad = 0
    for p in (2, 3, 5):
        for r in survey_rows(p, 1, 50, 200):
            rows += 1
            bad += not (r["free_by_w"] == r["free_by_r"] and r["cond_2_6"] == r["free_by_w"])
    elapsed = time.perf_counter() - t0
    ok = bad == 0 and rows > 0 and elapsed < 60
    report(2, ok, f"{rows} rows, {bad} disagreements, {elapsed:.2f}s")
    assert ok


def test_criterion_3_field_oracle(report):
    names = ["c3xc3_running", "c3xc3_mu2", "c9_running", "c9_mu2", "c4_small", "c4_b1_3"]
    checks = failures = 0
    for name in names:
        ext, sc = case(name)
        rep = associated_order_basis(ext, sc)
        checks += 2 * ext.p ** 2
        failures += len(rep.oracle_failures) + (rep.d_field != rep.d)
    kinds = {(case(n)[0].p, case(n)[0].kind.value) for n in names}
    ok = failures == 0 and {(3, "abelian"), (3, "cyclic"), (2, "cyclic")} <= kinds
    report(3, ok, f"{len(names)} extensions, {checks} membership checks, {failures} mismatches")
    assert ok


def test_criterion_4_symbolic(report):
    t0 = time.perf_counter()
    eps = [r for n in ("C9", "C3xC3") for r in sy.verify_error_terms(n)]
    displayed = [r for r in eps if r["displayed"]]
    theta = sy.verify_theta_products("C9") + sy.verify_theta_products("C3xC3")
    table = sy.verify_c4_table()[:9]
    elapsed = time.perf_counter() - t0
    ok = (len(displayed) == 8 and all(r["zero"] for r in eps) and len(theta) == 6
          and all(r["zero"] for r in theta) and len(table) == 9 and all(r["zero"] for r in table)
          and elapsed < 5)
    nonzero = [r["name"] for r in eps + theta + table if not r["zero"]]
    report(4, ok, f"{len(displayed)} eps displays, {len(theta)} Theta products, {len(table)} table entries, "
                  f"nonzero={nonzero}, {elapsed:.2f}s")
    assert ok


def test_criterion_5_scaffold_properties(report):
    names = ["c9_running", "c3xc3_running", "c9_mu2", "c3xc3_mu2", "c9_b1_2", "c4_small", "c4_b1_3", "c2xc2", "c25"]
    bad = []
    for name in names:
        ext, sc = case(name)
        rep = verify_valuation_law(ext, sc, trials=10 if ext.p < 5 else 3, seed=5)
        if not (rep.residues_complete and rep.regularity_ok and rep.law_ok):
            bad.append(name)
    ok = not bad
    report(5, ok, f"{len(names)} extensions, residue completeness and shift linearity failures={bad}")
    assert ok


def test_criterion_6_p2(report):
    nonfree = []
    count = 0
    for b1 in range(1, 20, 2):
        for m in range(1, 201):
            b2 = b1 + 4 * m
            if b2 <= 4 * b1:
                continue
            count += 1
            if not (freeness_by_w(b1, b2, 2) and freeness_by_r(b2, 2)):
                nonfree.append((b1, b2))
    floor_bad = c4_floor_equivalence(99, 500, breaks_only=True)
    even_bad = c4_floor_equivalence(99, 500, breaks_only=False)
    even_ok = all(b2 == 4 * b1 - 2 for b1, b2 in even_bad)
    field = [associated_order_basis(*case(n)) for n in ("c4_small", "c4_b1_3", "c2xc2")]
    field_ok = all(r.free and r.generator_ok for r in field)
    ok = not nonfree and not floor_bad and even_ok and field_ok
    report(6, ok, f"{count} (b1,b2) pairs all FREE={not nonfree}; floor equivalence on odd b2 "
                  f"mismatches={len(floor_bad)} (even b2 exceptions only at 4b1-2: {even_ok}); "
                  f"field generators={field_ok}")
    assert ok


def _random_extension(rng):
    while True:
        p = rng.choice([2, 3, 5])
        kind = rng.choice(["cyclic", "abelian"])
        b1 = rng.choice([b for b in range(1, 8) if b % p])
        beta1 = LaurentSeries(p, {-b1: rng.randrange(1, p), rng.randint(-b1, 0): rng.randrange(p)})
        e2 = -rng.randint(b1 + 1, 4 * b1 + 6)
        beta2 = LaurentSeries(p, {e2: rng.randrange(1, p), rng.randint(e2, 0): rng.randrange(p)})
        try:
            return build_extension(p, kind, beta1, beta2)
        except (NotFullyRamified, DegenerateData):
            continue


def _rand_series(rng, p, lo=-8, hi=4):
    return LaurentSeries(p, {rng.randint(lo, hi): rng.randrange(1, p) for _ in range(rng.randint(1, 4))})


def _rand_k2(ext, rng):
    p = ext.p
    grid = [[LaurentSeries(p, {rng.randint(-2, 2): rng.randrange(p)}) for _ in range(p)] for _ in range(p)]
    return ext.tower.k2(grid)


def test_criterion_7_invariants(report):
    N = 100
    rng = random.Random(2024)
    fails: dict[str, int] = {}
    counts: dict[str, int] = {}

    def check(name, ok):
        counts[name] = counts.get(name, 0) + 1
        fails[name] = fails.get(name, 0) + (not ok)

    for _ in range(N):
        p = rng.choice([2, 3, 5, 7])
        a, b = _rand_series(rng, p), _rand_series(rng, p)
        check("wp additivity", wp_apply(a + b) == wp_apply(a) + wp_apply(b))
        beta = _rand_series(rng, p, -30, 0)
        red, y = as_reduce_k0(beta)
        check("as_reduce round-trip", red + wp_apply(y) == beta)
        t = rng.randrange(p)
        rhs = LaurentSeries.zero(p)
        for s in range(t + 1):
            rhs = rhs + series_binomial(a, s) * series_binomial(b, t - s)
        check("Vandermonde", series_binomial(a + b, t) == rhs)

    exts = [_random_extension(rng) for _ in range(N)]
    fixed = [ext_of(*CASES[n]) for n in ("c9_running", "c3xc3_mu2", "c4_small", "c2xc2", "c9_mu2")]
    for k in range(N):
        ext = exts[k]
        T = ext.tower
        x, y = _rand_k2(ext, rng), _rand_k2(ext, rng)
        ok = all(s(x * y) == s(x) * s(y) and s(x + y) == s(x) + s(y) for s in (T.sigma1, T.sigma2))
        check("automorphism laws", ok and T.sigma1(T.sigma2(x)) == T.sigma2(T.sigma1(x)))
        s1p = x
        for _ in range(ext.p):
            s1p = T.sigma1(s1p)
        target = T.sigma2(x) if ext.kind is ExtensionKind.CYCLIC else x
        check("sigma1^p consistency", s1p == target)
        sc = build_scaffold(ext, force=True)
        check("Psi relations", scaffold_invariant_failures(sc) == [])
        fx = fixed[k % len(fixed)]
        z = _rand_k2(fx, rng)
        if all(c.is_zero() for row in z.grid() for c in row):
            z = fx.tower.one
        v = k2_valuation(z, fx)
        check("valuation vs norm", v == k1_valuation(norm_to_k1(z, fx), fx) == valuation_by_norm(z, fx.tower))

    ok = all(v == 0 for v in fails.values()) and all(c >= N for c in counts.values())
    report(7, ok, ", ".join(f"{k} {fails[k]}/{counts[k]}" for k in counts))
    assert ok
