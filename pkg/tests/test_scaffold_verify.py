import dataclasses

import pytest

from conftest import CASES, S, case, ext_of
from galscaffold.extension import ExtensionKind, k2_valuation, sample_with_valuation
from galscaffold.group_algebra import GroupAlgebraElement as GA
from galscaffold.scaffold_verify import (
    c4_analysis,
    c4_fallback_check,
    c4_floor_condition,
    c4_floor_equivalence,
    check_c4_sufficiency,
    square_ideal_spot_check,
    residue_table,
    verify_relations,
    verify_valuation_law,
)

VERIFIED = ["c9_running", "c3xc3_running", "c9_mu2", "c3xc3_mu2", "c9_b1_2", "c4_small", "c4_b1_3", "c2xc2"]


@pytest.mark.parametrize("name", VERIFIED)
def test_valuation_law(name):
    ext, sc = case(name)
    rep = verify_valuation_law(ext, sc, trials=12, seed=1)
    assert rep.law_ok, rep.counterexample
    assert rep.regularity_ok and rep.residues_complete
    assert rep.verdict
    shifts = {(i, j): s for i, j, s in rep.law_checked}
    assert shifts[(0, 1)] == ext.p * ext.b1 and shifts[(1, 0)] == ext.b2


def test_running_example_shifts():
    ext, sc = case("c9_running")
    rep = verify_valuation_law(ext, sc, trials=50, seed=0)
    assert rep.verdict and rep.trials == 50
    assert [s for _, _, s in rep.law_checked] == [0, 3, 6, 19, 22, 25, 38, 41, 44]
    assert rep.residues == list(range(9))
    assert rep.to_dict()["quantifier"] == "sampled"


def test_p5_law():
    ext, sc = case("c25")
    assert verify_valuation_law(ext, sc, trials=3, seed=0).verdict


def test_wrong_scaffold_is_caught():
    ext, sc = case("c9_running")
    one = GA.identity(3, "cyclic")
    bad = dataclasses.replace(sc, psi1=GA.sigma1(3, "cyclic") - one)
    rep = verify_valuation_law(ext, bad, trials=5, seed=0)
    assert not rep.law_ok and rep.counterexample is not None


@pytest.mark.parametrize("name", VERIFIED)
def test_relations(name):
    ext, sc = case(name)
    assert verify_relations(ext, sc)


def test_residue_table_complete():
    ext, sc = case("c3xc3_mu2")
    rho = sample_with_valuation(ext, ext.b2 % 9, 4)
    vals = residue_table(ext, sc, rho)
    assert sorted(v % 9 for _, v in vals) == list(range(9))
    v0 = k2_valuation(rho, ext)
    assert all(v - v0 == (a // 3) * ext.b2 + (a % 3) * 3 * ext.b1 for a, v in vals)


@pytest.mark.parametrize("name", ["c9_running", "c3xc3_mu2", "c4_small"])
def test_augmentation_square_never_gives_pb1(name):
    ext, _ = case(name)
    rep = square_ideal_spot_check(ext, samples=25, seed=2)
    assert rep["ok"] and rep["checked"] > 0


def test_c4_floor_equivalence():
    assert c4_floor_equivalence(99, 500) == []
    bad = c4_floor_equivalence(99, 500, breaks_only=False)
    assert bad and all(b2 == 4 * b1 - 2 for b1, b2 in bad)
    assert c4_floor_condition(3, 11) and not c4_floor_condition(3, 9)


@pytest.mark.parametrize("beta1, beta2, route, predicted", [
    ([(-1, 1)], [(0, 0)], "fallback", True),
    ([(-1, 1)], [(-3, 1)], "hypotheses", True),
    ([(-3, 1)], [(-5, 1)], "below", False),
    ([(-3, 1)], [(-7, 1)], "fallback", True),
])
def test_c4_analysis(beta1, beta2, route, predicted):
    out = c4_analysis(S(2, beta1), S(2, beta2), trials=8)
    assert out["route"] == route
    assert out["predicted_scaffold"] == predicted
    assert out["consistent"]
    assert check_c4_sufficiency(S(2, beta1), S(2, beta2))


def test_c4_fallback_direct():
    ext = ext_of(2, "cyclic", ((-3, 1),), ((-7, 1),))
    assert ext.b2 == 4 * ext.b1 - 1
    assert c4_fallback_check(ext, trials=10)


def test_abelian_kind_law_with_nonzero_mu():
    ext, sc = case("c3xc3_mu2")
    assert ext.kind is ExtensionKind.ABELIAN and not ext.mu.is_zero()
    assert verify_valuation_law(ext, sc, trials=8, seed=3).verdict
