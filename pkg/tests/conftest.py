from __future__ import annotations

import sys
from functools import lru_cache
from pathlib import Path

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from galscaffold.extension import build_extension  # noqa: E402
from galscaffold.group_algebra import build_scaffold  # noqa: E402
from galscaffold.series import LaurentSeries  # noqa: E402

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def S(p, pairs, prec=float("inf")):
    return LaurentSeries.from_pairs(p, pairs, prec)


# extensions used across the suite: (p, kind, beta1 pairs, beta2 pairs)
RUNNING = (3, "cyclic", ((-1, 1),), ((-7, 1),))
CASES = {
    "c9_running": RUNNING,
    "c3xc3_running": (3, "abelian", ((-1, 1),), ((-7, 1),)),
    "c9_mu2": (3, "cyclic", ((-1, 1),), ((-7, 1), (-5, 2), (-4, 1))),
    "c3xc3_mu2": (3, "abelian", ((-1, 1),), ((-7, 1), (-5, 2), (-4, 1))),
    "c9_b1_2": (3, "cyclic", ((-2, 1),), ((-23, 1),)),
    "c9_nonfree": (3, "cyclic", ((-5, 1),), ((-20, 1),)),
    "c4_small": (2, "cyclic", ((-1, 1),), ((-3, 1),)),
    "c4_b1_3": (2, "cyclic", ((-3, 1),), ((-15, 1), (-1, 1))),
    "c2xc2": (2, "abelian", ((-1, 1),), ((-5, 1),)),
    "c25": (5, "cyclic", ((-1, 1),), ((-6, 1),)),
}


@lru_cache(maxsize=None)
def ext_of(p, kind, beta1, beta2, precision=None):
    return build_extension(p, kind, S(p, beta1), S(p, beta2), precision)


@lru_cache(maxsize=None)
def case(name):
    ext = ext_of(*CASES[name])
    return ext, build_scaffold(ext)


@st.composite
def laurent(draw, p, min_exp=-8, max_exp=6, max_terms=4):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        e = draw(st.integers(min_exp, max_exp))
        terms[e] = draw(st.integers(1, p - 1))
    return LaurentSeries(p, terms)


def k2_random(ext, rng, terms=4, emin=-3, emax=3):
    """Exact random K_2 element with few-term coefficients."""
    p = ext.p
    grid = [[LaurentSeries.zero(p)] * p for _ in range(p)]
    for _ in range(terms):
        i, j = rng.randrange(p), rng.randrange(p)
        grid[i][j] = grid[i][j] + LaurentSeries.monomial(p, rng.randint(emin, emax), rng.randrange(1, p))
    return ext.tower.k2(grid)
