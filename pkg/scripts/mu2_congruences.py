"""Numeric Theta_j congruences for p = 3 extensions with nu_2 != 0.

beta2 = nu_1^3 beta1 + nu_2^3 binom(beta1, 2) with beta1 = t^-b1, nu_1 = t^-m1 and
nu_2 = t^-m2; prints whether the scaffold hypotheses hold and whether the congruences do.
"""

import itertools

from galscaffold.errors import GalScaffoldError
from galscaffold.extension import build_extension
from galscaffold.series import LaurentSeries, series_binomial
from galscaffold.symbolic import numeric_case, verify_scaffold_congruence_numeric


def main():
    print("kind     b1 m1 m2  b2  hyp  nu2!=0  congruence")
    for kind, b1, m1, m2 in itertools.product(["cyclic", "abelian"], [1, 2], [2, 3, 5], [0, 1, 2]):
        beta1 = LaurentSeries.monomial(3, -b1)
        nu1 = LaurentSeries.monomial(3, -m1)
        nu2 = LaurentSeries.monomial(3, -m2) if m2 else LaurentSeries.zero(3)
        beta2 = nu1.frobenius() * beta1 + nu2.frobenius() * series_binomial(beta1, 2)
        try:
            ext = build_extension(3, kind, beta1, beta2)
        except GalScaffoldError as exc:
            print(f"{kind:8s} {b1:2d} {m1:2d} {m2:2d}  {type(exc).__name__}")
            continue
        if not ext.hypotheses_hold:
            print(f"{kind:8s} {b1:2d} {m1:2d} {m2:2d} {ext.b2:3d}  no")
            continue
        nz = not numeric_case(ext).mu2.is_zero()
        ok = verify_scaffold_congruence_numeric(ext)["ok"]
        print(f"{kind:8s} {b1:2d} {m1:2d} {m2:2d} {ext.b2:3d}  yes  {nz!s:6s}  {ok}")


if __name__ == "__main__":
    main()
