"""Walk the C_4 extensions (t^-b1, t^-u) and compare observed scaffolds with b2 >= 4 b1 - 1."""

import argparse

from galscaffold.scaffold_verify import c4_analysis
from galscaffold.series import LaurentSeries


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--b1-max", type=int, default=7)
    ap.add_argument("--u-max", type=int, default=25)
    ap.add_argument("--trials", type=int, default=10)
    args = ap.parse_args(argv)
    seen = set()
    print("b1  u  b2  route     predicted observed consistent")
    for b1 in range(1, args.b1_max + 1, 2):
        for u in [0] + list(range(1, args.u_max + 1, 2)):
            beta2 = LaurentSeries.monomial(2, -u) if u else LaurentSeries.zero(2)
            out = c4_analysis(LaurentSeries.monomial(2, -b1), beta2, trials=args.trials)
            key = (out["b1"], out["b2"])
            if key in seen:
                continue
            seen.add(key)
            print(f"{b1:2d} {u:3d} {out['b2']:3d}  {out['route']:9s} {out['predicted_scaffold']!s:9s} "
                  f"{out['observed_scaffold']!s:8s} {out['consistent']}")


if __name__ == "__main__":
    main()
