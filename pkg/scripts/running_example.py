"""Full pipeline on one extension: breaks, scaffold law, order data and Theta congruences."""

import argparse
import json

from galscaffold import symbolic
from galscaffold.extension import build_extension
from galscaffold.galois_module import associated_order_basis
from galscaffold.group_algebra import build_scaffold
from galscaffold.scaffold_verify import verify_valuation_law
from galscaffold.series import LaurentSeries


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=int, default=3)
    ap.add_argument("--kind", default="cyclic")
    ap.add_argument("--beta1", default="[[-1, 1]]")
    ap.add_argument("--beta2", default="[[-7, 1]]")
    ap.add_argument("--trials", type=int, default=50)
    args = ap.parse_args(argv)
    p = args.p
    ext = build_extension(p, args.kind, LaurentSeries.from_pairs(p, json.loads(args.beta1)),
                          LaurentSeries.from_pairs(p, json.loads(args.beta2)))
    print(json.dumps(ext.summary(), sort_keys=True))
    sc = build_scaffold(ext)
    law = verify_valuation_law(ext, sc, trials=args.trials)
    print("shifts", law.law_checked, "verdict", law.verdict)
    rep = associated_order_basis(ext, sc)
    print("d", rep.d, "w", rep.w, "free", rep.free, "oracle", rep.oracle_agrees, "generator", rep.generator_ok)
    if p == 3:
        print("Theta congruences", symbolic.verify_scaffold_congruence_numeric(ext))


if __name__ == "__main__":
    main()
