"""Tabulate the freeness criteria over a grid of breaks and write a CSV.

    python3 scripts/freeness_survey.py --p 3 --b1-max 30 --m-max 100 --out survey_p3.csv
"""

import argparse
import csv
import sys
from collections import Counter

from galscaffold.galois_module import survey_rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=3)
    ap.add_argument("--b1-max", type=int, default=30)
    ap.add_argument("--m-max", type=int, default=100)
    ap.add_argument("--out", default="-")
    args = ap.parse_args(argv)
    rows = survey_rows(args.p, 1, args.b1_max, args.m_max)
    fh = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    w = csv.DictWriter(fh, fieldnames=list(rows[0]))
    w.writeheader()
    w.writerows(rows)
    if fh is not sys.stdout:
        fh.close()
    by_r = Counter((r["r"], r["free_by_w"]) for r in rows)
    print(f"# {len(rows)} rows, disagreements: {sum(not r['agree'] for r in rows)}", file=sys.stderr)
    for (r, free), n in sorted(by_r.items()):
        print(f"# r={r:3d} free={free!s:5} count={n}", file=sys.stderr)


if __name__ == "__main__":
    main()
