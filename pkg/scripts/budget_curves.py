"""Train success against photon number for several per-photon efficiencies.

Prints one CSV block with a column per efficiency, plus the SPDC curve at
even n.  The efficiencies default to the Ca (chained and direct) and
simulated Rb figures.
"""

import argparse
import csv
import sys

from seqphoton import budget as bd


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--n-max", type=int, default=20)
    ap.add_argument("--with-disconnection", action="store_true")
    args = ap.parse_args(argv)

    models = {
        "ca40_chained": bd.ca40_demonstrated(chained=True),
        "ca40_direct": bd.ca40_demonstrated(chained=False),
        "rb87_simulated": bd.rb87_simulated(),
    }
    w = csv.writer(sys.stdout, lineterminator="\n")
    print("# " + "; ".join(bd.ASSUMPTIONS))
    w.writerow(["n", *models, "spdc"])
    for n in range(1, args.n_max + 1):
        row = [n] + [f"{bd.train_success(m, n, args.with_disconnection):.6e}" for m in models.values()]
        row.append(f"{bd.spdc_success(n):.6e}" if n % 2 == 0 else "")
        w.writerow(row)


if __name__ == "__main__":
    main()
