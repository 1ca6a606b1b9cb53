"""Write deterministic JSON snapshots for a grid of (kind, n, seed, atom) runs.

Re-running with the same arguments must reproduce every file byte for byte.
"""

import argparse
from pathlib import Path

from seqphoton.cli import main as cli_main


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("out_dir")
    ap.add_argument("--n", type=int, nargs="+", default=[2, 4, 6])
    ap.add_argument("--seeds", type=int, nargs="+", default=[0, 1])
    args = ap.parse_args(argv)

    out = Path(args.out_dir)
    status = 0
    for atom in ("abstract", "ca40", "rb87"):
        for kind in ("ghz", "cluster"):
            for n in args.n:
                for seed in args.seeds:
                    path = out / f"{atom}_{kind}_n{n}_s{seed}.json"
                    status |= cli_main(["simulate", "--kind", kind, "--n", str(n), "--seed", str(seed),
                                        "--atom", atom, "--out", str(path)])
    return status


if __name__ == "__main__":
    raise SystemExit(main())
