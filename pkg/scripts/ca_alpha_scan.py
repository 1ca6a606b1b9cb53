"""Scan the Ca polarization angle and write the compiled map per alpha as CSV.

Columns: alpha, isometry defect ||V^dag V - I||, branch weight of |+>,
Clifford frame relating V to the sin/cos map, and the frame distance.
"""

import argparse
import csv
import sys

import numpy as np

from seqphoton.atomic import build_ca40, ca40_reference_map, compile_pulse_sequence
from seqphoton.atomic.pulses import LinearPolarizedExcitation
from seqphoton.clifford import find_isometry_frame


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--step", type=float, default=0.01)
    ap.add_argument("--out", default="-")
    args = ap.parse_args(argv)

    scheme = build_ca40()
    alphas = np.append(np.arange(0.0, np.pi / 2, args.step), np.pi / 2)
    fh = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["alpha", "isometry_defect", "branch_weight", "frame", "frame_distance"])
    for a in alphas:
        c = compile_pulse_sequence(scheme, [LinearPolarizedExcitation(float(a))])
        v = c.matrix
        frame = find_isometry_frame(v, ca40_reference_map(float(a)))
        w.writerow([f"{a:.6f}", f"{np.linalg.norm(v.conj().T @ v - np.eye(2)):.3e}",
                    f"{c.branch_weights[0]:.6f}", frame.describe() if frame else "none",
                    f"{frame.distance:.3e}" if frame else "inf"])
    if fh is not sys.stdout:
        fh.close()


if __name__ == "__main__":
    main()
