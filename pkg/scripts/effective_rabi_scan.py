"""Effective Raman coupling 1/D - 1/(D + w) on a log grid, with the CG-summed value.

The second column comes from summing the two excited-state paths with
their Clebsch-Gordan amplitudes; the ratio column stays at -1/24.
"""

import numpy as np

from seqphoton.atomic import build_rb87, effective_rabi, raman_coupling


def main():
    rb = build_rb87()
    print("delta_over_w,effective_rabi_w,cg_sum_w,ratio")
    for d in np.geomspace(1e-2, 1e4, 25):
        r = effective_rabi(d, 1.0)
        c = raman_coupling(rb, d, 1.0)
        print(f"{d:.4e},{r:.6e},{c:.6e},{c / r:.6f}")


if __name__ == "__main__":
    main()
