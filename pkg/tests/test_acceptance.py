"""Acceptance suite: one test per primary criterion, each at its stated tolerance.

Every test records a one-line PASS/FAIL verdict (with timing) that is
printed in pytest's terminal summary; running this file directly prints
the same lines.
"""

import math
import time
from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from seqphoton import budget as bd
from seqphoton import statevec as sv
from seqphoton.atomic import (
    build_ca40,
    build_rb87,
    clebsch_gordan,
    dark_state_check,
    derive,
    effective_rabi,
    rb_full_sequence,
    wigner_3j,
)
from seqphoton.protocol import (
    canonical_ghz,
    cluster_stabilizer_generators,
    corrected_state,
    run_protocol,
    t_ghz,
    t_lc,
)

RESULTS: list[str] = []
MU_DRAWS = {0: 0.25, 1: 0.75}  # p(mu = 0) = 1/2 for both kinds


def record(number: int, title: str, ok: bool, detail: str, seconds: float) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} | {detail} | {seconds * 1e3:.1f} ms"
    RESULTS.append(line)
    print(line)


def test_criterion_1_isometry_identity():
    s = 1 / math.sqrt(2)
    ghz_cols = np.array([[1, 0], [0, 0], [0, 0], [0, -1]], dtype=complex)
    lc_cols = np.array([[s, -s], [0, 0], [0, 0], [-s, -s]], dtype=complex)
    best = math.inf
    for _ in range(20):
        t0 = time.perf_counter()
        g, l = t_ghz(), t_lc()
        d_ghz = np.linalg.norm(g.conj().T @ g - np.eye(2))
        d_lc = np.linalg.norm(l.conj().T @ l - np.eye(2))
        exact = np.array_equal(g, ghz_cols) and np.array_equal(l, lc_cols)
        best = min(best, time.perf_counter() - t0)
    ok = d_ghz < 1e-12 and d_lc < 1e-12 and exact and best < 1e-3
    record(1, "isometry identity", ok,
           f"||V^dag V - I|| ghz {d_ghz:.1e}, lc {d_lc:.1e}; columns exact {exact}", best)
    assert ok


def test_criterion_2_ghz_pipeline():
    t0 = time.perf_counter()
    worst = 0.0
    for n in range(1, 13):
        for mu, draw in MU_DRAWS.items():
            run = run_protocol("ghz", n, draw)
            assert run.mu == mu
            worst = max(worst, 1 - sv.fidelity(corrected_state(run), canonical_ghz(n, 0)))
    dt = time.perf_counter() - t0
    ok = worst <= 1e-10 and dt < 2.0
    record(2, "GHZ pipeline N=1..12, both mu", ok, f"max(1 - F) = {worst:.1e}", dt)
    assert ok


def _sign_function_oracle(m: int) -> np.ndarray:
    """(-1)^{i'_1 i'_2 + ... + i'_{m-1} i'_m + i'_m} / 2^{m/2} on |i_m>_atom |i_m ... i_1>."""
    out = np.zeros(2 ** (m + 1))
    for idx in range(2 ** m):
        b = [(idx >> k) & 1 for k in range(m)]
        e = sum(b[k] * b[k + 1] for k in range(m - 1)) + b[-1]
        out[(b[-1] << m) | idx] = (-1) ** e
    return out / 2 ** (m / 2)


def test_criterion_3_cluster_pipeline():
    oracles = {n: _sign_function_oracle(n + 1) for n in range(2, 13)}
    t0 = time.perf_counter()
    worst_stab = worst_hybrid = 0.0
    count = 0
    for n in range(2, 13):
        gens = cluster_stabilizer_generators(n)
        for mu, draw in MU_DRAWS.items():
            run = run_protocol("cluster", n, draw)
            assert run.mu == mu
            out = corrected_state(run)
            vals = [sv.pauli_expectation(out, g) for g in gens]
            count += len(vals)
            worst_stab = max(worst_stab, max(abs(v - 1) for v in vals))
            worst_hybrid = max(worst_hybrid, float(np.max(np.abs(run.hybrid_state.amps - oracles[n]))))
    dt = time.perf_counter() - t0
    ok = worst_stab <= 1e-10 and worst_hybrid <= 1e-12 and dt < 5.0
    record(3, "cluster pipeline N=2..12, both mu", ok,
           f"{count} stabilizers, max|<K>-1| = {worst_stab:.1e}; hybrid max err {worst_hybrid:.1e}", dt)
    assert ok


def test_criterion_4_ca_derivation():
    t0 = time.perf_counter()
    d0 = derive("ca40", "ghz", alpha=0.0)
    d1 = derive("ca40", "lc", alpha=math.pi / 4)
    dt = time.perf_counter() - t0
    ok = d0.passed and d1.passed and d0.distance < 1e-10 and d1.distance < 1e-10
    record(4, "Ca derivation", ok,
           f"alpha=0 -> T_GHZ [{d0.frame.describe()}] {d0.distance:.1e}; "
           f"alpha=pi/4 -> T_LC [{d1.frame.describe()}] {d1.distance:.1e}", dt)
    assert ok


def test_criterion_5_rb_derivation():
    t0 = time.perf_counter()
    rep = dark_state_check(build_rb87())
    dark = {name: value for name, value, _, _ in rep.rows() if "|H|" in name and name.startswith("<")}
    d_ghz = float(np.linalg.norm(rb_full_sequence("ghz").matrix - t_ghz()))
    d_lc = float(np.linalg.norm(rb_full_sequence("lc").matrix - t_lc()))
    dt = time.perf_counter() - t0
    ok = len(dark) == 4 and max(dark.values()) < 1e-12 and d_ghz < 1e-10 and d_lc < 1e-10
    record(5, "Rb dark states and full sequences", ok,
           f"max dark element {max(dark.values()):.1e}; ||V-T_GHZ|| {d_ghz:.1e}, ||V-T_LC|| {d_lc:.1e}", dt)
    assert ok


def test_criterion_6_effective_rabi():
    t0 = time.perf_counter()
    errs, tails = [], []
    for w in (0.1, 1.0, 2 * math.pi * 817e6):
        errs.append(abs(effective_rabi(w / 2, w) - (4 / 3) / w) * w)  # relative to 1/w
        tails.append(effective_rabi(1e6 * w, w) * w)
    dt = time.perf_counter() - t0
    ok = max(errs) <= 1e-12 and max(tails) < 1e-6
    record(6, "effective Rabi", ok,
           f"|R(w/2) - 4/(3w)| * w <= {max(errs):.1e}; R(1e6 w) * w = {max(tails):.1e}", dt)
    assert ok


def test_criterion_7_budget_arithmetic():
    t0 = time.perf_counter()
    p10 = bd.train_success(bd.rb87_simulated(), 10)
    f10 = bd.min_per_photon_fidelity(10, "ghz")
    tol_hi = bd.loss_tolerance_check(bd.EfficiencyModel.direct(0.74))
    tol_lo = bd.loss_tolerance_check(bd.EfficiencyModel.direct(0.167))
    est = bd.monte_carlo_yield(bd.rb87_simulated(), 10, 1_000_000, seed=2024)
    dt = time.perf_counter() - t0
    sigma = math.sqrt(p10 * (1 - p10) / est.shots)
    mc_ok = abs(est.heralded_fraction - p10) <= 5 * sigma
    # 0.53^(1/10) checked against an independent evaluation; see the
    # literal-anchor test below for the stated 0.93846
    f10_ref = math.exp(math.log(0.53) / 10)
    ok = (abs(p10 - 0.04924) <= 1e-5 and abs(f10 - f10_ref) <= 1e-12 and tol_hi and not tol_lo
          and mc_ok and dt < 10.0)
    record(7, "budget arithmetic", ok,
           f"0.74^10 = {p10:.6f}; 0.53^(1/10) = {f10:.7f}; loss-tolerant(0.74, 0.167) = ({tol_hi}, {tol_lo}); "
           f"MC {est.heralded_fraction:.6f} vs {p10:.6f} ({abs(est.heralded_fraction - p10) / sigma:.2f} sigma)", dt)
    assert ok


@pytest.mark.xfail(strict=True, reason="stated anchor 0.93846 is mis-rounded: 0.53^(1/10) = 0.9384855")
def test_criterion_7_literal_fidelity_anchor():
    f10 = bd.min_per_photon_fidelity(10, "ghz")
    ok = abs(f10 - 0.93846) <= 1e-5
    record(7, "literal anchor 0.53^(1/10) = 0.93846 +- 1e-5", ok,
           f"computed {f10:.7f}, off by {abs(f10 - 0.93846):.2e} (expected failure, see notes)", 0.0)
    assert ok


def _ms(j):
    return [j - k for k in range(int(2 * j) + 1)]


def test_criterion_8_wigner_machinery():
    t0 = time.perf_counter()
    worst = 0.0
    halves = [Fraction(k, 2) for k in range(6)]
    for j1, j2 in product(halves, repeat=2):
        lo, hi = abs(j1 - j2), j1 + j2
        for j3 in [lo + k for k in range(int(hi - lo) + 1)]:
            if j3 > Fraction(5, 2):
                continue
            for m3 in _ms(j3):
                s = sum((2 * j3 + 1) * wigner_3j(j1, j2, j3, m1, m2, m3) ** 2
                        for m1, m2 in product(_ms(j1), _ms(j2)) if m1 + m2 + m3 == 0)
                worst = max(worst, abs(s - 1))
    h = Fraction(1, 2)
    cg_flip = clebsch_gordan(h, h, 1, 0, h, h) == -clebsch_gordan(h, -h, 1, 0, h, -h) != 0
    ca = build_ca40()
    up = ca.amplitude(ca.index("P", h), ca.index("S", -h), 1)
    down = ca.amplitude(ca.index("P", -h), ca.index("S", h), -1)
    decay_flip = abs(up + down) < 1e-15 and up != 0
    dt = time.perf_counter() - t0
    ok = worst <= 1e-12 and cg_flip and decay_flip
    record(8, "Wigner machinery", ok,
           f"max |orthogonality - 1| = {worst:.1e} (j <= 5/2); CG sign flip {cg_flip}; "
           f"Ca sigma decay amplitudes {up:+.4f} / {down:+.4f}", dt)
    assert ok


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
