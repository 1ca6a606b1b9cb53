"""Dark-state checks for the 87Rb bichromatic excitation."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .levels import LevelScheme
from .pulses import STIRAP_THETA, bichromatic_coupling, stirap_map

DARK_TOL = 1e-12


@dataclass
class Check:
    name: str
    value: float
    tol: float

    @property
    def passed(self) -> bool:
        return bool(self.value < self.tol)


@dataclass
class DarkStateReport:
    eta_plus: np.ndarray
    eta_minus: np.ndarray
    eta_perp: np.ndarray
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def rows(self) -> list[tuple[str, float, float, bool]]:
        return [(c.name, c.value, c.tol, c.passed) for c in self.checks]


def eta_states(scheme: LevelScheme, theta: float = STIRAP_THETA) -> tuple[np.ndarray, np.ndarray]:
    """|eta+-> in the full sublevel basis, defined by |1,+-1> -> +-|eta+->."""
    ground = scheme.ground
    u = stirap_map(theta, scheme)
    out = []
    for sign, k in zip((1, -1), scheme.qubit):
        vec = np.zeros(len(scheme.sublevels), dtype=np.complex128)
        vec[ground] = sign * u[:, ground.index(k)]
        out.append(vec)
    return out[0], out[1]


def dark_state_check(scheme: LevelScheme, theta: float = STIRAP_THETA, tol: float = DARK_TOL) -> DarkStateReport:
    """Verify that |eta+-> only couple to |2',+-2> under the bichromatic drive.

    Checks <2',0|H|eta+->, and with the drive also acting on F' = 1,
    <1',0|H|eta+->.  It also rebuilds |eta_perp> from the <2',0| row of H
    and checks that, restricted to span{|1,+-1>, |2,+-1>}, H is a common
    multiple of |2',2><eta+| + |2',-2><eta-| + |2',0><eta_perp|.
    """
    eta_p, eta_m = eta_states(scheme, theta)
    h = bichromatic_coupling(scheme)
    h_broad = bichromatic_coupling(scheme, include_f1_prime=True)
    e20 = scheme.index("F2'", 0)
    e10 = scheme.index("F1'", 0)
    e2p, e2m = scheme.index("F2'", 2), scheme.index("F2'", -2)

    checks = [
        Check("<2',0|H|eta+>", float(abs(h[e20] @ eta_p)), tol),
        Check("<2',0|H|eta->", float(abs(h[e20] @ eta_m)), tol),
        Check("<1',0|H|eta+> (broadened)", float(abs(h_broad[e10] @ eta_p)), tol),
        Check("<1',0|H|eta-> (broadened)", float(abs(h_broad[e10] @ eta_m)), tol),
    ]

    span = [scheme.index(f, m) for f in ("F1", "F2") for m in (1, -1)]
    mask = np.zeros(len(scheme.sublevels))
    mask[span] = 1.0
    eta_perp = h[e20].conj() * mask
    eta_perp = eta_perp / np.linalg.norm(eta_perp)
    checks += [
        Check("<eta_perp|eta+>", float(abs(np.vdot(eta_perp, eta_p))), tol),
        Check("<eta_perp|eta->", float(abs(np.vdot(eta_perp, eta_m))), tol),
        Check("<eta+|eta->", float(abs(np.vdot(eta_p, eta_m))), tol),
    ]

    # H restricted to the span, rebuilt from the three projectors
    strength = np.linalg.norm(h[e2p] * mask)
    rebuilt = np.zeros_like(h)
    for row, vec in ((e2p, eta_p), (e2m, eta_m), (e20, eta_perp)):
        phase = (h[row] @ vec) / abs(h[row] @ vec)
        rebuilt[row] = strength * phase * vec.conj()
    checks.append(Check("||H|span - rebuilt||", float(np.linalg.norm(h * mask - rebuilt)), 1e-10))

    # the excited image of eta+- must sit entirely on |2',+-2>
    for name, vec, target in (("eta+", eta_p, e2p), ("eta-", eta_m, e2m)):
        img = h_broad @ vec
        img[target] = 0.0
        checks.append(Check(f"leak of H|{name}> off |2',{'+' if target == e2p else '-'}2>",
                            float(np.max(np.abs(img[scheme.excited]))), tol))
    return DarkStateReport(eta_p, eta_m, eta_perp, checks)
