"""Compile laser-pulse recipes into effective emission isometries.

A recipe is a list of pulse steps.  Ground-manifold steps (STIRAP, Raman
rotation) act as net unitaries; the final step is a resonant excitation,
after which each excited sublevel decays into the cavity.  Only decays
that are cavity-resonant and carry a cavity-supported polarization are
kept; everything else shows up in the branch weights, and the kept map is
renormalized to an exact isometry.

Photon bit convention matches ``statevec``: sigma+ (q = +1) is 0, sigma-
(q = -1) is 1.  The global -i of a resonant pi pulse is dropped.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm, sqrtm

from ..statevec import OPERATOR_TOL
from .levels import LevelScheme

#: STIRAP rotation angle at which |1,+-1> -> +-|eta+->.  Equal, up to a
#: global sign on the qubit manifold, to a partial transfer of 1/4.
STIRAP_THETA = 5 * np.pi / 6

SIGMA_PLUS, SIGMA_MINUS = 1, -1
PHOTON_BIT = {SIGMA_PLUS: 0, SIGMA_MINUS: 1}


class PulseCompilationError(ValueError):
    pass


@dataclass(frozen=True)
class LinearPolarizedExcitation:
    """Single resonant color, linear polarization at ``alpha`` to the cavity axis."""

    alpha: float
    area: float = np.pi


@dataclass(frozen=True)
class Stirap:
    theta: float = STIRAP_THETA


@dataclass(frozen=True)
class BichromaticExcitation:
    """Two equal-amplitude colors (F=1 -> F'=2 and F=2 -> F'=2), transverse linear polarization."""

    area: float = np.pi


@dataclass(frozen=True)
class RamanRotation:
    area: float = np.pi / 2
    detuning: float | None = None  # from 1 <-> 1', in units of omega0p
    omega0p: float | None = None


PulseStep = LinearPolarizedExcitation | Stirap | BichromaticExcitation | RamanRotation
EXCITATIONS = (LinearPolarizedExcitation, BichromaticExcitation)


def spherical_components(alpha: float) -> dict[int, complex]:
    """Coupling weights c_q in d.eps = sum_q c_q d_q for eps = sin(a) x + cos(a) z.

    With eps_{+-1} = -+(eps_x +- i eps_y)/sqrt(2), d.eps = sum_q (-1)^q eps_{-q} d_q.
    """
    ex, ez = np.sin(alpha), np.cos(alpha)
    eps = {1: -ex / np.sqrt(2), -1: ex / np.sqrt(2), 0: ez}
    return {q: (-1) ** q * eps[-q] for q in (-1, 0, 1)}


def coupling_matrix(scheme: LevelScheme, colors, weights: dict[int, complex]) -> np.ndarray:
    """Excitation operator as a full (n x n) matrix, upper <- lower block only.

    ``colors`` lists (lower manifold, upper manifold) pairs that the laser
    addresses resonantly; all of them share the polarization ``weights``.
    """
    n = len(scheme.sublevels)
    h = np.zeros((n, n), dtype=np.complex128)
    colors = set(colors)
    for (u, l, q), amp in scheme.transitions.items():
        pair = (scheme.sublevels[l].manifold, scheme.sublevels[u].manifold)
        if pair in colors:
            h[u, l] += weights.get(q, 0.0) * amp
    return h


def _require_hyperfine(scheme: LevelScheme, step) -> None:
    if not (scheme.manifold("F1") and scheme.manifold("F2") and scheme.manifold("F1'")):
        raise PulseCompilationError(f"{type(step).__name__} needs a hyperfine scheme with F=1, F=2 and F'=1")


def stirap_map(theta: float, scheme: LevelScheme) -> np.ndarray:
    """Net ground-manifold unitary of the |1,m> <-> |2,m> STIRAP (m = +-1).

    Each m = +-1 pair is rotated by s_m * theta, |1,m> -> cos|1,m> + sin|2,m>,
    where the sense s_m = -sign(<1',m|d_0|1,m><1',m|d_0|2,m>) comes from the
    pi-polarized couplings through F' = 1, as for a dark-state passage.
    The Clebsch-Gordan signs make s_{+1} = -s_{-1}.
    """
    ground = scheme.ground
    pos = {k: i for i, k in enumerate(ground)}
    u = np.eye(len(ground), dtype=np.complex128)
    for m in (-1, 1):
        a, b = scheme.index("F1", m), scheme.index("F2", m)
        mid = scheme.index("F1'", m)
        prod = scheme.amplitude(mid, a, 0) * scheme.amplitude(mid, b, 0)
        if prod == 0:
            continue
        ang = -np.sign(prod) * theta
        c, s = np.cos(ang), np.sin(ang)
        ia, ib = pos[a], pos[b]
        u[ia, ia], u[ib, ia] = c, s
        u[ia, ib], u[ib, ib] = -s, c
    return u


def raman_rotation_map(area: float) -> np.ndarray:
    """Rotation on (|1,+1>, |1,-1>): area pi/2 gives |1,+-1> -> (+-|1,1> + |1,-1>)/sqrt(2)."""
    c, s = np.cos(area / 2), np.sin(area / 2)
    return np.array([[c, -s], [s, c]], dtype=np.complex128)


def _raman_ground_map(area: float, scheme: LevelScheme) -> np.ndarray:
    ground = scheme.ground
    pos = {k: i for i, k in enumerate(ground)}
    u = np.eye(len(ground), dtype=np.complex128)
    ip, im = pos[scheme.qubit[0]], pos[scheme.qubit[1]]
    r = raman_rotation_map(area)
    u[np.ix_([ip, im], [ip, im])] = r
    return u


def effective_rabi(delta: float, omega0p: float) -> float:
    """1/delta - 1/(delta + omega0p): Raman coupling via |1',0> and |2',0>."""
    if delta <= 0:
        raise ValueError(f"detuning must be positive, got {delta}")
    if omega0p <= 0:
        raise ValueError(f"hyperfine splitting must be positive, got {omega0p}")
    return 1.0 / delta - 1.0 / (delta + omega0p)


def raman_coupling(scheme: LevelScheme, delta: float, omega0p: float) -> float:
    """Two-photon |1,+1> <-> |1,-1> coupling summed over |1',0> and |2',0>.

    Each path contributes <e|d_-1|1,+1> <e|d_+1|1,-1> / detuning(e), with
    the laser detuned by ``delta`` from 1 <-> 1' and ``delta + omega0p``
    from 1 <-> 2'.  The opposite signs of the two paths reproduce
    ``effective_rabi`` up to a constant factor.
    """
    _require_hyperfine(scheme, RamanRotation())
    plus, minus = scheme.qubit
    total = 0.0
    for manifold, det in (("F1'", delta), ("F2'", delta + omega0p)):
        e = scheme.index(manifold, 0)
        total += scheme.amplitude(e, plus, -1) * scheme.amplitude(e, minus, 1) / det
    return total


def bichromatic_coupling(scheme: LevelScheme, include_f1_prime: bool = False) -> np.ndarray:
    """Bichromatic sigma+/sigma- drive on 1 -> 2' and 2 -> 2'.

    Equal amplitudes and zero relative optical phase, with the polarization
    linear and perpendicular to the cavity axis.  ``include_f1_prime`` adds
    the same colors acting on F' = 1, as happens when the laser linewidth
    is comparable to the 1'-2' splitting.
    """
    colors = [("F1", "F2'"), ("F2", "F2'")]
    if include_f1_prime:
        colors += [("F1", "F1'"), ("F2", "F1'")]
    return coupling_matrix(scheme, colors, spherical_components(np.pi / 2))


@dataclass
class CompiledIsometry:
    matrix: np.ndarray  # 4x2, exact isometry
    raw: np.ndarray  # cavity-projected map before renormalization
    branch_weights: np.ndarray  # per qubit input: probability of the kept channel
    excitation_probability: np.ndarray  # per qubit input
    steps: tuple = ()
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        def pairs(m):
            return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(m)]

        return {
            "rows": ["+,s+", "+,s-", "-,s+", "-,s-"],
            "columns": ["+", "-"],
            "matrix": pairs(self.matrix),
            "raw": pairs(self.raw),
            "branch_weights": [float(w) for w in self.branch_weights],
            "excitation_probability": [float(p) for p in self.excitation_probability],
            "steps": [repr(s) for s in self.steps],
            "notes": list(self.notes),
        }


def _excitation_hamiltonian(scheme: LevelScheme, step) -> np.ndarray:
    if isinstance(step, LinearPolarizedExcitation):
        if not 0.0 <= step.alpha <= np.pi / 2 + 1e-12:
            raise PulseCompilationError(f"alpha must lie in [0, pi/2], got {step.alpha}")
        return coupling_matrix(scheme, scheme.cavity_transitions, spherical_components(step.alpha))
    _require_hyperfine(scheme, step)
    return bichromatic_coupling(scheme)


def compile_pulse_sequence(scheme: LevelScheme, steps, cavity_polarizations=(SIGMA_PLUS, SIGMA_MINUS),
                           tol: float = 1e-12) -> CompiledIsometry:
    """Effective qubit -> (qubit (x) photon) map of a pulse recipe."""
    steps = tuple(steps)
    if not steps or not isinstance(steps[-1], EXCITATIONS):
        raise PulseCompilationError("a recipe must end with an excitation step")
    if any(isinstance(s, EXCITATIONS) for s in steps[:-1]):
        raise PulseCompilationError("only the final step may be an excitation")
    cavity_polarizations = tuple(cavity_polarizations)
    if not set(cavity_polarizations) <= {SIGMA_PLUS, SIGMA_MINUS}:
        raise PulseCompilationError("the cavity supports only sigma+ and sigma- photons")

    n = len(scheme.sublevels)
    ground = scheme.ground
    qubit_cols = np.zeros((len(ground), 2), dtype=np.complex128)
    for c, k in enumerate(scheme.qubit):
        qubit_cols[ground.index(k), c] = 1.0

    notes = []
    for step in steps[:-1]:
        if isinstance(step, Stirap):
            _require_hyperfine(scheme, step)
            qubit_cols = stirap_map(step.theta, scheme) @ qubit_cols
        elif isinstance(step, RamanRotation):
            _require_hyperfine(scheme, step)
            qubit_cols = _raman_ground_map(step.area, scheme) @ qubit_cols
            if step.detuning is not None and step.omega0p is not None:
                notes.append(f"raman effective rabi ~ {effective_rabi(step.detuning, step.omega0p):.6g}")
        else:
            raise PulseCompilationError(f"unsupported pulse step {step!r}")

    psi = np.zeros((n, 2), dtype=np.complex128)
    psi[ground, :] = qubit_cols

    exc = steps[-1]
    h_up = _excitation_hamiltonian(scheme, exc)
    strength = np.linalg.norm(h_up @ psi, axis=0)
    if np.any(strength < tol):
        raise PulseCompilationError("excitation pulse does not couple every qubit state")
    if abs(strength[0] - strength[1]) > 1e-9 * strength.max():
        notes.append("qubit states couple with unequal strength; pulse area referenced to |+>")
    h = (h_up + h_up.conj().T) / strength[0]
    # resonant pulse of area A on a two-level pair: U = exp(-i A/2 (|e><g| + h.c.))
    after = 1j * (expm(-0.5j * exc.area * h) @ psi)
    excited = scheme.excited
    exc_prob = np.sum(np.abs(after[excited, :]) ** 2, axis=0)

    raw = np.zeros((4, 2), dtype=np.complex128)
    plus, minus = scheme.qubit
    atom_bit = {plus: 0, minus: 1}
    for e in excited:
        pop = np.abs(after[e, :]) ** 2
        if pop.max() <= tol:
            continue
        total = 0.0
        kept = []
        for (u, l, q), amp in scheme.transitions.items():
            if u != e:
                continue
            total += amp * amp
            pair = (scheme.sublevels[l].manifold, scheme.sublevels[u].manifold)
            if pair in scheme.cavity_transitions and q in cavity_polarizations:
                kept.append((l, q, amp))
        if not kept:
            raise PulseCompilationError(
                f"excitation populates {scheme.sublevels[e].label}, which has no cavity-coupled decay"
            )
        for l, q, amp in kept:
            if l not in atom_bit:
                notes.append(f"cavity decay {scheme.sublevels[e].label} -> {scheme.sublevels[l].label} leaves the qubit")
                continue
            row = 2 * atom_bit[l] + PHOTON_BIT[q]
            # emission amplitude is the (real) absorption element, scaled to unit total decay
            raw[row, :] += after[e, :] * amp / np.sqrt(total)

    weights = np.sum(np.abs(raw) ** 2, axis=0)
    gram = raw.conj().T @ raw
    if np.linalg.matrix_rank(gram, tol=1e-12) < 2:
        raise PulseCompilationError("cavity-projected map is rank deficient; no isometry")
    if np.linalg.norm(gram - np.diag(np.diag(gram))) > 1e-9 * weights.max():
        notes.append("kept branches of |+> and |-> overlap; Lowdin renormalization applied")
    iso = raw @ np.linalg.inv(sqrtm(gram))
    return CompiledIsometry(iso, raw, weights, exc_prob, steps, notes)


def ca40_recipe(kind: str, alpha: float | None = None) -> list:
    if kind == "ghz":
        return [LinearPolarizedExcitation(0.0 if alpha is None else alpha)]
    if kind == "lc":
        return [LinearPolarizedExcitation(np.pi / 4 if alpha is None else alpha)]
    raise ValueError(f"unknown recipe kind {kind!r}")


def rb87_recipe(kind: str) -> list:
    if kind == "ghz":
        return [Stirap(STIRAP_THETA), BichromaticExcitation(np.pi)]
    if kind == "lc":
        return [RamanRotation(np.pi / 2, 0.5, 1.0), Stirap(STIRAP_THETA), BichromaticExcitation(np.pi)]
    raise ValueError(f"unknown recipe kind {kind!r}")


def ca40_reference_map(alpha: float) -> np.ndarray:
    """|+-> -> sin(a)|+->|s-+> +- cos(a)|-+>|s+->, written out directly."""
    v = np.zeros((4, 2), dtype=np.complex128)
    s, c = np.sin(alpha), np.cos(alpha)
    v[1, 0], v[2, 0] = s, c  # |+> -> s |+,s-> + c |-,s+>
    v[2, 1], v[1, 1] = s, -c  # |-> -> s |-,s+> - c |+,s->
    return v


def rb_full_sequence(kind: str, scheme: LevelScheme | None = None) -> CompiledIsometry:
    from .levels import build_rb87

    return compile_pulse_sequence(scheme or build_rb87(), rb87_recipe(kind))
