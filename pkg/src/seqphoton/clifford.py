"""Single-qubit Clifford group and exhaustive local-equivalence searches."""

from __future__ import annotations

import itertools
import string
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .statevec import OPERATOR_TOL, PureState

I2 = np.eye(2, dtype=np.complex128)
X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
H = np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2)
S = np.array([[1, 0], [0, 1j]], dtype=np.complex128)

PAULIS = {"I": I2, "X": X, "Y": Y, "Z": Z}


def _canonical_phase(u: np.ndarray) -> np.ndarray:
    flat = u.reshape(-1)
    k = int(np.argmax(np.abs(flat) > 1e-9))
    return u * (abs(flat[k]) / flat[k])


@lru_cache(maxsize=None)
def clifford_group() -> tuple[tuple[str, np.ndarray], ...]:
    """The 24 single-qubit Cliffords modulo phase, as (label, matrix).

    I, X, Y, Z come first (searches return the first hit, so Pauli
    corrections win ties); the rest follow in order of word length in H, S.
    """
    found: list[tuple[str, np.ndarray]] = [("I", I2)]
    frontier = [("I", I2)]
    gens = {"H": H, "S": S}
    while frontier:
        nxt = []
        for word, u in frontier:
            for g, m in gens.items():
                cand = _canonical_phase(m @ u)
                if any(np.allclose(cand, v) for _, v in found):
                    continue
                label = g if word == "I" else g + word
                found.append((label, cand))
                nxt.append((label, cand))
        frontier = nxt
    assert len(found) == 24
    named = []
    for label, u in found:
        for name, p in PAULIS.items():
            if np.allclose(_canonical_phase(p), u):
                label = name
        named.append((label, u))
    named.sort(key=lambda m: "IXYZ".index(m[0]) if m[0] in PAULIS else 4)
    for m in named:
        m[1].setflags(write=False)
    return tuple(named)


def clifford_by_label(label: str) -> np.ndarray:
    for name, u in clifford_group():
        if name == label:
            return u
    raise KeyError(label)


def phase_aligned_distance(a: np.ndarray, b: np.ndarray) -> tuple[float, complex]:
    """min over global phase of ||a - e^{i phi} b||, with the optimal phase."""
    ip = np.vdot(b, a)
    phase = ip / abs(ip) if abs(ip) > 1e-15 else 1.0 + 0j
    return float(np.linalg.norm(a - phase * b)), complex(phase)


def local_clifford_search(state: PureState, reference: PureState, tol: float = OPERATOR_TOL):
    """First tensor product of Cliffords U with |<ref| U |state>|^2 = 1.

    Exhaustive over 24^n products (vectorized).  Returns a list of
    (label, matrix) per qubit (qubit 0 first), or ``None`` if nothing fits.
    """
    if state.n_qubits != reference.n_qubits:
        raise ValueError("qubit count mismatch")
    n = state.n_qubits
    if n > 5:
        raise ValueError("exhaustive Clifford search is limited to 5 qubits")
    group = clifford_group()
    stack = np.array([u for _, u in group])
    letters = string.ascii_lowercase
    # tensor axis 0 is the highest qubit; give each axis its own stack index
    out_idx = letters[:n]
    in_idx = letters[n : 2 * n]
    sel = string.ascii_uppercase[:n]
    ops = [f"{sel[a]}{out_idx[a]}{in_idx[a]}" for a in range(n)]
    expr = ",".join(ops + [in_idx, out_idx]) + "->" + sel
    amp = np.einsum(
        expr,
        *([stack] * n),
        state.tensor(),
        reference.tensor().conj(),
        optimize=True,
    )
    fid = np.abs(amp) ** 2
    # iterate with qubit 0 slowest so low qubits keep the identity longest
    order = np.transpose(fid, axes=tuple(range(n))[::-1]).reshape(-1)
    hits = np.flatnonzero(order > 1.0 - tol)
    if hits.size == 0:
        return None
    combo = np.unravel_index(hits[0], (24,) * n)
    return [group[c] for c in combo]


@dataclass(frozen=True)
class IsometryFrame:
    """V = phase * (atom_out (x) photon) @ target @ atom_in^dag."""

    atom_out: str
    photon: str
    atom_in: str
    phase: complex
    distance: float

    def describe(self) -> str:
        parts = []
        if self.atom_out != "I":
            parts.append(f"{self.atom_out} on atom output")
        if self.photon != "I":
            parts.append(f"{self.photon} on photon")
        if self.atom_in != "I":
            parts.append(f"{self.atom_in} on atom input")
        body = ", ".join(parts) or "identity frame"
        return f"{body}; global phase {self.phase.real:+.6g}{self.phase.imag:+.6g}j"

    def correct(self, v: np.ndarray) -> np.ndarray:
        """Undo the frame on ``v``, returning the target-frame isometry."""
        out = np.kron(clifford_by_label(self.atom_out), clifford_by_label(self.photon))
        return out.conj().T @ v @ clifford_by_label(self.atom_in) / self.phase


def find_isometry_frame(v: np.ndarray, target: np.ndarray, tol: float = OPERATOR_TOL,
                        allow_input_frame: bool = False) -> IsometryFrame | None:
    """Search Clifford frames relating a 4x2 isometry to a target one.

    Output-only frames (atom and photon Cliffords after the map) are tried
    first since they survive repeated application; an input-side atom
    Clifford is only considered when ``allow_input_frame`` is set.
    """
    group = clifford_group()
    inputs = group if allow_input_frame else group[:1]
    for (la, a), (lp, p), (li, c) in itertools.product(group, group, inputs):
        cand = np.kron(a, p) @ target @ c.conj().T
        dist, phase = phase_aligned_distance(v, cand)
        if dist < tol:
            return IsometryFrame(la, lp, li, phase, dist)
    return None
