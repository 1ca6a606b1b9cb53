"""Dense pure states over an emitter atom and its ordered photon train.

Bit layout: photon k (k = 1 is the first emitted) is bit k-1 of the
amplitude index; the atom, when present, is the highest bit.  Both the
atomic basis |+>, |-> and the photonic basis |sigma+>, |sigma-> map to
bit values 0 and 1 respectively.

Qubit indices used throughout (``measure_qubit``, ``apply_local``,
``PauliString``) are bit indices: photons are ``0 .. n_photons-1`` and the
atom is ``n_photons``.  Dense storage is intended for up to 20 photons.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

NORM_TOL = 1e-12
OPERATOR_TOL = 1e-10
MAX_PHOTONS = 20

PAULI_LABELS = "IXYZ"


@dataclass(frozen=True, eq=False)
class PureState:
    n_photons: int
    has_atom: bool
    amps: np.ndarray

    def __post_init__(self):
        amps = np.ascontiguousarray(self.amps, dtype=np.complex128).reshape(-1)
        if self.n_photons < 0 or self.n_photons > MAX_PHOTONS:
            raise ValueError(f"n_photons must be in [0, {MAX_PHOTONS}], got {self.n_photons}")
        if amps.size != 2 ** self.n_qubits:
            raise ValueError(
                f"expected {2 ** self.n_qubits} amplitudes for {self.n_qubits} qubits, got {amps.size}"
            )
        norm2 = float(np.vdot(amps, amps).real)
        if abs(norm2 - 1.0) > OPERATOR_TOL:
            raise ValueError(f"state is not normalized (norm^2 = {norm2!r})")
        amps.setflags(write=False)
        object.__setattr__(self, "amps", amps)

    @property
    def n_qubits(self) -> int:
        return self.n_photons + int(self.has_atom)

    @property
    def atom_qubit(self) -> int:
        if not self.has_atom:
            raise ValueError("state has no atom")
        return self.n_photons

    def norm2(self) -> float:
        return float(np.vdot(self.amps, self.amps).real)

    def tensor(self) -> np.ndarray:
        """Amplitudes as a rank-n tensor; axis 0 is the highest bit."""
        return self.amps.reshape((2,) * self.n_qubits) if self.n_qubits else self.amps.copy()

    @classmethod
    def from_amplitudes(cls, amps, n_photons: int, has_atom: bool = False) -> "PureState":
        amps = np.asarray(amps, dtype=np.complex128).reshape(-1)
        norm = np.linalg.norm(amps)
        if norm == 0:
            raise ValueError("zero vector cannot be normalized")
        return cls(n_photons, has_atom, amps / norm)

    @classmethod
    def basis(cls, bits: str, has_atom: bool = False) -> "PureState":
        """Computational basis state from a bit string written highest bit first."""
        n = len(bits) - int(has_atom)
        amps = np.zeros(2 ** len(bits), dtype=np.complex128)
        amps[int(bits, 2) if bits else 0] = 1.0
        return cls(n, has_atom, amps)


def _axis(state: PureState, qubit: int) -> int:
    if not 0 <= qubit < state.n_qubits:
        raise IndexError(f"qubit {qubit} out of range for {state.n_qubits}-qubit state")
    return state.n_qubits - 1 - qubit


def _renormalized(amps: np.ndarray) -> np.ndarray:
    return amps / np.sqrt(np.vdot(amps, amps).real)


def atom_state(a_plus: complex, a_minus: complex) -> PureState:
    amps = np.array([a_plus, a_minus], dtype=np.complex128)
    if np.vdot(amps, amps).real <= 0:
        raise ValueError("atom amplitudes must not both vanish")
    return PureState(0, True, _renormalized(amps))


def photon_state(amps) -> PureState:
    """Photon-only register from an amplitude list (normalized here)."""
    amps = np.asarray(amps, dtype=np.complex128).reshape(-1)
    n = int(round(np.log2(amps.size)))
    return PureState.from_amplitudes(amps, n, has_atom=False)


def check_isometry(v: np.ndarray, tol: float = OPERATOR_TOL) -> np.ndarray:
    v = np.asarray(v, dtype=np.complex128)
    if v.shape != (4, 2):
        raise ValueError(f"isometry must be 4x2, got shape {v.shape}")
    defect = np.linalg.norm(v.conj().T @ v - np.eye(2))
    if defect > tol:
        raise ValueError(f"matrix is not an isometry (||V^dag V - I|| = {defect:.3e})")
    return v


def check_unitary(u: np.ndarray, tol: float = OPERATOR_TOL) -> np.ndarray:
    u = np.asarray(u, dtype=np.complex128)
    if u.shape != (2, 2):
        raise ValueError(f"single-qubit unitary must be 2x2, got shape {u.shape}")
    defect = np.linalg.norm(u.conj().T @ u - np.eye(2))
    if defect > tol:
        raise ValueError(f"matrix is not unitary (||U^dag U - I|| = {defect:.3e})")
    return u


def apply_isometry(state: PureState, v) -> PureState:
    """Emit one photon: map the atom qubit into (atom, new photon).

    ``v`` is 4x2 with rows ordered (atom, photon) = (+s+, +s-, -s+, -s-).
    The new photon takes bit ``n_photons`` and the atom moves up one bit.
    """
    if not state.has_atom:
        raise ValueError("apply_isometry needs a state with an atom")
    if state.n_photons + 1 > MAX_PHOTONS:
        raise ValueError(f"dense storage is capped at {MAX_PHOTONS} photons")
    v = check_isometry(v)
    rest = 2 ** state.n_photons
    out = v @ state.amps.reshape(2, rest)
    return PureState(state.n_photons + 1, True, _renormalized(out.reshape(-1)))


def outcome_probabilities(state: PureState, qubit: int) -> tuple[float, float]:
    t = np.moveaxis(state.tensor(), _axis(state, qubit), 0).reshape(2, -1)
    p = np.einsum("ij,ij->i", t.conj(), t).real
    return float(p[0]), float(p[1])


def _project(state: PureState, qubit: int, outcome: int, remove: bool) -> PureState:
    axis = _axis(state, qubit)
    t = np.moveaxis(state.tensor(), axis, 0)
    if remove:
        # moveaxis keeps the remaining axes in their original order
        kept = _renormalized(t[outcome].reshape(-1))
        is_atom = state.has_atom and qubit == state.n_photons
        n_ph = state.n_photons if is_atom else state.n_photons - 1
        return PureState(n_ph, state.has_atom and not is_atom, kept)
    proj = np.zeros_like(t)
    proj[outcome] = t[outcome]
    collapsed = np.moveaxis(proj, 0, axis).reshape(-1)
    return PureState(state.n_photons, state.has_atom, _renormalized(collapsed))


def measure_qubit(state: PureState, qubit: int, random_draw: float, remove: bool = False):
    """Projective Z measurement driven by an external uniform draw.

    Outcome 0 is returned iff ``random_draw < p0``.  With ``remove=True``
    the measured qubit is dropped from the register (photons above it are
    re-indexed downwards); otherwise it stays, collapsed.
    """
    if not 0.0 <= random_draw < 1.0:
        raise ValueError(f"random_draw must lie in [0, 1), got {random_draw}")
    p0, _ = outcome_probabilities(state, qubit)
    outcome = 0 if random_draw < p0 else 1
    return outcome, _project(state, qubit, outcome, remove)


def discard_qubit(state: PureState, qubit: int, tol: float = OPERATOR_TOL) -> PureState:
    """Drop a qubit that is in a computational basis state (phase kept)."""
    p0, p1 = outcome_probabilities(state, qubit)
    if min(p0, p1) > tol:
        raise ValueError(f"qubit {qubit} is not in a basis state (p0={p0:.3e}, p1={p1:.3e})")
    return _project(state, qubit, 0 if p0 >= p1 else 1, remove=True)


def fidelity(a: PureState, b: PureState) -> float:
    if a.amps.size != b.amps.size:
        raise ValueError(f"dimension mismatch: {a.n_qubits} vs {b.n_qubits} qubits")
    f = abs(np.vdot(a.amps, b.amps)) ** 2
    return float(min(1.0, f))


def overlap(a: PureState, b: PureState) -> complex:
    if a.amps.size != b.amps.size:
        raise ValueError(f"dimension mismatch: {a.n_qubits} vs {b.n_qubits} qubits")
    return complex(np.vdot(a.amps, b.amps))


def apply_local(state: PureState, qubit: int, u) -> PureState:
    u = check_unitary(u)
    axis = _axis(state, qubit)
    t = np.tensordot(u, state.tensor(), axes=([1], [axis]))
    t = np.moveaxis(t, 0, axis)
    return PureState(state.n_photons, state.has_atom, _renormalized(t.reshape(-1)))


def apply_locals(state: PureState, unitaries) -> PureState:
    """Apply ``unitaries[k]`` to qubit k; ``None`` entries are skipped."""
    for k, u in enumerate(unitaries):
        if u is not None:
            state = apply_local(state, k, u)
    return state


def apply_cz(state: PureState, a: int, b: int) -> PureState:
    if a == b:
        raise ValueError("CZ needs two distinct qubits")
    _axis(state, a), _axis(state, b)
    idx = np.arange(state.amps.size)
    both = ((idx >> a) & 1) & ((idx >> b) & 1)
    return PureState(state.n_photons, state.has_atom, state.amps * (1 - 2 * both))


@dataclass(frozen=True)
class PauliString:
    """Tensor product of Paulis; ``ops[k]`` acts on qubit (bit) k."""

    ops: str

    def __post_init__(self):
        ops = self.ops.upper()
        if any(c not in PAULI_LABELS for c in ops):
            raise ValueError(f"invalid Pauli string {self.ops!r}")
        object.__setattr__(self, "ops", ops)

    def __len__(self):
        return len(self.ops)

    @classmethod
    def from_dict(cls, n_qubits: int, ops: dict[int, str]) -> "PauliString":
        chars = ["I"] * n_qubits
        for k, p in ops.items():
            chars[k] = p
        return cls("".join(chars))

    def masks(self) -> tuple[int, int, int]:
        """(x mask, z mask, number of Y factors)."""
        x = z = 0
        for k, p in enumerate(self.ops):
            if p in "XY":
                x |= 1 << k
            if p in "ZY":
                z |= 1 << k
        return x, z, self.ops.count("Y")


def pauli_expectation(state: PureState, p: PauliString) -> float:
    if len(p) != state.n_qubits:
        raise ValueError(f"Pauli string has {len(p)} factors, state has {state.n_qubits} qubits")
    x, z, n_y = p.masks()
    if x == 0 and z == 0:
        return 1.0  # identity on a normalized state, without summation round-off
    idx = np.arange(state.amps.size, dtype=np.int64)
    sign = 1 - 2 * (np.bitwise_count(idx & z).astype(np.int64) & 1)
    # P|i> = i^nY (-1)^{popcount(i & z)} |i ^ x>
    val = (1j ** n_y) * np.sum(state.amps[idx ^ x].conj() * sign * state.amps)
    if abs(val.imag) > OPERATOR_TOL:
        raise ArithmeticError(f"Pauli expectation has imaginary part {val.imag:.3e}")
    return float(np.clip(val.real, -1.0, 1.0))


def schmidt_coefficients(state: PureState, qubits) -> np.ndarray:
    """Schmidt coefficients (descending) across ``qubits`` vs the rest."""
    qubits = sorted(set(qubits))
    axes_a = [_axis(state, q) for q in qubits]
    axes_b = [ax for ax in range(state.n_qubits) if ax not in axes_a]
    t = np.transpose(state.tensor(), axes_a + axes_b).reshape(2 ** len(axes_a), -1)
    return np.linalg.svd(t, compute_uv=False)
