import numpy as np
import pytest
from hypothesis import strategies as st

from seqphoton.statevec import PureState

PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def kron_all(ops_high_to_low):
    """Dense Kronecker product, first factor on the highest bit."""
    out = np.eye(1, dtype=complex)
    for op in ops_high_to_low:
        out = np.kron(out, op)
    return out


def dense_pauli(ops: str) -> np.ndarray:
    """Matrix of a Pauli string whose character k acts on bit k."""
    return kron_all([PAULI[c] for c in reversed(ops)])


def random_state(rng, n_qubits):
    v = rng.normal(size=2 ** n_qubits) + 1j * rng.normal(size=2 ** n_qubits)
    return v / np.linalg.norm(v)


def random_unitary(rng, d=2):
    q, r = np.linalg.qr(rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d)))
    return q * (np.diag(r) / abs(np.diag(r)))


@st.composite
def pure_states(draw, min_photons=1, max_photons=5, has_atom=None):
    n = draw(st.integers(min_photons, max_photons))
    atom = draw(st.booleans()) if has_atom is None else has_atom
    seed = draw(st.integers(0, 2 ** 32 - 1))
    rng = np.random.default_rng(seed)
    return PureState(n, atom, random_state(rng, n + int(atom)))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
