"""Sequential emission of photonic GHZ and linear-cluster states from a single atom in a cavity."""

from .protocol import (
    Kind,
    ProtocolRun,
    canonical_cluster,
    canonical_ghz,
    cluster_stabilizer_generators,
    correction_unitaries,
    corrected_state,
    run_protocol,
    t_ghz,
    t_lc,
    verify_run,
)
from .statevec import PauliString, PureState, fidelity, pauli_expectation

__version__ = "0.1.0"
