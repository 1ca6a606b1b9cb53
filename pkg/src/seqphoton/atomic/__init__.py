"""Atomic level structure, Wigner machinery and pulse compilation."""

from .dark import DarkStateReport, dark_state_check, eta_states
from .derive import DOCUMENTED_FRAMES, Derivation, build_scheme, ca40_alpha_scan, derive
from .levels import LevelScheme, Sublevel, build_ca40, build_rb87
from .pulses import (
    STIRAP_THETA,
    BichromaticExcitation,
    CompiledIsometry,
    LinearPolarizedExcitation,
    PulseCompilationError,
    RamanRotation,
    Stirap,
    ca40_reference_map,
    compile_pulse_sequence,
    effective_rabi,
    raman_coupling,
    raman_rotation_map,
    rb_full_sequence,
    stirap_map,
)
from .wigner import clebsch_gordan, wigner_3j, wigner_6j
