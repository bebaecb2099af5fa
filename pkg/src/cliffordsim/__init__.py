"""Classical simulation of Clifford circuits with stabilizer generators."""

from .circuit import (
    Circuit,
    CircuitParseError,
    Measure,
    ShotResult,
    parse_circuit,
    run_shots,
    sample_histogram,
)
from .clifford import Gate, conjugate, verify_rule_tables
from .pauli import PauliString, commutes, decode, encode, identity, multiply, parse_pauli
from .stabilizer import (
    MeasurementOutcome,
    Membership,
    PhiloxSource,
    StabilizerState,
    init_zero_state,
    measure_z,
    membership,
    states_equivalent,
)

__version__ = "0.1.0"
