"""qstride: a state-vector quantum circuit simulator.

The engine applies single-qubit gates (with arbitrary control/anti-control
bitmasks) and SWAPs through perfectly parallel per-element update kernels,
never materializing full operators. On top sits a hybrid circuit IR with
measurement, classical conditionals and bounded repetition, a JSON file
format, a CLI and an HTTP service.
"""

from .builders import build_grover, build_teleportation, default_grover_iterations
from .circuit import Circuit, CircuitOp, Gate, If, Measure, Repeat, Swap, to_control_spec
from .engine import (
    BlochVector,
    ControlSpec,
    GateKernel,
    NO_CONTROLS,
    StateVector,
    apply_1q_gate,
    apply_swap,
    bloch_vector,
    index_to_label,
    label_to_index,
    measure_qubit,
    probabilities,
)
from .errors import LimitError, ParseError, QstrideError, ValidationError
from .fileformat import circuit_from_document, circuit_to_document, parse, serialize
from .gates import GateInfo, GateSpec, catalog, resolve
from .interpreter import RNG_ID, RunResult, run, shot_rng

__version__ = "0.1.0"

__all__ = [
    "BlochVector",
    "Circuit",
    "CircuitOp",
    "ControlSpec",
    "Gate",
    "GateInfo",
    "GateKernel",
    "GateSpec",
    "If",
    "LimitError",
    "Measure",
    "NO_CONTROLS",
    "ParseError",
    "QstrideError",
    "Repeat",
    "RNG_ID",
    "RunResult",
    "StateVector",
    "Swap",
    "ValidationError",
    "apply_1q_gate",
    "apply_swap",
    "bloch_vector",
    "build_grover",
    "build_teleportation",
    "catalog",
    "circuit_from_document",
    "circuit_to_document",
    "default_grover_iterations",
    "index_to_label",
    "label_to_index",
    "measure_qubit",
    "parse",
    "probabilities",
    "resolve",
    "run",
    "serialize",
    "shot_rng",
    "to_control_spec",
]
