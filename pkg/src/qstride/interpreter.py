"""Sequential circuit interpreter with per-shot deterministic randomness.

Every shot replays the whole circuit on a fresh |0...0> state. Shot ``s``
of a run seeded with ``seed`` draws from its own substream,
``PCG64(SeedSequence(seed, spawn_key=(s,)))``, so shots are reproducible
and order-independent; the generator identity is recorded in the result as
:data:`RNG_ID`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuit import Circuit, Gate, If, Measure, Repeat, Swap, to_control_spec
from .engine import (
    BlochVector,
    StateVector,
    apply_1q_gate,
    apply_swap,
    bloch_vector,
    measure_qubit,
    probabilities,
)
from .errors import LimitError, ValidationError
from .gates import resolve

RNG_ID = "pcg64-seedseq-spawn"
DEFAULT_MAX_QUBITS = 26
MAX_SEED = (1 << 64) - 1


def shot_rng(seed: int, shot: int) -> np.random.Generator:
    """The deterministic random stream for one shot of a seeded run."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(shot,))))


@dataclass(frozen=True)
class RunResult:
    """Everything a run reports.

    ``final_state``, ``cbits``, ``distribution`` and ``bloch`` describe the
    last shot; ``distribution`` is the Born distribution of the state as the
    circuit left it (collapsed only where measurements actually ran).
    ``shot_records`` holds one classical bit string per shot, cbit 0 first.
    """

    final_state: StateVector
    cbits: tuple
    distribution: np.ndarray
    bloch: tuple
    shot_records: tuple
    seed: int
    rng_id: str = RNG_ID

    @property
    def shots(self) -> int:
        return len(self.shot_records)


def _check_seed(seed: int) -> int:
    if isinstance(seed, bool) or not isinstance(seed, int) or not 0 <= seed <= MAX_SEED:
        raise ValidationError(f"seed must be an unsigned 64-bit integer, got {seed!r}")
    return seed


class _Session:
    """One shot's execution state: ping-pong buffers, cbits, rng."""

    def __init__(self, circuit: Circuit, rng: np.random.Generator, workers, parallel_threshold):
        self.circuit = circuit
        self.rng = rng
        self.workers = workers
        self.parallel_threshold = parallel_threshold
        self.state = StateVector.zero(circuit.n)
        self.spare = np.empty_like(self.state.amplitudes)
        self.cbits = [0] * circuit.c

    def _swap_in(self, new_state: StateVector) -> None:
        self.spare = self.state.amplitudes
        self.state = new_state

    def execute(self, ops) -> None:
        for op in ops:
            if isinstance(op, Gate):
                self._swap_in(
                    apply_1q_gate(
                        self.state,
                        resolve(op.spec),
                        op.target,
                        to_control_spec(op.controls, op.anticontrols),
                        workers=self.workers,
                        parallel_threshold=self.parallel_threshold,
                        out=self.spare,
                    )
                )
            elif isinstance(op, Swap):
                self._swap_in(
                    apply_swap(
                        self.state,
                        op.qa,
                        op.qb,
                        to_control_spec(op.controls, op.anticontrols),
                        workers=self.workers,
                        parallel_threshold=self.parallel_threshold,
                        out=self.spare,
                    )
                )
            elif isinstance(op, Measure):
                outcome, self.state = measure_qubit(self.state, op.qubit, self.rng)
                self.cbits[op.cbit] = outcome
            elif isinstance(op, If):
                if self.cbits[op.cbit] == op.value:
                    self.execute(op.body)
            elif isinstance(op, Repeat):
                for _ in range(op.count):
                    self.execute(op.body)
            else:  # unreachable for validated circuits
                raise ValidationError(f"not a circuit op: {op!r}")


def run(
    circuit: Circuit,
    seed: int = 0,
    shots: int = 1,
    *,
    max_qubits: int = DEFAULT_MAX_QUBITS,
    workers: int | None = None,
    parallel_threshold: int | None = None,
) -> RunResult:
    """Execute ``circuit`` for ``shots`` seeded shots and report the result."""
    _check_seed(seed)
    if isinstance(shots, bool) or not isinstance(shots, int) or shots < 1:
        raise ValidationError(f"shots must be a positive integer, got {shots!r}")
    if circuit.n > max_qubits:
        raise LimitError(
            f"circuit uses {circuit.n} qubits, exceeding the {max_qubits}-qubit ceiling"
        )

    records = []
    session = None
    for shot in range(shots):
        session = _Session(circuit, shot_rng(seed, shot), workers, parallel_threshold)
        session.execute(circuit.ops)
        records.append("".join(str(b) for b in session.cbits))

    final = session.state
    return RunResult(
        final_state=final,
        cbits=tuple(session.cbits),
        distribution=probabilities(final),
        bloch=tuple(bloch_vector(final, k) for k in range(final.n)),
        shot_records=tuple(records),
        seed=seed,
    )
