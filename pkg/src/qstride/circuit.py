"""Hybrid circuit representation: gates, swaps, measurement, classical
conditionals and bounded repetition.

A :class:`Circuit` declares a qubit register (initialized to |0...0> at run
time) and a classical bit register (initialized to 0). Ops execute in
order; ``If`` bodies run only when the named classical bit holds the given
value at that moment, which is how measurement outcomes feed forward into
later gates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .engine import ControlSpec
from .errors import ValidationError
from .gates import GateSpec


def to_control_spec(controls, anticontrols, n: int | None = None) -> ControlSpec:
    """Fold control/anti-control qubit sets into the mask pair.

    ``m_inc`` has a 1 for every conditioning qubit; ``m_val`` has a 1 only
    for standard controls (anti-controls require the qubit to be 0).
    """
    controls = frozenset(controls)
    anticontrols = frozenset(anticontrols)
    overlap = controls & anticontrols
    if overlap:
        raise ValidationError(
            f"qubits {sorted(overlap)} are both controls and anti-controls"
        )
    m_inc = 0
    m_val = 0
    for q in controls | anticontrols:
        if q < 0:
            raise ValidationError(f"control qubit index must be >= 0, got {q}")
        if n is not None and q >= n:
            raise ValidationError(f"control qubit q_{q} out of range (n={n})")
        m_inc |= 1 << q
    for q in controls:
        m_val |= 1 << q
    return ControlSpec(m_inc, m_val)


def _as_qubit_set(value, what: str) -> frozenset:
    qubits = frozenset(value)
    for q in qubits:
        if isinstance(q, bool) or not isinstance(q, int) or q < 0:
            raise ValidationError(f"{what} must be non-negative qubit indices, got {q!r}")
    return qubits


def _check_index(value, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise ValidationError(f"{what} must be a non-negative integer, got {value!r}")
    return value


@dataclass(frozen=True)
class Gate:
    """A single-qubit kernel on ``target``, optionally masked by controls."""

    spec: GateSpec
    target: int
    controls: frozenset = frozenset()
    anticontrols: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "controls", _as_qubit_set(self.controls, "controls"))
        object.__setattr__(self, "anticontrols", _as_qubit_set(self.anticontrols, "anticontrols"))
        _check_index(self.target, "gate target")
        overlap = self.controls & self.anticontrols
        if overlap:
            raise ValidationError(
                f"qubits {sorted(overlap)} are both controls and anti-controls"
            )
        if self.target in self.controls or self.target in self.anticontrols:
            raise ValidationError(f"target q_{self.target} cannot also be a control")


@dataclass(frozen=True)
class Swap:
    """Exchange qubits ``qa`` and ``qb``, optionally masked by controls."""

    qa: int
    qb: int
    controls: frozenset = frozenset()
    anticontrols: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "controls", _as_qubit_set(self.controls, "controls"))
        object.__setattr__(self, "anticontrols", _as_qubit_set(self.anticontrols, "anticontrols"))
        _check_index(self.qa, "swap qubit")
        _check_index(self.qb, "swap qubit")
        if self.qa == self.qb:
            raise ValidationError(f"swap qubits must differ, got q_{self.qa} twice")
        overlap = self.controls & self.anticontrols
        if overlap:
            raise ValidationError(
                f"qubits {sorted(overlap)} are both controls and anti-controls"
            )
        for q in (self.qa, self.qb):
            if q in self.controls or q in self.anticontrols:
                raise ValidationError(f"swap qubit q_{q} cannot also be a control")


@dataclass(frozen=True)
class Measure:
    """Measure ``qubit`` in the computational basis into classical ``cbit``."""

    qubit: int
    cbit: int

    def __post_init__(self):
        _check_index(self.qubit, "measured qubit")
        _check_index(self.cbit, "classical bit")


@dataclass(frozen=True)
class If:
    """Run ``body`` iff classical bit ``cbit`` equals ``value`` right now."""

    cbit: int
    value: int
    body: tuple = ()

    def __post_init__(self):
        _check_index(self.cbit, "classical bit")
        if isinstance(self.value, bool) or not isinstance(self.value, int) or self.value not in (0, 1):
            raise ValidationError(f"condition value must be 0 or 1, got {self.value!r}")
        object.__setattr__(self, "body", tuple(self.body))


@dataclass(frozen=True)
class Repeat:
    """Run ``body`` exactly ``count`` times (count >= 1)."""

    count: int
    body: tuple = ()

    def __post_init__(self):
        if isinstance(self.count, bool) or not isinstance(self.count, int) or self.count < 1:
            raise ValidationError(f"repeat count must be a positive integer, got {self.count!r}")
        object.__setattr__(self, "body", tuple(self.body))


CircuitOp = Union[Gate, Swap, Measure, If, Repeat]


def _validate_ops(ops, n: int, c: int, path: str) -> None:
    for idx, op in enumerate(ops):
        here = f"{path}[{idx}]"
        if isinstance(op, Gate):
            if op.target >= n:
                raise ValidationError(f"{here}: target q_{op.target} out of range (n={n})")
            for q in op.controls | op.anticontrols:
                if q >= n:
                    raise ValidationError(f"{here}: control q_{q} out of range (n={n})")
        elif isinstance(op, Swap):
            for q in (op.qa, op.qb):
                if q >= n:
                    raise ValidationError(f"{here}: swap qubit q_{q} out of range (n={n})")
            for q in op.controls | op.anticontrols:
                if q >= n:
                    raise ValidationError(f"{here}: control q_{q} out of range (n={n})")
        elif isinstance(op, Measure):
            if op.qubit >= n:
                raise ValidationError(f"{here}: measured qubit q_{op.qubit} out of range (n={n})")
            if op.cbit >= c:
                raise ValidationError(
                    f"{here}: classical bit {op.cbit} out of range (declared cbits: {c})"
                )
        elif isinstance(op, If):
            if op.cbit >= c:
                raise ValidationError(
                    f"{here}: classical bit {op.cbit} out of range (declared cbits: {c})"
                )
            _validate_ops(op.body, n, c, f"{here}.body")
        elif isinstance(op, Repeat):
            _validate_ops(op.body, n, c, f"{here}.body")
        else:
            raise ValidationError(f"{here}: not a circuit op: {op!r}")


@dataclass(frozen=True)
class Circuit:
    """An ordered op list over ``n`` qubits and ``c`` classical bits.

    Construction validates every op against the declared register sizes,
    recursively through ``If``/``Repeat`` bodies.
    """

    n: int
    c: int = 0
    ops: tuple = ()
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 1:
            raise ValidationError(f"qubit count must be an integer >= 1, got {self.n!r}")
        if isinstance(self.c, bool) or not isinstance(self.c, int) or self.c < 0:
            raise ValidationError(f"classical bit count must be >= 0, got {self.c!r}")
        object.__setattr__(self, "ops", tuple(self.ops))
        _validate_ops(self.ops, self.n, self.c, "ops")
