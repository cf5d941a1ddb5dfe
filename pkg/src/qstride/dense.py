"""Brute-force dense-operator reference, for verification only.

Materializes full ``2**n x 2**n`` matrices the way the kernel engine
deliberately avoids: explicit Kronecker products over qubit positions (bit
``k`` <-> tensor factor ``k``, little-endian) plus projector sums for the
control condition. Memory is O(4**n), so a hard cap of n <= 12 applies;
nothing here is exposed through the CLI or service.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .engine import ControlSpec, GateKernel, NO_CONTROLS, StateVector
from .errors import LimitError, ValidationError

MAX_DENSE_QUBITS = 12

_I2 = np.eye(2, dtype=np.complex128)
_P0 = np.array([[1, 0], [0, 0]], dtype=np.complex128)
_P1 = np.array([[0, 0], [0, 1]], dtype=np.complex128)


@dataclass(frozen=True)
class DenseOperator:
    n: int
    entries: np.ndarray


def _check_n(n: int) -> None:
    if n < 1:
        raise ValidationError(f"qubit count must be >= 1, got {n}")
    if n > MAX_DENSE_QUBITS:
        raise LimitError(
            f"dense oracle capped at {MAX_DENSE_QUBITS} qubits (O(4^n) memory), got n={n}"
        )


def _kron_chain(factors) -> np.ndarray:
    # Little-endian: qubit q is tensor factor q, so the highest qubit is the
    # outermost (most significant) Kronecker factor.
    return reduce(np.kron, reversed(list(factors)))


def _control_factor(q: int, ctrl: ControlSpec) -> np.ndarray:
    if (ctrl.m_inc >> q) & 1:
        return _P1 if (ctrl.m_val >> q) & 1 else _P0
    return _I2


def dense_1q(n: int, u: GateKernel, k: int, ctrl: ControlSpec = NO_CONTROLS) -> DenseOperator:
    """Full controlled-gate operator: U at factor ``k`` on the satisfied
    subspace, identity elsewhere."""
    _check_n(n)
    if not 0 <= k < n:
        raise ValidationError(f"target qubit q_{k} out of range for n={n}")
    ctrl.check_system(n)
    ctrl.check_clear(k, "target")

    active = _kron_chain(
        u.as_matrix() if q == k else _control_factor(q, ctrl) for q in range(n)
    )
    projector = _kron_chain(_control_factor(q, ctrl) for q in range(n))
    entries = active + (np.eye(1 << n, dtype=np.complex128) - projector)
    return DenseOperator(n, entries)


def _swapped_bits(i: int, qa: int, qb: int) -> int:
    bit_a = (i >> qa) & 1
    bit_b = (i >> qb) & 1
    j = i & ~((1 << qa) | (1 << qb))
    return j | (bit_b << qa) | (bit_a << qb)


def dense_swap(n: int, qa: int, qb: int, ctrl: ControlSpec = NO_CONTROLS) -> DenseOperator:
    """Full (controlled) SWAP permutation matrix."""
    _check_n(n)
    if qa == qb:
        raise ValidationError(f"swap qubits must differ, got q_{qa} twice")
    for q in (qa, qb):
        if not 0 <= q < n:
            raise ValidationError(f"swap qubit q_{q} out of range for n={n}")
    ctrl.check_system(n)
    ctrl.check_clear(qa, "swap")
    ctrl.check_clear(qb, "swap")

    dim = 1 << n
    entries = np.zeros((dim, dim), dtype=np.complex128)
    for i in range(dim):
        if (i & ctrl.m_inc) == ctrl.m_val:
            entries[_swapped_bits(i, qa, qb), i] = 1.0
        else:
            entries[i, i] = 1.0
    return DenseOperator(n, entries)


def apply_dense(op: DenseOperator, state: StateVector) -> StateVector:
    """Ground-truth matrix-vector product."""
    if op.n != state.n:
        raise ValidationError(
            f"operator is for {op.n} qubits but state has {state.n}"
        )
    return StateVector(state.n, op.entries @ state.amplitudes)
