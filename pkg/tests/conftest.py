"""Shared fixtures and oracle helpers.

The dense module is the ground truth for kernel behavior; for hybrid
circuits the helpers below re-execute ops with full matrices and explicit
measurement projectors, independently of the engine's update scheme.
"""

import math

import numpy as np
import pytest

from qstride import (
    Circuit,
    ControlSpec,
    Gate,
    GateKernel,
    GateSpec,
    If,
    Measure,
    Repeat,
    StateVector,
    Swap,
    to_control_spec,
)
from qstride.dense import apply_dense, dense_1q, dense_swap
from qstride.gates import resolve


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


def random_state(n, rng):
    amps = rng.standard_normal(1 << n) + 1j * rng.standard_normal(1 << n)
    amps /= np.linalg.norm(amps)
    return StateVector.from_amplitudes(amps)


def random_kernel(rng):
    """Haar-ish random 2x2 unitary via QR with phase fix."""
    m = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    q, r = np.linalg.qr(m)
    q = q * (np.diag(r) / np.abs(np.diag(r)))
    return GateKernel(q[0, 0], q[0, 1], q[1, 0], q[1, 1])


def random_mask(n, rng, exclude):
    """A random ControlSpec over qubits not in ``exclude``."""
    m_inc = 0
    m_val = 0
    for q in range(n):
        if q in exclude:
            continue
        if rng.random() < 0.4:
            m_inc |= 1 << q
            if rng.random() < 0.5:
                m_val |= 1 << q
    return ControlSpec(m_inc, m_val)


def random_flat_ops(n, n_ops, rng):
    """Hybrid-free op list mixing masked u2x2 gates and masked swaps."""
    ops = []
    for _ in range(n_ops):
        if n >= 2 and rng.random() < 0.3:
            qa, qb = rng.choice(n, size=2, replace=False)
            mask = random_mask(n, rng, {int(qa), int(qb)})
            ops.append(Swap(int(qa), int(qb),
                            controls=_mask_controls(mask),
                            anticontrols=_mask_anticontrols(mask)))
        else:
            k = int(rng.integers(n))
            u = random_kernel(rng)
            mask = random_mask(n, rng, {k})
            ops.append(Gate(GateSpec("u2x2", (u.u00, u.u01, u.u10, u.u11)),
                            target=k,
                            controls=_mask_controls(mask),
                            anticontrols=_mask_anticontrols(mask)))
    return tuple(ops)


def _mask_controls(mask):
    return frozenset(q for q in range(mask.m_inc.bit_length()) if (mask.m_val >> q) & 1)


def _mask_anticontrols(mask):
    inc_only = mask.m_inc & ~mask.m_val
    return frozenset(q for q in range(inc_only.bit_length()) if (inc_only >> q) & 1)


def dense_op_matrix(n, op):
    """Full matrix for one Gate or Swap op."""
    ctrl = to_control_spec(op.controls, op.anticontrols, n)
    if isinstance(op, Gate):
        return dense_1q(n, resolve(op.spec), op.target, ctrl)
    return dense_swap(n, op.qa, op.qb, ctrl)


def dense_eval_flat(circuit):
    """Evaluate a hybrid-free circuit by dense matrix products."""
    state = StateVector.zero(circuit.n)

    def walk(ops):
        nonlocal state
        for op in ops:
            if isinstance(op, Repeat):
                for _ in range(op.count):
                    walk(op.body)
            elif isinstance(op, If):
                raise AssertionError("dense_eval_flat is for measurement-free circuits")
            else:
                state = apply_dense(dense_op_matrix(circuit.n, op), state)

    walk(circuit.ops)
    return state


def dense_run_forced(circuit, forced_outcomes):
    """Execute a hybrid circuit with dense matrices, forcing each Measure
    to the next outcome in ``forced_outcomes``.

    Returns (state, cbits, branch_probability); probability 0 means the
    branch cannot occur (its amplitude vanished).
    """
    n = circuit.n
    state = StateVector.zero(n).amplitudes
    cbits = [0] * circuit.c
    outcomes = list(forced_outcomes)
    prob = 1.0

    def project(amps, qubit, outcome):
        idx = np.arange(amps.size)
        keep = ((idx >> qubit) & 1) == outcome
        projected = np.where(keep, amps, 0.0)
        p = float(np.sum(np.abs(projected) ** 2))
        return projected, p

    def walk(ops):
        nonlocal state, prob
        for op in ops:
            if isinstance(op, Measure):
                outcome = outcomes.pop(0)
                projected, p = project(state, op.qubit, outcome)
                prob *= p
                if p > 0:
                    state = projected / math.sqrt(p)
                else:
                    state = projected
                cbits[op.cbit] = outcome
            elif isinstance(op, If):
                if cbits[op.cbit] == op.value:
                    walk(op.body)
            elif isinstance(op, Repeat):
                for _ in range(op.count):
                    walk(op.body)
            else:
                matrix = dense_op_matrix(n, op).entries
                state = matrix @ state
            if prob == 0.0:
                return

    walk(circuit.ops)
    return StateVector(n, state), cbits, prob
