"""State-vector storage and the per-element gate update kernels.

Index convention (used everywhere in this package): qubit ``q_k`` lives in
bit ``k`` of the amplitude index, i.e. little-endian with ``q_0`` the least
significant bit. A single-qubit gate on target ``k`` therefore mixes each
amplitude with its partner at stride ``2**k`` (``j = i ^ (1 << k)``).

Basis-state *labels* in all I/O are written q_0-first: the leftmost
character of ``"0110"`` is q_0, so ``"0110"`` means q_1 = q_2 = 1 and maps
to index 6. See :func:`label_to_index` / :func:`index_to_label`.

Controlled and anti-controlled gates are encoded by a pair of bitmasks
(:class:`ControlSpec`): an amplitude index ``i`` is updated only when
``(i & m_inc) == m_val``; every other amplitude passes through untouched,
bit for bit. Kernels never materialize a ``2**n x 2**n`` operator: the only
per-gate storage is the four entries of the 2x2 kernel.

A kernel application is data-parallel: the index range is split into
contiguous chunks, each output element has exactly one writer and a fixed
arithmetic expression, so results are bit-identical for any worker count.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError

# Data-parallel dispatch engages only at or above this vector length;
# smaller states run as a single chunk to avoid dispatch overhead.
PARALLEL_THRESHOLD = 1 << 12
DEFAULT_WORKERS = min(8, os.cpu_count() or 1)

UNITARITY_TOL = 1e-10
NORM_TOL = 1e-12
# Probability this close to 0 or 1 forces the measurement outcome and
# skips the renormalizing division.
DEGENERATE_PROB = 1e-15


def label_to_index(label: str) -> int:
    """Basis-state bitstring (q_0-first) -> amplitude index."""
    index = 0
    for pos, ch in enumerate(label):
        if ch == "1":
            index |= 1 << pos
        elif ch != "0":
            raise ValidationError(f"basis-state label must be 0/1 characters, got {label!r}")
    return index


def index_to_label(index: int, n: int) -> str:
    """Amplitude index -> q_0-first bitstring of length ``n``."""
    return "".join("1" if (index >> pos) & 1 else "0" for pos in range(n))


@dataclass(frozen=True)
class GateKernel:
    """A 2x2 complex unitary, the only operator storage a gate needs.

    Unitarity (U†U = I elementwise within 1e-10) is enforced at
    construction; kernels found non-unitary raise ValidationError.
    """

    u00: complex
    u01: complex
    u10: complex
    u11: complex

    def __post_init__(self):
        for name in ("u00", "u01", "u10", "u11"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        g00 = abs(self.u00) ** 2 + abs(self.u10) ** 2
        g11 = abs(self.u01) ** 2 + abs(self.u11) ** 2
        g01 = self.u00.conjugate() * self.u01 + self.u10.conjugate() * self.u11
        if abs(g00 - 1) > UNITARITY_TOL or abs(g11 - 1) > UNITARITY_TOL or abs(g01) > UNITARITY_TOL:
            raise ValidationError(
                f"gate kernel is not unitary within {UNITARITY_TOL:g}: "
                f"[[{self.u00}, {self.u01}], [{self.u10}, {self.u11}]]"
            )

    def as_matrix(self) -> np.ndarray:
        return np.array([[self.u00, self.u01], [self.u10, self.u11]], dtype=np.complex128)


@dataclass(frozen=True)
class ControlSpec:
    """Bitmask pair encoding controls and anti-controls.

    ``m_inc`` has a 1 at every conditioning qubit; ``m_val`` holds the
    required bit there (1 = control, 0 = anti-control). An index ``i``
    satisfies the spec when ``(i & m_inc) == m_val``.
    """

    m_inc: int = 0
    m_val: int = 0

    def __post_init__(self):
        if self.m_inc < 0 or self.m_val < 0:
            raise ValidationError("control masks must be non-negative")
        if self.m_val & ~self.m_inc:
            raise ValidationError(
                f"value mask {self.m_val:#b} sets bits outside inclusion mask {self.m_inc:#b}"
            )

    def check_system(self, n: int) -> None:
        if self.m_inc >> n:
            raise ValidationError(
                f"control mask {self.m_inc:#b} references qubits beyond q_{n - 1}"
            )

    def check_clear(self, qubit: int, role: str) -> None:
        if (1 << qubit) & self.m_inc:
            raise ValidationError(f"{role} qubit q_{qubit} appears in the control mask")


NO_CONTROLS = ControlSpec(0, 0)


@dataclass(frozen=True)
class BlochVector:
    """Pauli expectations (<X>, <Y>, <Z>) of one qubit; norm <= 1."""

    x: float
    y: float
    z: float

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.z)


@dataclass
class StateVector:
    """``2**n`` complex amplitudes plus the qubit count.

    ``amplitudes[i]`` is the coefficient of the basis state whose qubit
    ``q_k`` value is bit ``k`` of ``i``. Use :meth:`zero` or
    :meth:`from_amplitudes` to construct; the latter enforces the unit-norm
    invariant.
    """

    n: int
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError(f"qubit count must be >= 1, got {self.n}")
        amps = np.ascontiguousarray(self.amplitudes, dtype=np.complex128)
        if amps.shape != (1 << self.n,):
            raise ValidationError(
                f"expected {1 << self.n} amplitudes for n={self.n}, got shape {amps.shape}"
            )
        self.amplitudes = amps

    @classmethod
    def zero(cls, n: int) -> "StateVector":
        """The all-zeros computational basis state |0...0>."""
        if n < 1:
            raise ValidationError(f"qubit count must be >= 1, got {n}")
        amps = np.zeros(1 << n, dtype=np.complex128)
        amps[0] = 1.0
        return cls(n, amps)

    @classmethod
    def from_amplitudes(cls, amplitudes) -> "StateVector":
        """Wrap an amplitude sequence, checking length and normalization."""
        amps = np.ascontiguousarray(amplitudes, dtype=np.complex128)
        if amps.ndim != 1 or amps.size < 2 or amps.size & (amps.size - 1):
            raise ValidationError(f"amplitude count must be a power of two >= 2, got {amps.size}")
        n = amps.size.bit_length() - 1
        state = cls(n, amps)
        norm_sq = state.norm_sq()
        if abs(norm_sq - 1.0) > NORM_TOL:
            raise ValidationError(f"state is not normalized: sum |a_i|^2 = {norm_sq!r}")
        return state

    def norm_sq(self) -> float:
        a = self.amplitudes
        return float(np.sum(a.real * a.real + a.imag * a.imag))

    def copy(self) -> "StateVector":
        return StateVector(self.n, self.amplitudes.copy())


def _resolve_dispatch(n_amps: int, workers, parallel_threshold) -> int:
    if parallel_threshold is None:
        parallel_threshold = PARALLEL_THRESHOLD
    if workers is None:
        workers = DEFAULT_WORKERS
    if workers < 1:
        raise ValidationError(f"worker count must be >= 1, got {workers}")
    if n_amps < parallel_threshold:
        return 1
    return workers


def _segments(total: int, parts: int) -> list:
    parts = min(parts, total)
    bounds = [round(total * p / parts) for p in range(parts + 1)]
    return [(lo, hi) for lo, hi in zip(bounds, bounds[1:]) if hi > lo]


def _run_chunks(chunk_fn, total: int, workers: int) -> None:
    segs = _segments(total, workers)
    if len(segs) <= 1:
        chunk_fn(0, total)
        return
    with ThreadPoolExecutor(max_workers=len(segs)) as pool:
        futures = [pool.submit(chunk_fn, lo, hi) for lo, hi in segs]
        for fut in futures:
            fut.result()


def _prepare_out(state: StateVector, out) -> np.ndarray:
    if out is None:
        return np.empty_like(state.amplitudes)
    if out.shape != state.amplitudes.shape or out.dtype != np.complex128:
        raise ValidationError("output buffer must be complex128 with the state's shape")
    if np.shares_memory(out, state.amplitudes):
        raise ValidationError("output buffer must not alias the input state")
    return out


def apply_1q_gate(
    state: StateVector,
    u: GateKernel,
    k: int,
    ctrl: ControlSpec = NO_CONTROLS,
    *,
    workers: int | None = None,
    parallel_threshold: int | None = None,
    out: np.ndarray | None = None,
) -> StateVector:
    """Apply a 2x2 kernel to target qubit ``k`` under a control mask.

    For every index ``i`` with ``(i & m_inc) == m_val`` the output mixes
    ``a_i`` with its stride-``2**k`` partner through ``u``; every other
    amplitude is copied bit-identically. Writes a fresh output vector
    (double-buffering); pass ``out`` to reuse a pooled buffer.
    """
    n = state.n
    if not 0 <= k < n:
        raise ValidationError(f"target qubit q_{k} out of range for {n}-qubit state")
    ctrl.check_system(n)
    ctrl.check_clear(k, "target")

    a = state.amplitudes
    b = _prepare_out(state, out)
    stride = 1 << k
    n_blocks = a.size >> (k + 1)
    a3 = a.reshape(n_blocks, 2, stride)
    b3 = b.reshape(n_blocks, 2, stride)
    u00, u01, u10, u11 = u.u00, u.u01, u.u10, u.u11
    m_inc, m_val = ctrl.m_inc, ctrl.m_val
    # An exact X relocates amplitudes without arithmetic, keeping
    # permutation gates (X, CNOT, Toffoli-as-masked-X) free of any
    # floating-point drift, sign-of-zero included.
    is_exact_x = (u00, u01, u10, u11) == (0, 1, 1, 0)

    # Partition whichever pair-grid axis is long enough; chunk boundaries
    # never split a (i, i^stride) pair, so slices stay contiguous.
    n_workers = _resolve_dispatch(a.size, workers, parallel_threshold)
    split_blocks = n_blocks >= n_workers

    if m_inc == 0:

        def chunk(lo, hi):
            if split_blocks:
                a0, a1 = a3[lo:hi, 0, :], a3[lo:hi, 1, :]
                o0, o1 = b3[lo:hi, 0, :], b3[lo:hi, 1, :]
            else:
                a0, a1 = a3[:, 0, lo:hi], a3[:, 1, lo:hi]
                o0, o1 = b3[:, 0, lo:hi], b3[:, 1, lo:hi]
            if is_exact_x:
                np.copyto(o0, a1)
                np.copyto(o1, a0)
            else:
                np.copyto(o0, u00 * a0 + u01 * a1)
                np.copyto(o1, u10 * a0 + u11 * a1)

    else:
        # Control bits exclude the target, so satisfaction is a property of
        # the (block, offset) pair grid, shared by both halves of a pair.
        blocks = np.arange(n_blocks, dtype=np.int64) << (k + 1)
        offsets = np.arange(stride, dtype=np.int64)

        def chunk(lo, hi):
            if split_blocks:
                base = blocks[lo:hi, None] | offsets[None, :]
                a0, a1 = a3[lo:hi, 0, :], a3[lo:hi, 1, :]
                o0, o1 = b3[lo:hi, 0, :], b3[lo:hi, 1, :]
            else:
                base = blocks[:, None] | offsets[None, lo:hi]
                a0, a1 = a3[:, 0, lo:hi], a3[:, 1, lo:hi]
                o0, o1 = b3[:, 0, lo:hi], b3[:, 1, lo:hi]
            sat = (base & m_inc) == m_val
            if is_exact_x:
                np.copyto(o0, np.where(sat, a1, a0))
                np.copyto(o1, np.where(sat, a0, a1))
            else:
                np.copyto(o0, np.where(sat, u00 * a0 + u01 * a1, a0))
                np.copyto(o1, np.where(sat, u10 * a0 + u11 * a1, a1))

    _run_chunks(chunk, n_blocks if split_blocks else stride, n_workers)
    return StateVector(n, b)


def apply_swap(
    state: StateVector,
    qa: int,
    qb: int,
    ctrl: ControlSpec = NO_CONTROLS,
    *,
    workers: int | None = None,
    parallel_threshold: int | None = None,
    out: np.ndarray | None = None,
) -> StateVector:
    """Swap qubits ``qa`` and ``qb`` under a control mask.

    A pure amplitude permutation: where the control condition holds and the
    two bits differ, ``b_i = a_{i ^ (2**qa | 2**qb)}``; everywhere else
    ``b_i = a_i``. No arithmetic touches the amplitudes.
    """
    n = state.n
    if qa == qb:
        raise ValidationError(f"swap qubits must differ, got q_{qa} twice")
    for q in (qa, qb):
        if not 0 <= q < n:
            raise ValidationError(f"swap qubit q_{q} out of range for {n}-qubit state")
    ctrl.check_system(n)
    ctrl.check_clear(qa, "swap")
    ctrl.check_clear(qb, "swap")

    a = state.amplitudes
    b = _prepare_out(state, out)
    mask_a, mask_b = 1 << qa, 1 << qb
    swap_mask = mask_a | mask_b
    m_inc, m_val = ctrl.m_inc, ctrl.m_val

    def chunk(lo, hi):
        i = np.arange(lo, hi, dtype=np.int64)
        bit_a = (i & mask_a) != 0
        bit_b = (i & mask_b) != 0
        move = bit_a != bit_b
        if m_inc:
            move &= (i & m_inc) == m_val
        src = np.where(move, i ^ swap_mask, i)
        b[lo:hi] = a[src]

    n_workers = _resolve_dispatch(a.size, workers, parallel_threshold)
    _run_chunks(chunk, a.size, n_workers)
    return StateVector(n, b)


def probabilities(state: StateVector) -> np.ndarray:
    """Born-rule distribution: element ``i`` is ``|a_i|**2``."""
    a = state.amplitudes
    return a.real * a.real + a.imag * a.imag


def measure_qubit(state: StateVector, k: int, rng: np.random.Generator):
    """Projectively measure qubit ``k``, returning ``(outcome, collapsed)``.

    Consumes exactly one uniform draw from ``rng`` per call; when the
    outcome probability is within 1e-15 of certainty the certain value is
    forced (and the renormalizing division skipped). The collapsed state
    keeps all ``n`` qubits: amplitudes with bit ``k`` != outcome are zeroed
    and the rest divided by sqrt(p) in one pass.
    """
    n = state.n
    if not 0 <= k < n:
        raise ValidationError(f"measured qubit q_{k} out of range for {n}-qubit state")
    norm_sq = state.norm_sq()
    if abs(norm_sq - 1.0) > 1e-6:
        raise ValidationError(
            f"state norm {math.sqrt(norm_sq)!r} deviates from 1 by more than 1e-6; "
            "upstream corruption?"
        )

    a3 = state.amplitudes.reshape(-1, 2, 1 << k)
    ones = a3[:, 1, :]
    p1 = float(np.sum(ones.real * ones.real + ones.imag * ones.imag))

    draw = rng.random()
    if p1 < DEGENERATE_PROB:
        outcome = 0
    elif 1.0 - p1 < DEGENERATE_PROB:
        outcome = 1
    else:
        outcome = 1 if draw < p1 else 0

    collapsed = state.amplitudes.copy()
    c3 = collapsed.reshape(-1, 2, 1 << k)
    c3[:, 1 - outcome, :] = 0.0
    p_out = p1 if outcome == 1 else 1.0 - p1
    if abs(1.0 - p_out) >= DEGENERATE_PROB:
        collapsed /= math.sqrt(p_out)
    return outcome, StateVector(n, collapsed)


def bloch_vector(state: StateVector, k: int) -> BlochVector:
    """Pauli expectations of qubit ``k`` by pairwise stride-``2**k`` traversal."""
    n = state.n
    if not 0 <= k < n:
        raise ValidationError(f"qubit q_{k} out of range for {n}-qubit state")
    a3 = state.amplitudes.reshape(-1, 2, 1 << k)
    a0, a1 = a3[:, 0, :], a3[:, 1, :]
    p0 = float(np.sum(a0.real * a0.real + a0.imag * a0.imag))
    p1 = float(np.sum(a1.real * a1.real + a1.imag * a1.imag))
    cross = complex(np.sum(a0.conj() * a1))
    return BlochVector(x=2.0 * cross.real, y=2.0 * cross.imag, z=p0 - p1)
