"""Builders for the two bundled benchmark circuits.

``build_teleportation`` moves an arbitrary single-qubit state from q_0 to
q_2 through a Bell pair and two classically fed-forward corrections.
``build_grover`` amplifies one marked basis state with repeated
oracle-plus-diffusion rounds.
"""

from __future__ import annotations

import math

from .circuit import Circuit, Gate, If, Measure, Repeat
from .engine import label_to_index
from .errors import ValidationError
from .gates import GateSpec

_H = GateSpec("h")
_X = GateSpec("x")
_Z = GateSpec("z")


def build_teleportation(alpha: complex, beta: complex) -> Circuit:
    """Teleport alpha|0> + beta|1> from q_0 to q_2 (3 qubits, 2 cbits).

    q_0 is prepared with a custom 2x2 unitary whose first column is
    (alpha, beta); q_1/q_2 form the Bell pair. The Bell measurement lands
    in cbits 0 and 1, which condition the X and Z corrections on q_2.
    """
    alpha = complex(alpha)
    beta = complex(beta)
    norm = abs(alpha) ** 2 + abs(beta) ** 2
    if abs(norm - 1.0) > 1e-10:
        raise ValidationError(f"(alpha, beta) must be normalized, got |a|^2+|b|^2 = {norm!r}")

    prepare = GateSpec("u2x2", (alpha, -beta.conjugate(), beta, alpha.conjugate()))
    ops = (
        Gate(prepare, target=0),
        Gate(_H, target=1),
        Gate(_X, target=2, controls={1}),
        Gate(_X, target=1, controls={0}),
        Gate(_H, target=0),
        Measure(qubit=0, cbit=0),
        Measure(qubit=1, cbit=1),
        If(cbit=1, value=1, body=(Gate(_X, target=2),)),
        If(cbit=0, value=1, body=(Gate(_Z, target=2),)),
    )
    return Circuit(n=3, c=2, ops=ops, name="teleportation")


def default_grover_iterations(n: int) -> int:
    """floor(pi/4 * sqrt(2**n)), the near-optimal round count."""
    return int(math.pi / 4 * math.sqrt(1 << n))


def _oracle_ops(n: int, target: str) -> tuple:
    """Phase-flip exactly the target basis state.

    Z acts on q_{n-1}, masked on the remaining qubits (anti-control where
    the target bit is 0); when the target's own q_{n-1} bit is 0, the Z is
    conjugated by X so the flip lands on the 0 branch.
    """
    controls = frozenset(q for q in range(n - 1) if target[q] == "1")
    anticontrols = frozenset(q for q in range(n - 1) if target[q] == "0")
    flip = Gate(_Z, target=n - 1, controls=controls, anticontrols=anticontrols)
    if target[n - 1] == "0":
        conjugate = Gate(_X, target=n - 1)
        return (conjugate, flip, conjugate)
    return (flip,)


def _diffusion_ops(n: int) -> tuple:
    """Inversion about the mean: H^n X^n (n-1)-controlled-Z X^n H^n."""
    h_layer = tuple(Gate(_H, target=q) for q in range(n))
    x_layer = tuple(Gate(_X, target=q) for q in range(n))
    flip = Gate(_Z, target=n - 1, controls=frozenset(range(n - 1)))
    return h_layer + x_layer + (flip,) + x_layer + h_layer


def build_grover(n: int, target: str, iterations: int | None = None) -> Circuit:
    """Search circuit marking basis state ``target`` (a q_0-first bitstring).

    Starts in the uniform superposition, then repeats oracle + diffusion;
    ``iterations`` defaults to floor(pi/4 * sqrt(2**n)). Passing 0 leaves
    just the superposition layer.
    """
    if n < 1:
        raise ValidationError(f"qubit count must be >= 1, got {n}")
    if len(target) != n:
        raise ValidationError(f"target length {len(target)} does not match n={n}")
    label_to_index(target)  # rejects non-0/1 characters
    if iterations is None:
        iterations = default_grover_iterations(n)
    if isinstance(iterations, bool) or not isinstance(iterations, int) or iterations < 0:
        raise ValidationError(f"iterations must be a non-negative integer, got {iterations!r}")

    ops = tuple(Gate(_H, target=q) for q in range(n))
    if iterations > 0:
        ops += (Repeat(count=iterations, body=_oracle_ops(n, target) + _diffusion_ops(n)),)
    return Circuit(n=n, c=0, ops=ops, name=f"grover-{target}")
