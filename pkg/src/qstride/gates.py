"""Named gate constructors and parameter validation.

Gate names here appear verbatim in circuit documents and the service API.
Fixed gates take no parameters, ``p``/``rx``/``ry``/``rz`` take one angle in
radians, and ``u2x2`` takes the four entries of an arbitrary 2x2 unitary in
row-major order (each entry a complex number, or an ``[re, im]`` pair as
written in circuit files).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .engine import GateKernel
from .errors import ValidationError

_FIXED = {
    "i": (1, 0, 0, 1),
    "x": (0, 1, 1, 0),
    "y": (0, -1j, 1j, 0),
    "z": (1, 0, 0, -1),
    "h": (math.sqrt(0.5), math.sqrt(0.5), math.sqrt(0.5), -math.sqrt(0.5)),
    "s": (1, 0, 0, 1j),
    "sdg": (1, 0, 0, -1j),
    "t": (1, 0, 0, cmath.exp(0.25j * math.pi)),
    "tdg": (1, 0, 0, cmath.exp(-0.25j * math.pi)),
}

_ANGLE = ("p", "rx", "ry", "rz")

# (name, parameter count, display name); order is stable for UI palettes.
_CATALOG = (
    ("i", 0, "Identity"),
    ("x", 0, "Pauli-X"),
    ("y", 0, "Pauli-Y"),
    ("z", 0, "Pauli-Z"),
    ("h", 0, "Hadamard"),
    ("s", 0, "S"),
    ("sdg", 0, "S-dagger"),
    ("t", 0, "T"),
    ("tdg", 0, "T-dagger"),
    ("p", 1, "Phase shift"),
    ("rx", 1, "X rotation"),
    ("ry", 1, "Y rotation"),
    ("rz", 1, "Z rotation"),
    ("u2x2", 4, "Custom 2x2 unitary"),
)

_ARITY = {name: count for name, count, _ in _CATALOG}


def _as_complex(value, name: str) -> complex:
    if isinstance(value, (list, tuple)):
        if len(value) != 2 or isinstance(value[0], bool) or isinstance(value[1], bool):
            raise ValidationError(f"{name}: complex entries must be [re, im] pairs")
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, complex):
        return value
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return complex(value)
    raise ValidationError(f"{name}: cannot interpret {value!r} as a complex entry")


def _as_angle(value, name: str) -> float:
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return float(value)
    raise ValidationError(f"{name}: angle must be a real number, got {value!r}")


@dataclass(frozen=True)
class GateSpec:
    """A gate name plus its parameters, normalized at construction."""

    name: str
    params: tuple = ()

    def __post_init__(self):
        if self.name not in _ARITY:
            raise ValidationError(f"unknown gate name {self.name!r}")
        params = tuple(self.params)
        arity = _ARITY[self.name]
        if len(params) != arity:
            raise ValidationError(
                f"gate {self.name!r} takes {arity} parameter(s), got {len(params)}"
            )
        if self.name == "u2x2":
            params = tuple(_as_complex(v, "u2x2") for v in params)
        else:
            params = tuple(_as_angle(v, self.name) for v in params)
        object.__setattr__(self, "params", params)


@dataclass(frozen=True)
class GateInfo:
    """Catalog entry: wire-format name, parameter count, display name."""

    name: str
    params: int
    display: str


def catalog() -> list[GateInfo]:
    """The complete gate palette, in stable order."""
    return [GateInfo(name, count, display) for name, count, display in _CATALOG]


def resolve(spec: GateSpec) -> GateKernel:
    """Instantiate the 2x2 kernel for a gate spec."""
    name = spec.name
    if name in _FIXED:
        return GateKernel(*_FIXED[name])
    if name == "p":
        return GateKernel(1, 0, 0, cmath.exp(1j * spec.params[0]))
    if name == "rx":
        half = spec.params[0] / 2.0
        c, s = math.cos(half), math.sin(half)
        return GateKernel(c, -1j * s, -1j * s, c)
    if name == "ry":
        half = spec.params[0] / 2.0
        c, s = math.cos(half), math.sin(half)
        return GateKernel(c, -s, s, c)
    if name == "rz":
        half = spec.params[0] / 2.0
        return GateKernel(cmath.exp(-1j * half), 0, 0, cmath.exp(1j * half))
    try:
        return GateKernel(*spec.params)
    except ValidationError:
        raise ValidationError("u2x2 parameters do not form a unitary matrix") from None
