"""The versioned circuit document format.

A circuit file is a UTF-8 JSON object:

    {"version": 1, "name": "optional", "qubits": 4, "cbits": 2, "ops": [...]}

with ops encoded as::

    {"type": "gate", "name": "h", "target": 0,
     "controls": [], "anticontrols": [], "params": []}
    {"type": "swap", "qa": 0, "qb": 1, "controls": [], "anticontrols": []}
    {"type": "measure", "qubit": 0, "cbit": 0}
    {"type": "if", "cbit": 0, "value": 1, "body": [...]}
    {"type": "repeat", "count": 3, "body": [...]}

Parsing is strict: unknown op types and unknown fields are errors naming
the offending path. ``controls``/``anticontrols``/``params`` may be
omitted (empty by default); ``u2x2`` params are four ``[re, im]`` pairs.
Basis-state strings are q_0-first throughout.
"""

from __future__ import annotations

import json

from .circuit import Circuit, Gate, If, Measure, Repeat, Swap
from .errors import ParseError, ValidationError
from .gates import GateSpec

FORMAT_VERSION = 1


def _require_object(value, path: str) -> dict:
    if not isinstance(value, dict):
        raise ParseError(f"expected an object, got {type(value).__name__}", path=path)
    return value


def _reject_unknown(obj: dict, allowed, path: str) -> None:
    for key in obj:
        if key not in allowed:
            raise ParseError(f"unknown field {key!r}", path=f"{path}.{key}" if path else key)


def _get_int(obj: dict, key: str, path: str, *, required=True, default=None, minimum=None):
    if key not in obj:
        if required:
            raise ParseError(f"missing required field {key!r}", path=path)
        return default
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"expected an integer, got {value!r}", path=f"{path}.{key}" if path else key)
    if minimum is not None and value < minimum:
        raise ParseError(f"must be >= {minimum}, got {value}", path=f"{path}.{key}" if path else key)
    return value


def _get_index_list(obj: dict, key: str, path: str) -> list:
    value = obj.get(key, [])
    here = f"{path}.{key}"
    if not isinstance(value, list):
        raise ParseError(f"expected a list, got {value!r}", path=here)
    for item in value:
        if isinstance(item, bool) or not isinstance(item, int) or item < 0:
            raise ParseError(f"expected non-negative qubit indices, got {item!r}", path=here)
    return value


def _parse_op(obj, path: str):
    obj = _require_object(obj, path)
    op_type = obj.get("type")
    if op_type is None:
        raise ParseError("missing required field 'type'", path=path)
    try:
        if op_type == "gate":
            _reject_unknown(obj, {"type", "name", "target", "controls", "anticontrols", "params"}, path)
            name = obj.get("name")
            if not isinstance(name, str):
                raise ParseError(f"gate name must be a string, got {name!r}", path=f"{path}.name")
            params = obj.get("params", [])
            if not isinstance(params, list):
                raise ParseError(f"expected a list, got {params!r}", path=f"{path}.params")
            return Gate(
                spec=GateSpec(name, tuple(params)),
                target=_get_int(obj, "target", path, minimum=0),
                controls=_get_index_list(obj, "controls", path),
                anticontrols=_get_index_list(obj, "anticontrols", path),
            )
        if op_type == "swap":
            _reject_unknown(obj, {"type", "qa", "qb", "controls", "anticontrols"}, path)
            return Swap(
                qa=_get_int(obj, "qa", path, minimum=0),
                qb=_get_int(obj, "qb", path, minimum=0),
                controls=_get_index_list(obj, "controls", path),
                anticontrols=_get_index_list(obj, "anticontrols", path),
            )
        if op_type == "measure":
            _reject_unknown(obj, {"type", "qubit", "cbit"}, path)
            return Measure(
                qubit=_get_int(obj, "qubit", path, minimum=0),
                cbit=_get_int(obj, "cbit", path, minimum=0),
            )
        if op_type == "if":
            _reject_unknown(obj, {"type", "cbit", "value", "body"}, path)
            return If(
                cbit=_get_int(obj, "cbit", path, minimum=0),
                value=_get_int(obj, "value", path),
                body=_parse_body(obj, path),
            )
        if op_type == "repeat":
            _reject_unknown(obj, {"type", "count", "body"}, path)
            return Repeat(
                count=_get_int(obj, "count", path),
                body=_parse_body(obj, path),
            )
    except ParseError:
        raise
    except ValidationError as exc:
        raise ParseError(str(exc), path=path) from exc
    raise ParseError(f"unknown op type {op_type!r}", path=f"{path}.type")


def _parse_body(obj: dict, path: str) -> tuple:
    body = obj.get("body")
    if not isinstance(body, list):
        raise ParseError("missing or non-list 'body'", path=f"{path}.body")
    return tuple(_parse_op(item, f"{path}.body[{i}]") for i, item in enumerate(body))


def circuit_from_document(doc, path: str = "") -> Circuit:
    """Build a validated Circuit from an already-decoded document object."""
    doc = _require_object(doc, path or "<document>")

    def sub(key):
        return f"{path}.{key}" if path else key

    _reject_unknown(doc, {"version", "name", "qubits", "cbits", "ops"}, path)
    version = _get_int(doc, "version", path or "<document>")
    if version != FORMAT_VERSION:
        raise ParseError(f"unsupported version {version} (expected {FORMAT_VERSION})", path=sub("version"))
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise ParseError(f"name must be a string, got {name!r}", path=sub("name"))
    qubits = _get_int(doc, "qubits", path or "<document>", minimum=1)
    cbits = _get_int(doc, "cbits", path or "<document>", required=False, default=0, minimum=0)
    ops_raw = doc.get("ops")
    if not isinstance(ops_raw, list):
        raise ParseError("missing or non-list 'ops'", path=sub("ops"))
    prefix = f"{path}.ops" if path else "ops"
    ops = tuple(_parse_op(item, f"{prefix}[{i}]") for i, item in enumerate(ops_raw))
    return Circuit(n=qubits, c=cbits, ops=ops, name=name)


def parse(text: str) -> Circuit:
    """Parse and fully validate a circuit document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno, column=exc.colno) from exc
    return circuit_from_document(doc)


def _param_to_json(value):
    if isinstance(value, complex):
        return [value.real + 0.0, value.imag + 0.0]  # +0.0 folds away negative zero
    return value


def _op_to_document(op) -> dict:
    if isinstance(op, Gate):
        return {
            "type": "gate",
            "name": op.spec.name,
            "target": op.target,
            "controls": sorted(op.controls),
            "anticontrols": sorted(op.anticontrols),
            "params": [_param_to_json(p) for p in op.spec.params],
        }
    if isinstance(op, Swap):
        return {
            "type": "swap",
            "qa": op.qa,
            "qb": op.qb,
            "controls": sorted(op.controls),
            "anticontrols": sorted(op.anticontrols),
        }
    if isinstance(op, Measure):
        return {"type": "measure", "qubit": op.qubit, "cbit": op.cbit}
    if isinstance(op, If):
        return {"type": "if", "cbit": op.cbit, "value": op.value,
                "body": [_op_to_document(o) for o in op.body]}
    if isinstance(op, Repeat):
        return {"type": "repeat", "count": op.count,
                "body": [_op_to_document(o) for o in op.body]}
    raise ValidationError(f"not a circuit op: {op!r}")


def circuit_to_document(circuit: Circuit) -> dict:
    doc = {"version": FORMAT_VERSION}
    if circuit.name is not None:
        doc["name"] = circuit.name
    doc["qubits"] = circuit.n
    doc["cbits"] = circuit.c
    doc["ops"] = [_op_to_document(op) for op in circuit.ops]
    return doc


def serialize(circuit: Circuit) -> str:
    """Render a circuit as a canonical, round-trippable document."""
    return json.dumps(circuit_to_document(circuit), indent=2) + "\n"
