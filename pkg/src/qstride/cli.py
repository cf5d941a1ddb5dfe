"""Command-line front end.

    qstride run CIRCUIT.json [--seed N] [--shots N] [--format MODE] [--max-qubits N]
    qstride validate CIRCUIT.json
    qstride serve [--host HOST] [--port PORT] [--max-qubits N]

Data goes to stdout, diagnostics to stderr. Exit codes: 0 success,
1 parse/validation error, 2 runtime error (qubit ceiling, port in use).
Identical (file, seed, shots) always produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import socket
import sys
from collections import Counter

from . import __version__
from .engine import index_to_label
from .errors import LimitError, ValidationError
from .fileformat import parse
from .interpreter import RunResult, run

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_RUNTIME = 2

STATE_JSON_MAX_QUBITS = 12


def _render_probs(result: RunResult, out) -> None:
    n = result.final_state.n
    out.write("index\tbitstring\tprobability\n")
    for i, p in enumerate(result.distribution):
        out.write(f"{i}\t{index_to_label(i, n)}\t{p:.6f}\n")


def _render_bloch(result: RunResult, out) -> None:
    out.write("qubit\tx\ty\tz\n")
    for k, b in enumerate(result.bloch):
        out.write(f"{k}\t{b.x:.6f}\t{b.y:.6f}\t{b.z:.6f}\n")


def _render_shots(result: RunResult, out) -> None:
    out.write("bitstring\tcount\n")
    for record, count in sorted(Counter(result.shot_records).items()):
        out.write(f"{record}\t{count}\n")


def _render_json(result: RunResult, out) -> None:
    n = result.final_state.n
    doc = {
        "qubits": n,
        "seed": result.seed,
        "rng_id": result.rng_id,
        "shots": result.shots,
        "cbits": list(result.cbits),
        "distribution": result.distribution.tolist(),
        "bloch": [[b.x, b.y, b.z] for b in result.bloch],
        "shot_records": list(result.shot_records),
    }
    if n <= STATE_JSON_MAX_QUBITS:
        doc["state"] = [[a.real, a.imag] for a in result.final_state.amplitudes]
    out.write(json.dumps(doc, indent=2) + "\n")


_RENDERERS = {
    "probs": _render_probs,
    "bloch": _render_bloch,
    "shots": _render_shots,
    "json": _render_json,
}


def _read_circuit(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ValidationError(f"cannot read circuit file {path!r}: {exc.strerror}") from exc
    return parse(text)


def _cmd_run(args) -> int:
    try:
        circuit = _read_circuit(args.file)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    try:
        result = run(circuit, seed=args.seed, shots=args.shots, max_qubits=args.max_qubits)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except LimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    _RENDERERS[args.format](result, sys.stdout)
    return EXIT_OK


def _cmd_validate(args) -> int:
    try:
        _read_circuit(args.file)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    print(f"{args.file}: ok")
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    try:
        sock = socket.create_server((args.host, args.port))
    except OSError as exc:
        print(f"error: cannot bind {args.host}:{args.port}: {exc.strerror}", file=sys.stderr)
        return EXIT_RUNTIME
    host, port = sock.getsockname()[:2]
    print(f"qstride service listening on http://{host}:{port}", flush=True)
    config = uvicorn.Config(create_app(max_qubits=args.max_qubits), log_level="warning")
    uvicorn.Server(config).run(sockets=[sock])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qstride", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"qstride {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="simulate a circuit file")
    p_run.add_argument("file", help="circuit document (JSON)")
    p_run.add_argument("--seed", type=int, default=0, help="RNG seed (u64, default 0)")
    p_run.add_argument("--shots", type=int, default=1, help="number of shots (default 1)")
    p_run.add_argument("--format", choices=sorted(_RENDERERS), default="probs",
                       help="output mode (default probs)")
    p_run.add_argument("--max-qubits", type=int, default=26,
                       help="qubit ceiling (default 26)")
    p_run.set_defaults(fn=_cmd_run)

    p_val = sub.add_parser("validate", help="parse and validate without running")
    p_val.add_argument("file", help="circuit document (JSON)")
    p_val.set_defaults(fn=_cmd_validate)

    p_serve = sub.add_parser("serve", help="serve the HTTP API")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--max-qubits", type=int, default=16,
                         help="service qubit ceiling (default 16)")
    p_serve.set_defaults(fn=_cmd_serve)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
