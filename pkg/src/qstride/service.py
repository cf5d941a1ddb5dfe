"""Stateless HTTP API over the simulator.

Endpoints (JSON in, JSON out):

  POST /api/v1/run       {circuit, seed?, shots?, include_state?}
  POST /api/v1/validate  a bare circuit document
  GET  /api/v1/gates     the gate catalog
  GET  /health           liveness + version

Every request is handled independently; handlers share nothing mutable.
Responses carry permissive CORS headers so a separately served UI can call
the API during development.
"""

from __future__ import annotations

import json
from collections import Counter

from fastapi import FastAPI, Request
from fastapi.concurrency import run_in_threadpool
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from . import __version__
from .errors import LimitError, ValidationError
from .fileformat import circuit_from_document
from .gates import catalog
from .interpreter import MAX_SEED, run

DEFAULT_SERVICE_MAX_QUBITS = 16
STATE_RESPONSE_MAX_QUBITS = 12


def _error_response(status: int, errors) -> JSONResponse:
    return JSONResponse(status_code=status, content={"errors": errors})


def _single_error(status: int, path: str, message: str) -> JSONResponse:
    return _error_response(status, [{"path": path, "message": message}])


async def _json_body(request: Request):
    try:
        return json.loads(await request.body())
    except json.JSONDecodeError as exc:
        return _single_error(400, "", f"request body is not valid JSON: {exc.msg}")


def _validation_path(exc: ValidationError) -> str:
    return getattr(exc, "path", None) or ""


def _opt_int(body: dict, key: str, default: int, minimum: int, maximum: int | None = None):
    value = body.get(key, default)
    if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
        raise ValidationError(f"{key} must be an integer >= {minimum}, got {value!r}")
    if maximum is not None and value > maximum:
        raise ValidationError(f"{key} must be <= {maximum}, got {value!r}")
    return value


def create_app(max_qubits: int = DEFAULT_SERVICE_MAX_QUBITS) -> FastAPI:
    app = FastAPI(title="qstride service", version=__version__)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.get("/health")
    def health():
        return {"status": "ok", "version": __version__}

    @app.get("/api/v1/gates")
    def gates():
        return [{"name": g.name, "params": g.params, "display": g.display} for g in catalog()]

    @app.post("/api/v1/validate")
    async def validate(request: Request):
        body = await _json_body(request)
        if isinstance(body, JSONResponse):
            return body
        try:
            circuit_from_document(body)
        except ValidationError as exc:
            return _single_error(400, _validation_path(exc), str(exc))
        return {"ok": True}

    @app.post("/api/v1/run")
    async def run_circuit(request: Request):
        body = await _json_body(request)
        if isinstance(body, JSONResponse):
            return body
        if not isinstance(body, dict):
            return _single_error(400, "", "request body must be a JSON object")
        unknown = set(body) - {"circuit", "seed", "shots", "include_state"}
        if unknown:
            return _single_error(400, sorted(unknown)[0], "unknown request field")
        if "circuit" not in body:
            return _single_error(400, "circuit", "missing required field")

        try:
            seed = _opt_int(body, "seed", default=0, minimum=0, maximum=MAX_SEED)
        except ValidationError as exc:
            return _single_error(400, "seed", str(exc))
        try:
            shots = _opt_int(body, "shots", default=1, minimum=1)
        except ValidationError as exc:
            return _single_error(400, "shots", str(exc))
        include_state = body.get("include_state", False)
        if not isinstance(include_state, bool):
            return _single_error(400, "include_state", "must be true or false")

        try:
            circuit = circuit_from_document(body["circuit"], path="circuit")
        except ValidationError as exc:
            return _single_error(400, _validation_path(exc), str(exc))

        try:
            # heavy numeric work happens off the event loop so health checks
            # and other requests stay responsive
            result = await run_in_threadpool(
                run, circuit, seed=seed, shots=shots, max_qubits=max_qubits
            )
        except LimitError as exc:
            return _single_error(422, "circuit.qubits", str(exc))

        response = {
            "distribution": result.distribution.tolist(),
            "bloch": [[b.x, b.y, b.z] for b in result.bloch],
            "shot_histogram": dict(sorted(Counter(result.shot_records).items())),
            "cbits": list(result.cbits),
            "seed": result.seed,
            "rng_id": result.rng_id,
        }
        if include_state and circuit.n <= STATE_RESPONSE_MAX_QUBITS:
            response["state"] = [[a.real, a.imag] for a in result.final_state.amplitudes]
        return response

    return app
