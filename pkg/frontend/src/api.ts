/**
 * Thin client for the simulator service. At most one run request is in
 * flight: issuing a new one aborts its predecessor, so stale results can
 * never overwrite newer ones.
 */

import { CircuitDocument } from "./serialize.js";

export interface RunResponse {
  distribution: number[];
  bloch: [number, number, number][];
  shot_histogram: Record<string, number>;
  cbits: number[];
  seed: number;
  rng_id: string;
  state?: [number, number][];
}

export interface GateEntry {
  name: string;
  params: number;
  display: string;
}

export class ServiceError extends Error {
  constructor(
    readonly status: number,
    readonly errors: { path: string; message: string }[],
  ) {
    super(errors.map((e) => (e.path ? `${e.path}: ${e.message}` : e.message)).join("; "));
  }
}

/** Thrown (as DOMException "AbortError") when a newer run supersedes this one. */
export function isAbort(err: unknown): boolean {
  return err instanceof DOMException && err.name === "AbortError";
}

export class SimClient {
  private inflight: AbortController | null = null;

  constructor(readonly baseUrl: string = "") {}

  private async post(path: string, body: unknown, signal?: AbortSignal): Promise<unknown> {
    const response = await fetch(this.baseUrl + path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
      signal,
    });
    const payload = await response.json();
    if (!response.ok) {
      const errors = (payload as { errors?: { path: string; message: string }[] }).errors;
      throw new ServiceError(response.status, errors ?? [{ path: "", message: "request failed" }]);
    }
    return payload;
  }

  async run(circuit: CircuitDocument, seed = 0, shots = 1): Promise<RunResponse> {
    this.inflight?.abort();
    const controller = new AbortController();
    this.inflight = controller;
    try {
      return (await this.post(
        "/api/v1/run",
        { circuit, seed, shots },
        controller.signal,
      )) as RunResponse;
    } finally {
      if (this.inflight === controller) this.inflight = null;
    }
  }

  async validate(circuit: CircuitDocument): Promise<void> {
    await this.post("/api/v1/validate", circuit);
  }

  async gates(): Promise<GateEntry[]> {
    const response = await fetch(this.baseUrl + "/api/v1/gates");
    if (!response.ok) throw new ServiceError(response.status, [{ path: "", message: "gates failed" }]);
    return (await response.json()) as GateEntry[];
  }

  async health(): Promise<{ status: string; version: string }> {
    const response = await fetch(this.baseUrl + "/health");
    return (await response.json()) as { status: string; version: string };
  }
}
