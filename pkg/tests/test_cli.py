import json
import re
import signal
import subprocess
import sys
import time
from pathlib import Path

import httpx
import pytest

from qstride import build_grover, serialize

ROOT = Path(__file__).resolve().parent.parent
EXAMPLES = ROOT / "examples"
CLI = [sys.executable, "-m", "qstride.cli"]


def run_cli(*args, **kwargs):
    return subprocess.run(
        CLI + list(args), capture_output=True, text=True, timeout=120, **kwargs
    )


class TestRunCommand:
    def test_grover_probs_peak(self):
        proc = run_cli("run", str(EXAMPLES / "grover_0110.json"))
        assert proc.returncode == 0
        rows = [line.split("\t") for line in proc.stdout.strip().splitlines()[1:]]
        best = max(rows, key=lambda r: float(r[2]))
        assert best[1] == "0110"
        assert float(best[2]) >= 0.96

    def test_probs_rows_sum_to_one(self):
        proc = run_cli("run", str(EXAMPLES / "grover_0110.json"))
        rows = proc.stdout.strip().splitlines()[1:]
        total = sum(float(line.split("\t")[2]) for line in rows)
        assert abs(total - 1.0) <= len(rows) * 5e-7 + 1e-9

    def test_overlapping_masks_exit_1_with_op_path(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({
            "version": 1, "qubits": 2, "ops": [
                {"type": "gate", "name": "x", "target": 0,
                 "controls": [1], "anticontrols": [1], "params": []},
            ],
        }))
        proc = run_cli("run", str(bad))
        assert proc.returncode == 1
        assert "ops[0]" in proc.stderr
        assert proc.stdout == ""

    def test_teleportation_shot_histogram(self):
        proc = run_cli("run", str(EXAMPLES / "teleportation.json"),
                       "--seed", "7", "--shots", "200", "--format", "shots")
        assert proc.returncode == 0
        rows = [line.split("\t") for line in proc.stdout.strip().splitlines()[1:]]
        counts = {pattern: int(count) for pattern, count in rows}
        assert sum(counts.values()) == 200
        assert set(counts) == {"00", "01", "10", "11"}
        assert all(25 <= c <= 75 for c in counts.values())

    def test_bloch_format(self):
        proc = run_cli("run", str(EXAMPLES / "teleportation.json"),
                       "--seed", "3", "--format", "bloch")
        assert proc.returncode == 0
        lines = proc.stdout.strip().splitlines()
        assert lines[0] == "qubit\tx\ty\tz"
        assert len(lines) == 4  # header + 3 qubits
        assert lines[3].split("\t")[1:] == ["0.000000", "0.960000", "-0.280000"]

    def test_json_format_mirrors_run_result(self):
        proc = run_cli("run", str(EXAMPLES / "grover_0110.json"), "--format", "json")
        assert proc.returncode == 0
        doc = json.loads(proc.stdout)
        assert doc["qubits"] == 4
        assert doc["seed"] == 0
        assert doc["rng_id"] == "pcg64-seedseq-spawn"
        assert len(doc["distribution"]) == 16
        assert len(doc["bloch"]) == 4
        assert len(doc["state"]) == 16
        assert doc["distribution"][6] >= 0.96

    def test_qubit_ceiling_exit_2(self, tmp_path):
        big = tmp_path / "big.json"
        big.write_text(json.dumps({"version": 1, "qubits": 8, "ops": []}))
        proc = run_cli("run", str(big), "--max-qubits", "6")
        assert proc.returncode == 2
        assert "ceiling" in proc.stderr

    def test_missing_file_exit_1(self):
        proc = run_cli("run", "does-not-exist.json")
        assert proc.returncode == 1
        assert "cannot read" in proc.stderr

    def test_negative_seed_exit_1(self):
        proc = run_cli("run", str(EXAMPLES / "grover_0110.json"), "--seed", "-3")
        assert proc.returncode == 1
        assert "seed" in proc.stderr


class TestValidateCommand:
    def test_valid_file(self):
        proc = run_cli("validate", str(EXAMPLES / "teleportation.json"))
        assert proc.returncode == 0

    def test_unknown_gate_named(self, tmp_path):
        bad = tmp_path / "unknown.json"
        bad.write_text(json.dumps({
            "version": 1, "qubits": 1, "ops": [
                {"type": "gate", "name": "frobnicate", "target": 0},
            ],
        }))
        proc = run_cli("validate", str(bad))
        assert proc.returncode == 1
        assert "frobnicate" in proc.stderr

    def test_repeat_count_zero(self, tmp_path):
        bad = tmp_path / "zero.json"
        bad.write_text(json.dumps({
            "version": 1, "qubits": 1, "ops": [
                {"type": "repeat", "count": 0, "body": []},
            ],
        }))
        proc = run_cli("validate", str(bad))
        assert proc.returncode == 1

    def test_validate_does_not_simulate(self, tmp_path):
        # a 24-qubit document validates instantly; running it would not
        big = tmp_path / "wide.json"
        big.write_text(json.dumps({"version": 1, "qubits": 24, "ops": []}))
        t0 = time.perf_counter()
        proc = run_cli("validate", str(big))
        assert proc.returncode == 0
        assert time.perf_counter() - t0 < 30


@pytest.fixture
def served():
    proc = subprocess.Popen(
        CLI + ["serve", "--port", "0"],
        stdout=subprocess.PIPE, stderr=subprocess.PIPE, text=True,
    )
    line = proc.stdout.readline()
    match = re.search(r"http://([\d.]+):(\d+)", line)
    assert match, f"no bound address printed: {line!r}"
    yield proc, match.group(1), int(match.group(2))
    proc.send_signal(signal.SIGINT)
    try:
        proc.wait(timeout=10)
    except subprocess.TimeoutExpired:
        proc.kill()
        proc.wait()


class TestServeCommand:
    def test_prints_ephemeral_port_and_serves_health(self, served):
        _, host, port = served
        assert port != 0
        deadline = time.time() + 10
        last = None
        while time.time() < deadline:
            try:
                last = httpx.get(f"http://{host}:{port}/health", timeout=2)
                break
            except httpx.TransportError:
                time.sleep(0.1)
        assert last is not None and last.status_code == 200
        assert last.json()["status"] == "ok"

    def test_run_endpoint_served(self, served, tmp_path):
        _, host, port = served
        doc = json.loads(serialize(build_grover(2, "11", 1)))
        deadline = time.time() + 10
        while time.time() < deadline:
            try:
                response = httpx.post(f"http://{host}:{port}/api/v1/run",
                                      json={"circuit": doc}, timeout=5)
                break
            except httpx.TransportError:
                time.sleep(0.1)
        assert response.status_code == 200
        assert abs(response.json()["distribution"][3] - 1.0) < 1e-9

    def test_duplicate_bind_exits_2(self, served):
        _, host, port = served
        second = run_cli("serve", "--host", host, "--port", str(port))
        assert second.returncode == 2
        assert "cannot bind" in second.stderr
