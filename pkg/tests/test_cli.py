import json
import os
import sys
from pathlib import Path

import pytest

ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), os.pardir))
if ROOT not in sys.path:
    sys.path.insert(0, ROOT)

from tripotent.cli import main

FIELDS = ["modulus", "dim", "t1", "t2", "nil", "nil_index_bound", "verified"]


def write(tmp_path: Path, text: str, name: str = "input.txt") -> str:
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


def test_decompose_emits_verified_certificate(tmp_path, capsys):
    assert main(["decompose", write(tmp_path, "3 2 / 0 1 / 1 0")]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert list(payload) == FIELDS
    assert payload["verified"] is True
    assert payload["modulus"] == 3 and payload["dim"] == 2


def test_decompose_zero_scalar(tmp_path, capsys):
    assert main(["decompose", write(tmp_path, "30 1 / 0")]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["t1"] == payload["t2"] == payload["nil"] == [[0]]


def test_decompose_reads_json_and_stdin(monkeypatch, capsys):
    import io

    monkeypatch.setattr(sys, "stdin", io.StringIO('{"modulus": 6, "rows": [[4, 1], [3, 2]]}'))
    assert main(["decompose", "-"]) == 0
    assert json.loads(capsys.readouterr().out)["verified"] is True


def test_unsupported_modulus_exit_code(tmp_path, capsys):
    assert main(["decompose", write(tmp_path, "7 1 / 3")]) == 2
    assert "7" in capsys.readouterr().err


@pytest.mark.parametrize(
    "text",
    [
        "3 2 / 0 1",
        "hello",
        '{"modulus": 3}',
        '{"modulus": 6.9, "rows": [[1]]}',
        '{"modulus": 6, "rows": [[1.9]]}',
        '{"modulus": 6, "rows": [[true]]}',
        '{"modulus": 6, "rows": [["1"]]}',
        '{"modulus": 6, "rows": 5}',
    ],
)
def test_malformed_input_exit_code(tmp_path, text):
    assert main(["decompose", write(tmp_path, text)]) == 3


def test_missing_input_file(tmp_path):
    assert main(["decompose", str(tmp_path / "absent.txt")]) == 3


def test_scalar(capsys):
    assert main(["scalar", "30", "7"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert (payload["t1"], payload["t2"], payload["nil"]) == ([[1]], [[6]], [[0]])


def test_triangular(tmp_path, capsys):
    assert main(["triangular", write(tmp_path, "6 2 / 0 5 / 0 0")]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["nil"] == [[0, 5], [0, 0]]
    assert payload["t1"] == payload["t2"] == [[0, 0], [0, 0]]
    assert main(["triangular", write(tmp_path, "6 2 / 0 0 / 5 0", "lower.txt")]) == 3


def test_text_format(tmp_path, capsys):
    assert main(["decompose", "--format", "text", write(tmp_path, "5 1 / 3")]) == 0
    out = capsys.readouterr().out
    assert out.startswith("modulus: 5\ndim: 1\n")
    assert out.rstrip().endswith("verified: true")


def test_out_file_round_trips_through_verify(tmp_path, capsys):
    source = write(tmp_path, "360 2 / 17 200 / 5 359")
    cert = tmp_path / "cert.json"
    assert main(["decompose", "--out", str(cert), source]) == 0
    assert json.loads(cert.read_text(encoding="utf-8"))["verified"] is True
    # refuses to clobber without --overwrite
    assert main(["decompose", "--out", str(cert), source]) == 7
    assert main(["decompose", "--out", str(cert), "--overwrite", source]) == 0
    capsys.readouterr()
    assert main(["verify", source, str(cert)]) == 0
    assert "sum_ok=True" in capsys.readouterr().out


def test_verify_flags_tampered_certificate(tmp_path):
    source = write(tmp_path, "3 2 / 0 1 / 1 0")
    cert = tmp_path / "cert.json"
    assert main(["decompose", "--out", str(cert), source]) == 0
    payload = json.loads(cert.read_text(encoding="utf-8"))
    payload["nil"] = [[1, 0], [0, 1]]
    cert.write_text(json.dumps(payload), encoding="utf-8")
    assert main(["verify", source, str(cert)]) == 4
    other = write(tmp_path, "5 2 / 0 1 / 1 0", "other.txt")
    assert main(["verify", other, str(cert)]) == 7


def test_oracle_exit_codes(tmp_path, capsys):
    assert main(["oracle", write(tmp_path, "3 2 / 0 1 / 1 0")]) == 0
    assert json.loads(capsys.readouterr().out)["verified"] is True
    assert main(["oracle", write(tmp_path, "7 1 / 3", "z7.txt")]) == 5
    big = write(tmp_path, "5 3 / 1 0 0 / 0 1 0 / 0 0 1", "big.txt")
    assert main(["oracle", "--budget", "10", big]) == 6


def test_selftest_exhaustive(capsys):
    assert main(["selftest", "--moduli", "3", "--max-dim", "2", "--exhaustive"]) == 0
    out = capsys.readouterr().out
    assert "modulus 3 dim 2: 81/81 verified" in out
    assert "all 81 cases verified" in out


def test_selftest_is_deterministic(capsys):
    argv = ["selftest", "--seed", "42", "--moduli", "6,9", "--max-dim", "3", "--count", "5"]
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert main(argv) == 0
    assert capsys.readouterr().out == first
    assert first.rstrip().endswith("all 30 cases verified")


def test_selftest_rejects_unsupported_moduli():
    assert main(["selftest", "--moduli", "7"]) == 2


def test_selftest_reports_first_failure(monkeypatch, capsys):
    from tripotent import cli

    monkeypatch.setattr(cli, "_case_passes", lambda a, budget, crosscheck: False)
    assert main(["selftest", "--moduli", "2", "--max-dim", "1", "--count", "3"]) == 1
    out = capsys.readouterr().out
    assert "modulus 2 dim 1: 0/3 verified" in out
    assert "first failing input:\n2 1\n" in out


def test_primes_and_ring(capsys):
    assert main(["primes"]) == 0
    assert "| 5 | tripotent | 3 | V |" in capsys.readouterr().out
    assert main(["ring", "30"]) == 0
    assert capsys.readouterr().out.strip().endswith("true")
    assert main(["ring", "7"]) == 0
    assert capsys.readouterr().out.strip().endswith("false")


def test_unwritable_out_file(tmp_path):
    blocker = tmp_path / "blocker"
    blocker.write_text("", encoding="utf-8")
    source = write(tmp_path, "3 1 / 2")
    assert main(["decompose", "--out", str(blocker / "cert.json"), source]) == 7


def test_verify_bounds_the_nilpotency_scan(tmp_path, capsys):
    source = write(tmp_path, "3 2 / 1 0 / 0 1")
    cert = tmp_path / "cert.json"
    payload = {
        "modulus": 3,
        "dim": 2,
        "t1": [[0, 0], [0, 0]],
        "t2": [[0, 0], [0, 0]],
        "nil": [[1, 0], [0, 1]],
        "nil_index_bound": 10**12,
        "verified": True,
    }
    cert.write_text(json.dumps(payload), encoding="utf-8")
    assert main(["verify", source, str(cert)]) == 4
    assert "observed_nil_index=None" in capsys.readouterr().out
