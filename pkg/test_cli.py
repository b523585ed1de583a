import json
from pathlib import Path

import pytest

from decimcorr.__main__ import run
from decimcorr.config import CliConfig
from decimcorr.errors import ParameterError
from decimcorr.hardware import THREADS_ENV, assess_threads, resolve_threads
from decimcorr.utils import get_writer, optional_int, str2bool

SCHEMA = Path(__file__).parent / "docs" / "report.schema.json"


def run_json(capsys, argv):
    code = run(argv)
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


def test_verify_json(capsys):
    import jsonschema

    code, payload = run_json(capsys, ["verify", "--k", "3", "--l", "1", "--format", "json", "--threads", "1"])
    assert code == 0
    assert payload["match"] is True
    assert payload["annotations"][0]["status"] == "typo"
    jsonschema.validate(payload, json.loads(SCHEMA.read_text()))


def test_verify_rejects_even_k(capsys):
    assert run(["verify", "--k", "4", "--l", "1"]) == 2
    assert "BadParameters" in capsys.readouterr().err


def test_usage_errors(capsys):
    assert run([]) == 2
    assert run(["verify", "--k", "three"]) == 2
    assert run(["verify", "--format", "xml"]) == 2
    assert run(["verify", "--sample_size", "0"]) == 2
    assert run(["verify", "--modulus", "zz"]) == 2
    assert run(["field-info", "--k", "3", "--modulus", "-43"]) == 2
    assert run(["field-info", "--k", "3", "--modulus", "0x45"]) == 2
    assert "reducible" in capsys.readouterr().err


def test_failed_claim_exits_1(capsys, monkeypatch):
    from decimcorr import verifier

    monkeypatch.setattr(verifier, "delta_check", lambda ctx, params: False)
    code, payload = run_json(capsys, ["verify", "--k", "3", "--l", "1", "--format", "json", "--threads", "1"])
    assert code == 1
    assert payload["match"] is False
    assert run(["verify", "--k", "3", "--l", "1", "--threads", "1"]) == 1
    err = capsys.readouterr().err
    assert ">>Check failed (claim): delta-primitive: delta = 0x" in err


def test_resource_guards(capsys):
    assert run(["distribution", "--k", "9", "--l", "1"]) == 3
    assert run(["verify", "--k", "9", "--l", "1"]) == 3
    assert run(["sums", "--k", "7", "--l", "1"]) == 3
    assert "TooLargeForExhaustive" in capsys.readouterr().err


def test_version(capsys):
    assert run(["--version"]) == 0
    assert capsys.readouterr().out.startswith("decimcorr")


def test_distribution_table(capsys):
    assert run(["distribution", "--k", "3", "--l", "1", "--format", "table"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "k=3  l=1  d=3"
    assert lines[1].split() == ["values", "frequencies"]
    rows = [tuple(int(x) for x in line.split()) for line in lines[2:]]
    assert rows == [(-17, 6), (-1, 48), (15, 9)]
    # right-aligned columns
    assert len({len(line) for line in lines[1:]}) == 1


def test_distribution_json(capsys):
    code, payload = run_json(capsys, ["distribution", "--k", "5", "--l", "3"])
    assert code == 0
    assert payload["d"] == 3641
    assert {e["value"]: e["count"] for e in payload["entries"]} == {-1: 792, 63: 121, -65: 110}


def test_sequence(capsys):
    code, payload = run_json(capsys, ["sequence", "--k", "3", "--l", "1"])
    assert code == 0
    assert payload["v_period"] == 21
    assert payload["u"][0] == "0"


def test_sums(capsys):
    code, payload = run_json(capsys, ["sums", "--k", "3", "--l", "1", "--modulus", "0x61"])
    assert code == 0
    assert len(payload) == 189
    assert all(row["t_direct"] == row["t_predicted"] for row in payload)
    assert run(["sums", "--k", "3", "--l", "1", "--format", "table"]) == 0
    assert "form_type" in capsys.readouterr().out


def test_field_info(capsys):
    code, payload = run_json(capsys, ["field-info", "--k", "5"])
    assert code == 0
    assert payload["q"] == 1024
    assert payload["modulus"] == "0x409"
    assert payload["polynomial"] == "X^10 + X^3 + 1"


def test_output_path(tmp_path, capsys):
    target = tmp_path / "reports" / "k3.json"
    assert run(["verify", "--k", "3", "-o", str(target)]) == 0
    assert capsys.readouterr().out == ""
    assert json.loads(target.read_text())["match"] is True


def test_verify_table(capsys):
    assert run(["verify", "--k", "3", "--format", "table"]) == 0
    out = capsys.readouterr().out
    assert "match: True" in out
    assert "note n0-count" in out


def test_byte_identical_across_threads(capsys):
    outputs = set()
    for threads in ("1", "4", "8"):
        assert run(["verify", "--k", "5", "--l", "1", "--threads", threads]) == 0
        outputs.add(capsys.readouterr().out)
    assert len(outputs) == 1


def test_sampled_seed_reproducible(capsys):
    argv = ["verify", "--k", "5", "--mode", "sampled", "--sample_size", "200", "--seed", "11"]
    assert run(argv) == 0
    first = capsys.readouterr().out
    assert run(argv) == 0
    assert capsys.readouterr().out == first
    assert json.loads(first)["mode"] == "sampled"


def test_cli_config():
    config = CliConfig.from_args({"subcommand": "verify", "k": 5, "l": 3, "modulus": "409", "threads": None})
    assert config.modulus == 0x409
    assert config.m == 10
    assert config.threads == 0
    with pytest.raises(ParameterError):
        CliConfig.from_args({"subcommand": "plot"})
    with pytest.raises(ParameterError):
        CliConfig(threads=-1).validate()


def test_thread_resolution(monkeypatch):
    monkeypatch.setenv(THREADS_ENV, "3")
    assert resolve_threads(5) == 5
    assert assess_threads(0).source == "env"
    assert resolve_threads(None) == 3
    monkeypatch.setenv(THREADS_ENV, "many")
    caps = assess_threads(0)
    assert caps.source == "cpu"
    assert caps.recommended_threads >= 1
    assert caps.warning_messages
    monkeypatch.delenv(THREADS_ENV)
    assert assess_threads(0).source == "cpu"


def test_argparse_helpers():
    assert str2bool("True") is True
    assert str2bool("False") is False
    with pytest.raises(ValueError):
        str2bool("yes")
    assert optional_int("None") is None
    assert optional_int("4") == 4
    with pytest.raises(ValueError):
        get_writer("srt")
