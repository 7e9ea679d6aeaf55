import json
import subprocess
import sys

from rqseries.cli import main, parse_convention


def run(*args):
    return subprocess.run(
        [sys.executable, "-m", "rqseries.cli", *args], capture_output=True, text=True, check=False
    )


def test_expand_record(capsys):
    assert main(["expand", "f2", "--terms", "20", "--json-only"]) == 0
    rec = json.loads(capsys.readouterr().out)
    assert rec["job"] == "EXPAND_F2" and rec["series"]["order"] == 20


def test_hecke_subcommand(capsys):
    assert main(["hecke", "HECKE3", "--terms", "200", "--json-only"]) == 0
    rec = json.loads(capsys.readouterr().out)
    assert rec["verdict"] == "PASS" and rec["first_mismatch"] is None


def test_oracle_with_convention(capsys):
    assert main(["oracle", "--family", "3", "--convention", "empty_mu_flip=true", "--json-only"]) == 0
    rec = json.loads(capsys.readouterr().out)
    assert rec["details"]["convention"]["switches"]["empty_mu_flip"] is True


def test_oracle_literal_family_1_fails(capsys):
    assert main(["oracle", "--family", "1", "--convention", "delta=0", "--json-only"]) == 1
    rec = json.loads(capsys.readouterr().out)
    assert rec["verdict"] == "FAIL" and rec["first_mismatch"]["n"] >= 0


def test_parse_convention():
    assert parse_convention(5, []) is None
    conv = parse_convention(7, ["all_ones_overlines=forbidden", "m_counts_overlined=false"])
    assert conv.get("m_counts_overlined") is False


def test_subprocess_exit_code_and_table():
    res = run("ideals", "--terms", "200", "--theorem", "T1")
    assert res.returncode == 0
    lines = res.stdout.splitlines()
    assert [json.loads(x)["job"] for x in lines] == [
        "IDEAL_CONSISTENCY_SQRT2", "IDEAL_CONSISTENCY_SQRT3", "THEOREM_T1"
    ]
    assert "3/3 passed" in res.stderr


def test_bad_arguments_exit_nonzero():
    assert run("expand", "f9", "--terms", "10").returncode != 0
    assert run("oracle", "--convention", "x=1").returncode != 0
