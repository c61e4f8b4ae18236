import json
import subprocess
import sys
from pathlib import Path

import pytest

from grasscalc import cache
from grasscalc.cli import EXIT_AMBIGUOUS, EXIT_OK, EXIT_PRECONDITION, EXIT_USAGE, GOLDEN_RUNS, golden_name, main, run, stable_view, dumps

GOLDEN = Path(__file__).parent / "golden"


def invoke(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_voisin_degree(capsys):
    code, out, _ = invoke(capsys, "voisin-degree", "--r", "2")
    assert code == EXIT_OK
    record = json.loads(out)
    assert record["result"] == 64
    assert set(record) >= {"subcommand", "inputs", "result", "assumptions", "references", "runtime_ms", "engine_version"}


def test_fixed_locus_record_flags_conflicting_value(capsys):
    code, out, _ = invoke(capsys, "fixed-locus-class", "--r", "2")
    record = json.loads(out)
    assert code == EXIT_OK
    assert record["result"] == {"c1^3": -20, "c1c2": 110, "c3": 49}
    assert any("-404" in note for note in record["notes"])
    assert -404 not in record["result"].values()


def test_hodge_numbers(capsys):
    code, out, _ = invoke(capsys, "hodge-numbers", "--r", "2", "--policy", "maximal-rank")
    assert code == EXIT_OK
    assert json.loads(out)["result"] == {"1": 1, "3": 45, "10": 120}


def test_withheld_fact_is_exit_3(capsys):
    code, out, _ = invoke(capsys, "hodge-numbers", "--withhold", "phi8-iso")
    assert code == EXIT_AMBIGUOUS
    assert json.loads(out)["error"]["type"] == "AmbiguousAssembly"


def test_constraints_only_exact_is_exit_3(capsys):
    code, _, _ = invoke(capsys, "assemble", "--bundle", "sym3E", "--policy", "constraints-only", "--exact")
    assert code == EXIT_AMBIGUOUS
    code, out, _ = invoke(capsys, "assemble", "--bundle", "sym3E", "--policy", "constraints-only")
    assert code == EXIT_OK
    assert json.loads(out)["result"]["abutment"]["4"] == {"min": 45, "max": 55}


@pytest.mark.parametrize(
    "argv",
    [
        ["ind0-class", "--r", "0"],
        ["fixed-locus-class", "--r", "7"],
        ["jet-check", "--r", "1", "--prime", "3"],
        ["koszul-table", "--bundle", "nonsense"],
        ["voisin-degree"],
        ["fibgen-bound", "--n", "abc"],
    ],
)
def test_precondition_violations_are_exit_2(capsys, argv):
    code, out, _ = invoke(capsys, *argv)
    assert code == EXIT_PRECONDITION
    assert "error" in json.loads(out)


def test_unknown_subcommand_is_exit_64(capsys):
    code, out, err = invoke(capsys, "frobnicate")
    assert code == EXIT_USAGE
    assert out == ""
    assert "usage: grasscalc" in err
    assert invoke(capsys)[0] == EXIT_USAGE


def test_reruns_are_byte_identical():
    for argv in (["geometry", "--r", "2"], ["koszul-table", "--bundle", "EQ*"], ["jet-check", "--r", "1"]):
        assert dumps(stable_view(run(argv))) == dumps(stable_view(run(argv)))


def test_cache_on_off_identical(tmp_path, monkeypatch):
    plain = stable_view(run(["fixed-locus-class", "--r", "1"]))
    monkeypatch.setenv(cache.ENV_VAR, str(tmp_path))
    cached = stable_view(run(["fixed-locus-class", "--r", "1"]))
    disabled = stable_view(run(["--no-cache", "fixed-locus-class", "--r", "1"]))
    assert plain == cached == disabled


def test_jet_check_subcommand(capsys):
    code, out, _ = invoke(capsys, "jet-check", "--r", "1", "--seeds", "0,1", "--exact")
    record = json.loads(out)
    assert code == EXIT_OK
    assert record["result"]["all_pass"] is True
    assert record["inputs"]["prime"] is None


def test_bott_subcommand(capsys):
    code, out, _ = invoke(capsys, "bott", "--lambda-e", "10,1,1")
    assert code == EXIT_OK
    assert json.loads(out)["result"] == {"q": 7, "xi": [3] + [1] * 9, "dim": 55}


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "grasscalc", "psi-pullback", "--r", "1"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"] == 7


@pytest.mark.parametrize("argv", GOLDEN_RUNS, ids=lambda a: " ".join(a))
def test_golden_records(argv):
    expected = (GOLDEN / golden_name(argv)).read_text(encoding="utf-8")
    assert dumps(stable_view(run(argv))) + "\n" == expected


def test_golden_driver_reports_clean(capsys):
    code, out, _ = invoke(capsys, "golden", "--dir", str(GOLDEN))
    assert code == EXIT_OK
    assert json.loads(out)["result"]["mismatched"] == []
